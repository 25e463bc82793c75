"""Coproduct, counit and antipode on Sym(g) and their compatibility with the star product.

The structure maps are the undeformed ones: Delta is the subset (shuffle)
coproduct, S multiplies degree n by (-1)^n and the counit reads off the
constant term.  :func:`verify_hopf` checks the axioms against the star
product at a fixed rational value of z.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Sequence

from .enveloping import UElement, q_z
from .exact_arith import UniPoly, as_rational
from .gutt_star import star_pbw
from .lie_algebra import LieAlgebra
from .sym_algebra import SymElement

__all__ = [
    "TensorSquareElement",
    "coproduct",
    "antipode",
    "counit",
    "swap",
    "star_tensor",
    "coproduct_u",
    "q_tensor",
    "verify_hopf",
    "HopfReport",
]


class TensorSquareElement:
    """Sparse ``{(left_mono, right_mono, zpow): coefficient}``."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms=None):
        self.dim = dim
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorSquareElement) and self.dim == other.dim and self.terms == other.terms

    def __add__(self, other: "TensorSquareElement") -> "TensorSquareElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return TensorSquareElement(self.dim, out)

    def __repr__(self) -> str:
        return f"TensorSquareElement({len(self.terms)} terms)"


def _sub_multisets(m: tuple):
    """(sub, complement, multiplicity) over all sub-multisets of m."""
    counts = sorted(Counter(m).items())
    letters = [c for c, _ in counts]
    for choice in product(*(range(k + 1) for _, k in counts)):
        sub = tuple(c for c, t in zip(letters, choice) for _ in range(t))
        rest = tuple(c for (c, k), t in zip(counts, choice) for _ in range(k - t))
        mult = 1
        for (_, k), t in zip(counts, choice):
            mult *= comb(k, t)
        yield sub, rest, mult


def coproduct(x: SymElement) -> TensorSquareElement:
    """Subset coproduct, with binomial weights for repeated letters."""
    out: dict = defaultdict(Fraction)
    for (m, j), c in x.terms.items():
        for sub, rest, mult in _sub_multisets(m):
            out[(sub, rest, j)] += mult * c
    return TensorSquareElement(x.dim, out)


def antipode(x: SymElement) -> SymElement:
    return SymElement(x.dim, {(m, j): (-c if len(m) % 2 else c) for (m, j), c in x.terms.items()})


def counit(x: SymElement) -> UniPoly:
    return x.coeff(())


def swap(t: TensorSquareElement) -> TensorSquareElement:
    return TensorSquareElement(t.dim, {(b, a, j): c for (a, b, j), c in t.terms.items()})


def _leg_eps(t: TensorSquareElement, leg: int) -> SymElement:
    out: dict = defaultdict(Fraction)
    for (a, b, j), c in t.terms.items():
        if leg == 0 and not a:
            out[(b, j)] += c
        elif leg == 1 and not b:
            out[(a, j)] += c
    return SymElement(t.dim, out)


def _coassoc_sides(x: SymElement) -> tuple[dict, dict]:
    left: dict = defaultdict(Fraction)
    right: dict = defaultdict(Fraction)
    for (a, b, j), c in coproduct(x).terms.items():
        for s, r, mult in _sub_multisets(a):
            left[(s, r, b, j)] += c * mult
        for s, r, mult in _sub_multisets(b):
            right[(a, s, r, j)] += c * mult
    clean = lambda d: {k: v for k, v in d.items() if v}
    return clean(left), clean(right)


def _star_at(L: LieAlgebra, z0: Fraction, a: tuple, b: tuple) -> dict:
    """{monomial: coeff} of e_a * e_b at z = z0 (memoized per algebra)."""
    memo = L._cache.setdefault(("star_at", z0), {})
    key = (a, b)
    hit = memo.get(key)
    if hit is None:
        p = star_pbw(L, SymElement.monomial(L.dim, a), SymElement.monomial(L.dim, b)).evaluate_z(z0)
        hit = {m: c for (m, _), c in p.terms.items()}
        memo[key] = hit
    return hit


def _mu_star(L: LieAlgebra, t: TensorSquareElement, z0: Fraction) -> SymElement:
    out: dict = defaultdict(Fraction)
    for (a, b, j), c in t.terms.items():
        for m, v in _star_at(L, z0, a, b).items():
            out[(m, 0)] += c * v * z0**j
    return SymElement(L.dim, out)


def star_tensor(L: LieAlgebra, s: TensorSquareElement, t: TensorSquareElement, z0) -> TensorSquareElement:
    """(a (x) b)(c (x) d) = (a*c) (x) (b*d), star evaluated at z0 on each leg."""
    z0 = as_rational(z0)
    out: dict = defaultdict(Fraction)
    for (a, b, j), c in s.terms.items():
        for (a2, b2, j2), c2 in t.terms.items():
            left = _star_at(L, z0, a, a2)
            right = _star_at(L, z0, b, b2)
            f = c * c2 * z0 ** (j + j2)
            for m1, v1 in left.items():
                for m2, v2 in right.items():
                    out[(m1, m2, 0)] += f * v1 * v2
    return TensorSquareElement(L.dim, out)


def coproduct_u(u: UElement) -> dict:
    """Coproduct of U(g_z) on PBW words: sum over position subsets.

    Sub-words of a sorted word stay sorted, so no reordering is needed.
    Returns ``{(word1, word2, zpow): coefficient}``.
    """
    out: dict = defaultdict(Fraction)
    for (w, j), c in u.terms.items():
        n = len(w)
        for size in range(n + 1):
            for pos in combinations(range(n), size):
                ps = set(pos)
                a = tuple(w[i] for i in pos)
                b = tuple(w[i] for i in range(n) if i not in ps)
                out[(a, b, j)] += c
    return {k: v for k, v in out.items() if v}


def q_tensor(L: LieAlgebra, t: TensorSquareElement) -> dict:
    """(q_z (x) q_z) applied to a tensor of symmetric monomials (formal z)."""
    out: dict = defaultdict(Fraction)
    for (a, b, j), c in t.terms.items():
        qa = q_z(L, SymElement.monomial(L.dim, a)).terms
        qb = q_z(L, SymElement.monomial(L.dim, b)).terms
        for (wa, ja), ca in qa.items():
            for (wb, jb), cb in qb.items():
                out[(wa, wb, j + ja + jb)] += c * ca * cb
    return {k: v for k, v in out.items() if v}


@dataclass
class HopfReport:
    results: list = field(default_factory=list)  # (check, passed, lhs, rhs)

    def add(self, check: str, lhs, rhs) -> None:
        self.results.append((check, lhs == rhs, lhs, rhs))

    @property
    def ok(self) -> bool:
        return all(p for _, p, _, _ in self.results)

    def failures(self) -> list:
        return [r for r in self.results if not r[1]]


def verify_hopf(
    L: LieAlgebra, x: SymElement, z0, partner: SymElement | None = None
) -> HopfReport:
    """Exact Hopf-axiom checks on x (and the pair x, partner) at z = z0."""
    z0 = as_rational(z0)
    x = x.evaluate_z(z0)
    y = x if partner is None else partner.evaluate_z(z0)
    rep = HopfReport()
    dx = coproduct(x)
    rep.add("counit_left", _leg_eps(dx, 0), x)
    rep.add("counit_right", _leg_eps(dx, 1), x)
    left, right = _coassoc_sides(x)
    rep.add("coassociativity", left, right)
    rep.add("cocommutativity", swap(dx), dx)
    eps = SymElement.unit(L.dim, counit(x)[0])
    s_left = TensorSquareElement(L.dim, {(a, b, j): (-c if len(a) % 2 else c) for (a, b, j), c in dx.terms.items()})
    s_right = TensorSquareElement(L.dim, {(a, b, j): (-c if len(b) % 2 else c) for (a, b, j), c in dx.terms.items()})
    rep.add("antipode_left", _mu_star(L, s_left, z0), eps)
    rep.add("antipode_right", _mu_star(L, s_right, z0), eps)
    lhs = coproduct(SymElement(L.dim, _pairwise_star(L, x, y, z0)))
    rhs = star_tensor(L, dx, coproduct(y), z0)
    rep.add("coproduct_morphism", lhs, rhs)
    return rep


def _pairwise_star(L: LieAlgebra, x: SymElement, y: SymElement, z0: Fraction) -> dict:
    out: dict = defaultdict(Fraction)
    for (a, ja), ca in x.terms.items():
        for (b, jb), cb in y.terms.items():
            for m, v in _star_at(L, z0, a, b).items():
                out[(m, 0)] += ca * cb * v * z0 ** (ja + jb)
    return out
