"""The Gutt star product on Sym(g), computed three independent ways.

* :func:`star_pbw` pulls the U(g_z) product back through q_z.  This is the
  reference implementation.
* :func:`star_bch` sums products of BCH components over G-indices.
* :func:`star_gutt_original` works at z = 1 and re-inserts powers of z from
  the polynomial degree of each output component.

All three return :class:`SymElement` values whose coefficients are exact
polynomials in z.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb, factorial
from typing import Iterator, Sequence

from .combinat import distinct_permutations, distinct_prefixes, multiplicity_weight
from .enveloping import q_z, q_z_inv, u_mul
from .exact_arith import bernoulli, bernoulli_star
from .free_lie import bch_tilde
from .lie_algebra import DimensionError, LieAlgebra, Vector, bracket
from .sym_algebra import SymElement, sym_mul

__all__ = [
    "GIndex",
    "g_indices",
    "g_factorial",
    "star_pbw",
    "star_linear",
    "star_bch",
    "star_gutt_original",
    "c_n",
    "star_vectors",
    "poisson_check",
    "leibniz_bracket",
    "linear_cn",
]


def _check(L: LieAlgebra, *xs: SymElement) -> None:
    for x in xs:
        if x.dim != L.dim:
            raise DimensionError(f"element of dim {x.dim} used with algebra of dim {L.dim}")


# ------------------------------------------------------------------ PBW route

def star_pbw(L: LieAlgebra, f: SymElement, g: SymElement) -> SymElement:
    """q_z^{-1}(q_z(f) . q_z(g)) with z formal."""
    _check(L, f, g)
    return q_z_inv(L, u_mul(L, q_z(L, f), q_z(L, g)))


def c_n(L: LieAlgebra, f: SymElement, g: SymElement, n: int) -> SymElement:
    """Coefficient of z^n in f * g (z-free output)."""
    return star_pbw(L, f, g).z_part(n)


# ------------------------------------------------------- linear-factor formula

def _nested(L: LieAlgebra, prefix: Sequence[int], eta: Vector) -> Vector:
    """[e_p0, [e_p1, ... [e_p{j-1}, eta]]]."""
    v = eta
    for i in reversed(prefix):
        if not any(v):
            break
        v = bracket(L, L.basis(i), v)
    return v


def linear_cn(L: LieAlgebra, f: SymElement, eta: Vector, n: int, side: str = "left") -> SymElement:
    """The z^n part of f * eta (side="left") or eta * f (side="right").

    Only z-free f is accepted; the coefficient is taken per monomial.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    bern = bernoulli_star if side == "left" else bernoulli
    out: dict = defaultdict(Fraction)
    for (m, jz), c in f.terms.items():
        k = len(m)
        if n > k:
            continue
        b = bern(n)
        if not b:
            continue
        scale = c * comb(k, n) * b / factorial(k)
        for prefix, rest, w in distinct_prefixes(m, n):
            v = _nested(L, prefix, eta)
            for idx, x in enumerate(v):
                if x:
                    key = (tuple(sorted(rest + (idx,))), jz + n)
                    out[key] += scale * w * x
    return SymElement(L.dim, out)


def star_linear(L: LieAlgebra, f: SymElement, eta: Vector, side: str = "left") -> SymElement:
    """f * eta (left) or eta * f (right) from the Bernoulli-number closed form."""
    _check(L, f)
    if len(eta) != L.dim:
        raise DimensionError("eta has the wrong dimension")
    out = SymElement(L.dim)
    top = f.degree()
    for n in range(top + 1):
        out = out + linear_cn(L, f, eta, n, side)
    return out


def star_vectors(L: LieAlgebra, xs: Sequence[Vector]) -> SymElement:
    """xi_1 * ... * xi_k by nesting C_{i_j}(., xi_{j+1}) with i_j in {0..j}."""
    if not xs:
        raise ValueError("need at least one vector")
    for v in xs:
        if len(v) != L.dim:
            raise DimensionError("vector of wrong dimension")
    layer = {0: SymElement.from_vector(xs[0])}  # keyed by total z power
    for j, eta in enumerate(xs[1:], start=1):
        nxt: dict = {}
        for zp, x in layer.items():
            for i in range(j + 1):
                part = linear_cn(L, x, eta, i).shift_z(-i)
                if part:
                    nxt[zp + i] = nxt.get(zp + i, SymElement(L.dim)) + part
        layer = nxt
    out = SymElement(L.dim)
    for zp, x in layer.items():
        out = out + x.shift_z(zp)
    return out


# ------------------------------------------------------------------ BCH route

@dataclass(frozen=True)
class GIndex:
    """Canonically ordered tuple of pairs (a_i, b_i)."""

    pairs: tuple

    @property
    def r(self) -> int:
        return len(self.pairs)

    @property
    def k(self) -> int:
        return sum(a for a, _ in self.pairs)

    @property
    def l(self) -> int:
        return sum(b for _, b in self.pairs)

    def factorial(self) -> int:
        return g_factorial(self.pairs)

    def is_valid(self, k: int, l: int) -> bool:
        ps = self.pairs
        if sum(a for a, _ in ps) != k or sum(b for _, b in ps) != l:
            return False
        for a, b in ps:
            if a < 0 or b < 0 or a + b < 1 or a > k or b > l:
                return False
            if (a == 0 and b != 1) or (b == 0 and a != 1):
                return False
        keys = [(a + b, a) for a, b in ps]
        return keys == sorted(keys)


def g_factorial(pairs) -> int:
    out = 1
    for m in Counter(pairs).values():
        out *= factorial(m)
    return out


def _allowed_pairs(k: int, l: int) -> list:
    pairs = [(a, b) for a in range(k + 1) for b in range(l + 1) if a + b >= 1]
    pairs = [(a, b) for a, b in pairs if not (a == 0 and b != 1) and not (b == 0 and a != 1)]
    return sorted(pairs, key=lambda p: (p[0] + p[1], p[0]))


@lru_cache(maxsize=None)
def _g_indices(k: int, l: int, r: int) -> tuple:
    allowed = _allowed_pairs(k, l)
    out = []

    def rec(start, ka, lb, acc):
        if len(acc) == r:
            if ka == 0 and lb == 0:
                out.append(GIndex(tuple(acc)))
            return
        for idx in range(start, len(allowed)):
            a, b = allowed[idx]
            if a <= ka and b <= lb:
                acc.append((a, b))
                rec(idx, ka - a, lb - b, acc)
                acc.pop()

    rec(0, k, l, [])
    return tuple(out)


def g_indices(k: int, l: int, r: int) -> tuple:
    """All G-indices of length r for degrees (k, l)."""
    return _g_indices(k, l, r)


def _ordered_tuples(k: int, l: int, r: int) -> Iterator[tuple]:
    """Every ordered r-tuple of allowed pairs summing to (k, l)."""
    allowed = _allowed_pairs(k, l)

    def rec(ka, lb, acc):
        if len(acc) == r:
            if ka == 0 and lb == 0:
                yield tuple(acc)
            return
        for a, b in allowed:
            if a <= ka and b <= lb:
                acc.append((a, b))
                yield from rec(ka - a, lb - b, acc)
                acc.pop()

    yield from rec(k, l, [])


class _TildeCache:
    """Memoized BCH~ evaluations on basis letters for one algebra."""

    def __init__(self, L: LieAlgebra):
        self.L = L
        self.memo: dict = {}

    def __call__(self, xs: tuple, ys: tuple) -> Vector:
        key = (xs, ys)
        hit = self.memo.get(key)
        if hit is None:
            L = self.L
            hit = bch_tilde(len(xs), len(ys), [L.basis(i) for i in xs], [L.basis(j) for j in ys], L)
            self.memo[key] = hit
        return hit


def _tilde(L: LieAlgebra) -> _TildeCache:
    t = L._cache.get("tilde")
    if t is None:
        t = _TildeCache(L)
        L._cache["tilde"] = t
    return t


def _product_of_vectors(vectors: Sequence[Vector]) -> dict:
    """Symmetric product of degree-one elements as {monomial: coefficient}."""
    acc = {(): Fraction(1)}
    for v in vectors:
        nz = [(i, x) for i, x in enumerate(v) if x]
        if not nz:
            return {}
        nxt: dict = defaultdict(Fraction)
        for m, c in acc.items():
            for i, x in nz:
                nxt[tuple(sorted(m + (i,)))] += c * x
        acc = nxt
    return acc


def _arrangements(m: tuple, literal: bool):
    if literal:
        return ((p, 1) for p in permutations(m))
    w = multiplicity_weight(m)
    return ((p, w) for p in distinct_permutations(m))


def _bch_monomials(
    L: LieAlgebra, mx: tuple, my: tuple, method: str, literal: bool
) -> dict:
    """{(monomial, n): coeff} for the product of two basis monomials."""
    k, l = len(mx), len(my)
    tilde = _tilde(L)
    out: dict = defaultdict(Fraction)
    xs_arr = list(_arrangements(mx, literal))
    ys_arr = list(_arrangements(my, literal))
    for r in range(1, k + l + 1):
        n = k + l - r
        if method == "gindex":
            shapes = [(J.pairs, Fraction(1, J.factorial())) for J in g_indices(k, l, r)]
        elif method == "ordered":
            shapes = [(t, Fraction(1, factorial(r))) for t in _ordered_tuples(k, l, r)]
        else:
            raise ValueError(f"unknown method {method!r}")
        for pairs, weight in shapes:
            for xa, wx in xs_arr:
                for ya, wy in ys_arr:
                    vecs = []
                    ix = iy = 0
                    for a, b in pairs:
                        v = tilde(xa[ix : ix + a], ya[iy : iy + b])
                        ix += a
                        iy += b
                        if not any(v):
                            vecs = None
                            break
                        vecs.append(v)
                    if vecs is None:
                        continue
                    f = weight * wx * wy
                    for mono, c in _product_of_vectors(vecs).items():
                        out[(mono, n)] += f * c
    return out


def star_bch(
    L: LieAlgebra, f: SymElement, g: SymElement, method: str = "gindex", literal: bool = False
) -> SymElement:
    """Sum_n z^n C_n(f, g) from BCH components.

    ``method="gindex"`` sums canonical G-indices weighted by 1/J!;
    ``method="ordered"`` sums all ordered tuples weighted by 1/r!.
    ``literal=True`` sums over all k! l! permutations instead of distinct
    arrangements with multiplicity.
    """
    _check(L, f, g)
    out: dict = defaultdict(Fraction)
    memo = L._cache.setdefault(("bchmono", method, literal), {})
    for (mx, jx), cx in f.terms.items():
        for (my, jy), cy in g.terms.items():
            if not mx or not my:
                out[(tuple(sorted(mx + my)), jx + jy)] += cx * cy
                continue
            key = (mx, my)
            part = memo.get(key)
            if part is None:
                part = _bch_monomials(L, mx, my, method, literal)
                memo[key] = part
            for (mono, n), c in part.items():
                out[(mono, n + jx + jy)] += cx * cy * c
    return SymElement(L.dim, out)


# ---------------------------------------------------------- z = 1 definition

def _split(x: SymElement) -> dict:
    """{(degree, zpow): z-free homogeneous component}."""
    parts: dict = defaultdict(dict)
    for (m, j), c in x.terms.items():
        parts[(len(m), j)][(m, 0)] = c
    return {k: SymElement(x.dim, v) for k, v in parts.items()}


def star_gutt_original(L: LieAlgebra, f: SymElement, g: SymElement) -> SymElement:
    """sum_n z^n pi_{k+l-n}(q_1^{-1}(q_1 f . q_1 g)) on homogeneous parts."""
    _check(L, f, g)
    one = Fraction(1)
    out = SymElement(L.dim)
    for (k, jf), fk in _split(f).items():
        for (l, jg), gl in _split(g).items():
            prod = q_z_inv(L, u_mul(L, q_z(L, fk, one), q_z(L, gl, one), one), one)
            for d in sorted(prod.degrees()):
                n = k + l - d
                if n < 0:
                    raise AssertionError("product raised the polynomial degree")
                out = out + prod.project(d).shift_z(n + jf + jg)
    return out


# ------------------------------------------------------------ Poisson limit

def leibniz_bracket(L: LieAlgebra, f: SymElement, g: SymElement) -> SymElement:
    """Biderivation extending the Lie bracket: {f, g} by the Leibniz rule."""
    _check(L, f, g)
    out: dict = defaultdict(Fraction)
    for (mx, jx), cx in f.terms.items():
        for (my, jy), cy in g.terms.items():
            for i, mi in Counter(mx).items():
                rx = list(mx)
                rx.remove(i)
                for j, mj in Counter(my).items():
                    ry = list(my)
                    ry.remove(j)
                    for k, ck in L.table[i][j]:
                        mono = tuple(sorted(rx + ry + [k]))
                        out[(mono, jx + jy)] += cx * cy * mi * mj * ck
    return SymElement(L.dim, out)


def poisson_check(L: LieAlgebra, f: SymElement, g: SymElement) -> bool:
    """C_1(f, g) - C_1(g, f) equals the Leibniz extension of the bracket."""
    lhs = c_n(L, f, g, 1) - c_n(L, g, f, 1)
    return lhs == leibniz_bracket(L, f, g)
