"""The deformed enveloping algebra U(g_z) in PBW normal form.

Words are nondecreasing tuples of basis indices (the basis order is the PBW
order).  The relation used for rewriting is ``e_j e_i = e_i e_j + z [e_j, e_i]``
for ``j > i``.  With ``z`` left formal the coefficients are polynomials in z;
passing a rational ``z`` specializes the parameter inside the rewriting.
"""

from __future__ import annotations

import random
from collections import defaultdict
from fractions import Fraction
from math import factorial
from typing import Callable, Sequence

from ._kernels import OrderingEngine
from .exact_arith import as_rational
from .lie_algebra import DimensionError, LieAlgebra, bracket
from .sym_algebra import SymElement, _render_mono, render_coeff

__all__ = [
    "UElement",
    "HomomorphismError",
    "RepresentationError",
    "engine",
    "normal_order",
    "normal_order_random",
    "u_mul",
    "q_z",
    "q_z_inv",
    "lift_hom",
    "sym_hom",
    "represent",
    "check_representation",
]


class HomomorphismError(ValueError):
    pass


class RepresentationError(ValueError):
    pass


class UElement:
    """Sparse ``{(pbw_word, zpow): coefficient}``; zpow is always 0 when z is numeric."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms=None):
        self.dim = dim
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def unit(cls, dim: int) -> "UElement":
        return cls(dim, {((), 0): Fraction(1)})

    @classmethod
    def word(cls, dim: int, w: Sequence[int], c=1) -> "UElement":
        w = tuple(w)
        if list(w) != sorted(w):
            raise ValueError("PBW words must be nondecreasing; use normal_order")
        return cls(dim, {(w, 0): as_rational(c)})

    def __eq__(self, other) -> bool:
        return isinstance(other, UElement) and self.dim == other.dim and self.terms == other.terms

    def __add__(self, other: "UElement") -> "UElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return UElement(self.dim, out)

    def __neg__(self) -> "UElement":
        return UElement(self.dim, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "UElement") -> "UElement":
        return self + (-other)

    def scale(self, c) -> "UElement":
        c = as_rational(c)
        return UElement(self.dim, {k: c * v for k, v in self.terms.items()})

    def evaluate_z(self, z0) -> "UElement":
        z0 = as_rational(z0)
        out: dict = defaultdict(Fraction)
        for (w, j), c in self.terms.items():
            out[(w, 0)] += c * z0**j
        return UElement(self.dim, out)

    def render(self, labels: Sequence[str] | None = None) -> str:
        labels = labels or [f"e{i + 1}" for i in range(self.dim)]
        if not self.terms:
            return "0"
        out = ""
        keys = sorted(self.terms, key=lambda k: (-len(k[0]), k[0], k[1]))
        for n, key in enumerate(keys):
            c = self.terms[key]
            body = render_coeff(abs(c), key[1], _render_mono(key[0], labels))
            out = (("-" if c < 0 else "") + body) if n == 0 else out + (" - " if c < 0 else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"UElement({self.render()})"


def _zkey(z):
    return None if z is None else as_rational(z)


def engine(L: LieAlgebra, z=None) -> OrderingEngine:
    """Shared (cached) rewriting engine for L at formal (None) or numeric z."""
    key = ("engine", _zkey(z))
    eng = L._cache.get(key)
    if eng is None:
        eng = OrderingEngine(L.table, _zkey(z))
        L._cache[key] = eng
    return eng


def normal_order(L: LieAlgebra, word: Sequence[int], z=None) -> UElement:
    word = tuple(int(i) for i in word)
    if any(not 0 <= i < L.dim for i in word):
        raise IndexError(f"index out of range in word {word}")
    return UElement(L.dim, {k: Fraction(c) for k, c in engine(L, z).normal_order(word).items()})


def normal_order_random(L: LieAlgebra, word: Sequence[int], rng: random.Random) -> UElement:
    """Independent rewriting that fixes a randomly chosen inversion each step.

    Used to test confluence of the rewrite system against :func:`normal_order`.
    """
    todo: dict = defaultdict(Fraction)
    todo[(tuple(word), 0)] += 1
    done: dict = defaultdict(Fraction)
    while todo:
        (w, j), c = todo.popitem()
        if not c:
            continue
        desc = [i for i in range(len(w) - 1) if w[i] > w[i + 1]]
        if not desc:
            done[(w, j)] += c
            continue
        i = rng.choice(desc)
        a, b = w[i], w[i + 1]
        todo[(w[:i] + (b, a) + w[i + 2 :], j)] += c
        for k, ck in L.table[a][b]:
            todo[(w[:i] + (k,) + w[i + 2 :], j + 1)] += c * ck
    return UElement(L.dim, done)


def _same_dim(L: LieAlgebra, *xs) -> None:
    for x in xs:
        if x.dim != L.dim:
            raise DimensionError(f"element of dim {x.dim} used with algebra of dim {L.dim}")


def u_mul(L: LieAlgebra, a: UElement, b: UElement, z=None) -> UElement:
    _same_dim(L, a, b)
    return UElement(L.dim, engine(L, z).mul(a.terms, b.terms))


# ------------------------------------------------------------ quantization

def _sym_power(L: LieAlgebra, z, alpha: tuple) -> dict:
    """Sum over all distinct arrangements of the multiset alpha, normal ordered.

    S(alpha) = sum_i S(alpha - e_i) * e_i, i.e. the t^alpha coefficient of
    (sum t_i e_i)^n.  Cached per algebra and z.
    """
    key = ("sympow", _zkey(z))
    cache = L._cache.setdefault(key, {})
    hit = cache.get(alpha)
    if hit is not None:
        return hit
    if not any(alpha):
        res = {((), 0): engine(L, z).one}
    else:
        eng = engine(L, z)
        res = {}
        for i, a in enumerate(alpha):
            if a:
                prev = _sym_power(L, z, alpha[:i] + (a - 1,) + alpha[i + 1 :])
                for k, c in eng.mul_letter(prev, i).items():
                    res[k] = res.get(k, 0) + c
        res = {k: c for k, c in res.items() if c}
    cache[alpha] = res
    return res


def _exponents(dim: int, mono: tuple) -> tuple:
    alpha = [0] * dim
    for i in mono:
        alpha[i] += 1
    return tuple(alpha)


def q_mono(L: LieAlgebra, mono: tuple, z=None) -> dict:
    """q_z of a single symmetric monomial, as raw terms."""
    alpha = _exponents(L.dim, mono)
    cache = L._cache.setdefault(("qmono", _zkey(z)), {})
    hit = cache.get(alpha)
    if hit is None:
        weight = Fraction(1, factorial(len(mono)))
        for a in alpha:
            weight *= factorial(a)
        hit = {k: weight * c for k, c in _sym_power(L, z, alpha).items()}
        cache[alpha] = hit
    return hit


def q_z(L: LieAlgebra, x: SymElement, z=None) -> UElement:
    """Symmetrization Sym(g) -> U(g_z).

    Formal z: PolyZ coefficients of x multiply through.  Numeric z: x must
    be free of z (evaluate first).
    """
    _same_dim(L, x)
    out: dict = defaultdict(Fraction)
    numeric = z is not None
    for (m, j), c in x.terms.items():
        if numeric and j:
            raise ValueError("numeric quantization needs a z-free element")
        for (w, jj), cc in q_mono(L, m, z).items():
            out[(w, j + jj)] += c * cc
    return UElement(L.dim, out)


def q_z_inv(L: LieAlgebra, u: UElement, z=None) -> SymElement:
    """Inverse of q_z by descending the degree filtration.

    The top-degree part of q_z(m) is the sorted word m itself, so the top
    degree of the remainder can always be matched exactly and removed.
    """
    _same_dim(L, u)
    rem = dict(u.terms)
    out: dict = defaultdict(Fraction)
    while rem:
        top = max(len(w) for w, _ in rem)
        layer = [(k, c) for k, c in rem.items() if len(k[0]) == top]
        for (w, j), c in layer:
            out[(w, j)] += c
            for (w2, j2), c2 in q_mono(L, w, z).items():
                k2 = (w2, j + j2)
                rem[k2] = rem.get(k2, 0) - c * c2
        rem = {k: v for k, v in rem.items() if v}
        if any(len(k[0]) >= top for k in rem):
            raise AssertionError("q_z_inv failed to clear the top degree")
    return SymElement(L.dim, out)


# ------------------------------------------------------------ morphisms

def _image_vectors(L1: LieAlgebra, L2: LieAlgebra, phi) -> list[tuple]:
    rows = [tuple(as_rational(x) for x in r) for r in phi]
    if len(rows) != L1.dim or any(len(r) != L2.dim for r in rows):
        raise DimensionError("phi must have one row of length dim(L2) per basis vector of L1")
    return rows


def _apply_linear(rows, v) -> tuple:
    d = len(rows[0])
    out = [Fraction(0)] * d
    for i, vi in enumerate(v):
        if vi:
            for k, r in enumerate(rows[i]):
                out[k] += vi * r
    return tuple(out)


def check_hom(L1: LieAlgebra, L2: LieAlgebra, phi) -> tuple[int, int] | None:
    """First basis pair (i, j) where phi([e_i, e_j]) != [phi e_i, phi e_j], or None."""
    rows = _image_vectors(L1, L2, phi)
    for i in range(L1.dim):
        for j in range(L1.dim):
            lhs = _apply_linear(rows, bracket(L1, L1.basis(i), L1.basis(j)))
            rhs = bracket(L2, rows[i], rows[j])
            if lhs != rhs:
                return (i, j)
    return None


def lift_hom(L1: LieAlgebra, L2: LieAlgebra, phi, z=None) -> Callable[[UElement], UElement]:
    """Extend a Lie homomorphism (rows = images of basis vectors) to U(g_z).

    Each PBW word maps to the ordered product of letter images; the result is
    normal ordered in the target.
    """
    rows = _image_vectors(L1, L2, phi)
    bad = check_hom(L1, L2, phi)
    if bad is not None:
        i, j = bad
        raise HomomorphismError(
            f"phi does not preserve the bracket of {L1.labels[i]} and {L1.labels[j]}"
        )
    eng = engine(L2, z)
    images = [{((k,), 0): c for k, c in enumerate(r) if c} for r in rows]

    def word_image(w: tuple) -> dict:
        acc = {((), 0): Fraction(1)}
        for i in w:
            acc = eng.mul(acc, images[i])
        return acc

    def apply(u: UElement) -> UElement:
        _same_dim(L1, u)
        out: dict = defaultdict(Fraction)
        for (w, j), c in u.terms.items():
            for (w2, j2), c2 in word_image(w).items():
                out[(w2, j + j2)] += c * c2
        return UElement(L2.dim, out)

    return apply


def sym_hom(L1: LieAlgebra, L2: LieAlgebra, phi, z=None) -> Callable[[SymElement], SymElement]:
    """The Sym-level map q_z^{-1} . lift_hom . q_z."""
    lift = lift_hom(L1, L2, phi, z)
    return lambda x: q_z_inv(L2, lift(q_z(L1, x, z)), z)


# ------------------------------------------------------------ matrices

def _mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    out = [[Fraction(0)] * p for _ in range(n)]
    for i in range(n):
        ai, oi = a[i], out[i]
        for k in range(m):
            aik = ai[k]
            if aik:
                bk = b[k]
                for j in range(p):
                    if bk[j]:
                        oi[j] += aik * bk[j]
    return out


def _identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def _mat_combo(terms, n):
    out = [[Fraction(0)] * n for _ in range(n)]
    for c, m in terms:
        for i in range(n):
            for j in range(n):
                out[i][j] += c * m[i][j]
    return out


def check_representation(L: LieAlgebra, rho) -> tuple[int, int] | None:
    """First pair (i, j) where rho([e_i,e_j]) != [rho_i, rho_j], or None."""
    mats = [[[as_rational(x) for x in row] for row in m] for m in rho]
    if len(mats) != L.dim:
        raise RepresentationError("need one matrix per basis vector")
    n = len(mats[0])
    for i in range(L.dim):
        for j in range(L.dim):
            comm = _mat_combo([(1, _mat_mul(mats[i], mats[j])), (-1, _mat_mul(mats[j], mats[i]))], n)
            img = _mat_combo([(c, mats[k]) for k, c in L.table[i][j]], n)
            if comm != img:
                return (i, j)
    return None


def represent(L: LieAlgebra, rho, z0, x: SymElement):
    """Matrix of q_{z0}(x) with generators acting as z0 * rho(e_i)."""
    z0 = as_rational(z0)
    if z0 == 0:
        raise RepresentationError("z0 = 0 is not supported (U(g_0) is commutative)")
    bad = check_representation(L, rho)
    if bad is not None:
        raise RepresentationError(f"rho is not a representation at basis pair {bad}")
    mats = [[[z0 * as_rational(v) for v in row] for row in m] for m in rho]
    n = len(mats[0])
    u = q_z(L, x.evaluate_z(z0), z0)
    cache: dict = {(): _identity(n)}

    def word_mat(w):
        hit = cache.get(w)
        if hit is None:
            hit = _mat_mul(word_mat(w[:-1]), mats[w[-1]])
            cache[w] = hit
        return hit

    return _mat_combo([(c, word_mat(w)) for (w, _), c in u.terms.items()], n)
