"""The symmetric algebra Sym(g) with coefficients polynomial in z.

An element is stored sparsely as ``{(monomial, zpow): coefficient}`` where a
monomial is a sorted tuple of basis indices.  :meth:`SymElement.coeff` gives
the PolyZ coefficient of a monomial as a :class:`UniPoly`.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact_arith import UniPoly, as_rational
from .lie_algebra import DimensionError

__all__ = ["SymElement", "PolyZ", "sym_mul", "project", "evaluate_z", "render_coeff"]

PolyZ = UniPoly
Mono = tuple  # sorted tuple of basis indices


def _clean(d: Mapping) -> dict:
    return {k: v for k, v in d.items() if v}


class SymElement:
    __slots__ = ("dim", "terms", "_hash")

    def __init__(self, dim: int, terms: Mapping | None = None):
        self.dim = dim
        self.terms: dict = _clean(terms or {})
        self._hash = None

    # construction -----------------------------------------------------------
    @classmethod
    def zero(cls, dim: int) -> "SymElement":
        return cls(dim)

    @classmethod
    def unit(cls, dim: int, c=1) -> "SymElement":
        return cls(dim, {((), 0): as_rational(c)})

    @classmethod
    def monomial(cls, dim: int, indices: Iterable[int], c=1, zpow: int = 0) -> "SymElement":
        m = tuple(sorted(indices))
        if any(not 0 <= i < dim for i in m):
            raise IndexError(f"monomial {m} out of range for dim {dim}")
        return cls(dim, {(m, zpow): as_rational(c)})

    @classmethod
    def from_exponents(cls, exps: Sequence[int], c=1) -> "SymElement":
        m = tuple(i for i, e in enumerate(exps) for _ in range(e))
        return cls(len(exps), {(m, 0): as_rational(c)})

    @classmethod
    def from_vector(cls, v: Sequence) -> "SymElement":
        return cls(len(v), {((i,), 0): as_rational(x) for i, x in enumerate(v) if x})

    @classmethod
    def from_poly_terms(cls, dim: int, d: Mapping[Mono, UniPoly]) -> "SymElement":
        terms = {}
        for m, p in d.items():
            for j, c in enumerate(p.coeffs):
                if c:
                    terms[(tuple(sorted(m)), j)] = c
        return cls(dim, terms)

    # inspection -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def monomials(self) -> list[Mono]:
        return sorted({m for m, _ in self.terms}, key=lambda m: (len(m), m))

    def coeff(self, mono: Iterable[int]) -> UniPoly:
        m = tuple(sorted(mono))
        return UniPoly.from_dict({j: c for (mm, j), c in self.terms.items() if mm == m})

    def poly_terms(self) -> dict[Mono, UniPoly]:
        acc: dict = defaultdict(dict)
        for (m, j), c in self.terms.items():
            acc[m][j] = c
        return {m: UniPoly.from_dict(d) for m, d in acc.items()}

    def degree(self) -> int:
        """Top polynomial degree; -1 for zero."""
        return max((len(m) for m, _ in self.terms), default=-1)

    def z_degree(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def degrees(self) -> set[int]:
        return {len(m) for m, _ in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def is_constant_in_z(self) -> bool:
        return all(j == 0 for _, j in self.terms)

    # algebra ----------------------------------------------------------------
    def _same(self, other: "SymElement") -> None:
        if not isinstance(other, SymElement):
            raise TypeError("expected SymElement")
        if other.dim != self.dim:
            raise DimensionError(f"dimension mismatch {self.dim} vs {other.dim}")

    def __eq__(self, other) -> bool:
        return isinstance(other, SymElement) and self.dim == other.dim and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self.terms.items())))
        return self._hash

    def __add__(self, other: "SymElement") -> "SymElement":
        self._same(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return SymElement(self.dim, out)

    def __neg__(self) -> "SymElement":
        return SymElement(self.dim, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "SymElement") -> "SymElement":
        return self + (-other)

    def scale(self, c) -> "SymElement":
        c = as_rational(c)
        return SymElement(self.dim, {k: c * v for k, v in self.terms.items()})

    def shift_z(self, n: int) -> "SymElement":
        """Multiply by z^n."""
        return SymElement(self.dim, {(m, j + n): v for (m, j), v in self.terms.items()})

    def scale_poly(self, p: UniPoly) -> "SymElement":
        out: dict = defaultdict(Fraction)
        for (m, j), v in self.terms.items():
            for i, c in enumerate(p.coeffs):
                if c:
                    out[(m, j + i)] += c * v
        return SymElement(self.dim, out)

    def __mul__(self, other) -> "SymElement":
        if isinstance(other, SymElement):
            return sym_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "SymElement":
        return self.scale(other)

    def project(self, n: int) -> "SymElement":
        return project(self, n)

    def z_part(self, n: int) -> "SymElement":
        """Coefficient of z^n as a z-free element."""
        return SymElement(self.dim, {(m, 0): v for (m, j), v in self.terms.items() if j == n})

    def evaluate_z(self, z0) -> "SymElement":
        return evaluate_z(self, z0)

    # rendering --------------------------------------------------------------
    def sort_key(self, key):
        m, j = key
        return (-len(m), m, j)

    def render(self, labels: Sequence[str] | None = None) -> str:
        labels = labels or [f"e{i + 1}" for i in range(self.dim)]
        if not self.terms:
            return "0"
        out = ""
        for n, key in enumerate(sorted(self.terms, key=self.sort_key)):
            c = self.terms[key]
            body = render_coeff(abs(c), key[1], _render_mono(key[0], labels))
            if n == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"SymElement({self.render()})"


def _render_mono(m: Mono, labels: Sequence[str]) -> str:
    parts = []
    i = 0
    while i < len(m):
        j = i
        while j < len(m) and m[j] == m[i]:
            j += 1
        e = j - i
        parts.append(labels[m[i]] if e == 1 else f"{labels[m[i]]}^{e}")
        i = j
    return "*".join(parts)


def render_coeff(c: Fraction, zpow: int, mono: str) -> str:
    """Render |c| z^zpow * mono, e.g. ``(1/2)z*E`` or ``2*P*Q`` or ``z^2``."""
    zs = "" if zpow == 0 else ("z" if zpow == 1 else f"z^{zpow}")
    if c == 1 and (zs or mono):
        cs = ""
    elif c.denominator == 1:
        cs = str(c.numerator)
    else:
        cs = f"({c})"
    head = cs + zs
    if not head:
        return mono
    if not mono:
        return head
    return f"{head}*{mono}"


def _merge_sorted(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


def sym_mul(a: SymElement, b: SymElement) -> SymElement:
    """Commutative product: multiset union of monomials, convolution in z."""
    a._same(b)
    out: dict = defaultdict(Fraction)
    for (ma, ja), ca in a.terms.items():
        for (mb, jb), cb in b.terms.items():
            out[(_merge_sorted(ma, mb), ja + jb)] += ca * cb
    return SymElement(a.dim, out)


def project(x: SymElement, n: int) -> SymElement:
    """Restriction to degree-n monomials."""
    return SymElement(x.dim, {k: v for k, v in x.terms.items() if len(k[0]) == n})


def evaluate_z(x: SymElement, z0) -> SymElement:
    z0 = as_rational(z0)
    out: dict = defaultdict(Fraction)
    for (m, j), c in x.terms.items():
        out[(m, 0)] += c * z0**j
    return SymElement(x.dim, out)
