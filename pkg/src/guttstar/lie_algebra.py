"""Finite-dimensional Lie algebras given by rational structure constants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .exact_arith import as_rational

Vector = tuple  # tuple of Fraction, one entry per basis index

__all__ = [
    "LieAlgebra",
    "Vector",
    "Violation",
    "DimensionError",
    "validate",
    "bracket",
    "ad_power",
    "nilpotency_index",
    "abelian",
    "heisenberg",
    "so3",
    "from_spec",
    "vec",
    "basis_vector",
]


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    kind: str  # "antisymmetry" | "jacobi"
    index: tuple  # 1-based index tuple

    def __str__(self) -> str:
        return f"{self.kind} violation at {self.index}"


class LieAlgebra:
    """Structure constants ``c[i][j][k]`` with ``[e_i, e_j] = sum_k c[i][j][k] e_k``.

    Indices are 0-based in code.  The basis order doubles as the PBW order.
    Instances are immutable; heavy derived data (normal-ordering caches etc.)
    hang off ``_cache`` and never change observable results.
    """

    def __init__(self, labels: Sequence[str], c, name: str | None = None):
        labels = tuple(str(s) for s in labels)
        d = len(labels)
        if d < 1:
            raise ValueError("dimension must be >= 1")
        if len(set(labels)) != d:
            raise ValueError("basis labels must be unique")
        cc = tuple(
            tuple(tuple(as_rational(c[i][j][k]) for k in range(d)) for j in range(d))
            for i in range(d)
        )
        self.labels = labels
        self.dim = d
        self.c = cc
        self.name = name
        # sparse view: table[i][j] = ((k, c_ij^k), ...)
        self.table = tuple(
            tuple(tuple((k, v) for k, v in enumerate(cc[i][j]) if v) for j in range(d))
            for i in range(d)
        )
        self._key = (labels, cc)
        self._cache: dict = {}

    @classmethod
    def from_brackets(
        cls,
        labels: Sequence[str],
        brackets: Mapping[tuple[int, int], Mapping[int, object]],
        name: str | None = None,
    ) -> "LieAlgebra":
        """Build from entries ``(i, j) -> {k: c}``; antisymmetry is completed.

        Either triangle may be given.  If both ``(i, j)`` and ``(j, i)`` appear
        they are stored verbatim, so inconsistent input surfaces in validate.
        """
        d = len(labels)
        c = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
        given = set()
        for (i, j), res in brackets.items():
            if not (0 <= i < d and 0 <= j < d):
                raise IndexError(f"bracket index ({i}, {j}) out of range")
            given.add((i, j))
            for k, v in res.items():
                if not 0 <= k < d:
                    raise IndexError(f"result index {k} out of range")
                c[i][j][k] = as_rational(v)
        for (i, j) in list(given):
            if (j, i) not in given:
                for k in range(d):
                    c[j][i][k] = -c[i][j][k]
        return cls(labels, c, name=name)

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlgebra) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name or 'custom'}, dim={self.dim})"

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown basis label {label!r}") from None

    def basis(self, i: int) -> Vector:
        return basis_vector(self.dim, i)

    def zero(self) -> Vector:
        return (Fraction(0),) * self.dim

    def is_abelian(self) -> bool:
        return not any(self.table[i][j] for i in range(self.dim) for j in range(self.dim))

    def structure_bound(self, weights: Sequence[Fraction] | None = None) -> Fraction:
        """max_{i,j} sum_k |c_ij^k| w_k / (w_i w_j)."""
        w = [Fraction(1)] * self.dim if weights is None else [as_rational(x) for x in weights]
        best = Fraction(0)
        for i in range(self.dim):
            for j in range(self.dim):
                s = sum((abs(v) * w[k] for k, v in self.table[i][j]), Fraction(0))
                best = max(best, s / (w[i] * w[j]))
        return best


def vec(*coords) -> Vector:
    return tuple(as_rational(x) for x in coords)


def basis_vector(dim: int, i: int) -> Vector:
    return tuple(Fraction(1) if k == i else Fraction(0) for k in range(dim))


def validate(L: LieAlgebra) -> Violation | None:
    """Return None if antisymmetry and Jacobi hold exactly, else the first violation."""
    d, c = L.dim, L.c
    for i in range(d):
        for j in range(i, d):
            for k in range(d):
                if c[i][j][k] != -c[j][i][k]:
                    return Violation("antisymmetry", (i + 1, j + 1, k + 1))
    for i in range(d):
        for j in range(d):
            for k in range(d):
                for m in range(d):
                    s = Fraction(0)
                    for l in range(d):
                        s += (
                            c[i][j][l] * c[l][k][m]
                            + c[j][k][l] * c[l][i][m]
                            + c[k][i][l] * c[l][j][m]
                        )
                    if s:
                        return Violation("jacobi", (i + 1, j + 1, k + 1, m + 1))
    return None


def _check_dim(L: LieAlgebra, *vs) -> None:
    for v in vs:
        if len(v) != L.dim:
            raise DimensionError(f"vector of length {len(v)} in algebra of dim {L.dim}")


def bracket(L: LieAlgebra, x: Vector, y: Vector) -> Vector:
    """[x, y]^k = sum_{ij} x_i y_j c_ij^k."""
    _check_dim(L, x, y)
    out = [Fraction(0)] * L.dim
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = L.table[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            f = xi * yj
            for k, v in row[j]:
                out[k] += f * v
    return tuple(out)


def ad_power(L: LieAlgebra, x: Vector, n: int, y: Vector) -> Vector:
    """(ad_x)^n (y)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    _check_dim(L, x, y)
    for _ in range(n):
        y = bracket(L, x, y)
    return y


def _row_reduce(vectors: list[Vector]) -> list[Vector]:
    """A basis (echelon form) of the span of the given vectors."""
    rows = [list(v) for v in vectors if any(v)]
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    for r in rows:
        r = r[:]
        for b, p in zip(basis, pivots):
            if r[p]:
                f = r[p] / b[p]
                r = [a - f * bb for a, bb in zip(r, b)]
        if any(r):
            p = next(i for i, a in enumerate(r) if a)
            basis.append(r)
            pivots.append(p)
    return [tuple(b) for b in basis]


def nilpotency_index(L: LieAlgebra, max_n: int) -> int | None:
    """Smallest N <= max_n with every (N+1)-fold nested bracket zero, else None.

    Nested brackets of basis vectors are enumerated level by level; each level
    is replaced by a spanning basis, which loses nothing by multilinearity.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    level = [L.basis(i) for i in range(L.dim)]
    for n in range(1, max_n + 1):
        nxt = [bracket(L, v, L.basis(j)) for v in level for j in range(L.dim)]
        level = _row_reduce(nxt)
        if not level:
            return n
    return None


# ----------------------------------------------------------------- builders

def abelian(d: int) -> LieAlgebra:
    if d < 1:
        raise ValueError("d must be >= 1")
    labels = [f"e{i + 1}" for i in range(d)]
    return LieAlgebra.from_brackets(labels, {}, name=f"abelian({d})")


def heisenberg(n: int = 1) -> LieAlgebra:
    """Basis P_1..P_n, Q_1..Q_n, E with [P_i, Q_i] = E (unindexed labels for n = 1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        labels = ["P", "Q", "E"]
    else:
        labels = [f"P{i + 1}" for i in range(n)] + [f"Q{i + 1}" for i in range(n)] + ["E"]
    e = 2 * n
    br = {(i, n + i): {e: 1} for i in range(n)}
    return LieAlgebra.from_brackets(labels, br, name=f"heisenberg({n})")


def so3() -> LieAlgebra:
    """[e1, e2] = e3, [e2, e3] = e1, [e3, e1] = e2."""
    br = {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}}
    return LieAlgebra.from_brackets(["e1", "e2", "e3"], br, name="so3")


class SpecError(ValueError):
    pass


def from_spec(spec: Mapping) -> LieAlgebra:
    """Build and validate an algebra from a parsed AlgebraSpec mapping."""
    try:
        labels = list(spec["basis"])
        dim = int(spec.get("dim", len(labels)))
        entries = spec.get("brackets", [])
    except (KeyError, TypeError) as exc:
        raise SpecError(f"malformed algebra spec: {exc}") from None
    if dim != len(labels):
        raise SpecError(f"dim {dim} does not match {len(labels)} basis labels")
    if len(set(labels)) != len(labels):
        raise SpecError("basis labels must be unique")
    pos = {lab: i for i, lab in enumerate(labels)}
    br: dict[tuple[int, int], dict[int, Fraction]] = {}
    for n, ent in enumerate(entries):
        try:
            i, j = pos[ent["i"]], pos[ent["j"]]
            res = {pos[k]: as_rational(v) for k, v in ent["result"].items()}
        except KeyError as exc:
            raise SpecError(f"bracket entry {n}: unknown label {exc}") from None
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise SpecError(f"bracket entry {n}: bad rational ({exc})") from None
        if (i, j) in br:
            raise SpecError(f"bracket entry {n}: duplicate pair ({ent['i']}, {ent['j']})")
        br[(i, j)] = res
    L = LieAlgebra.from_brackets(labels, br, name=spec.get("name"))
    bad = validate(L)
    if bad is not None:
        raise SpecError(f"structure constants invalid: {bad}")
    return L
