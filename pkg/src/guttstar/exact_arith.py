"""Exact rational and polynomial arithmetic plus Bernoulli/Goldberg combinatorics.

Scalars are :class:`fractions.Fraction` throughout.  Bernoulli numbers use the
convention ``B_1 = -1/2``; the starred variant is ``B*_n = (-1)^n B_n`` so that
``B*_1 = +1/2``.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from itertools import groupby, product
from math import comb, factorial
from typing import Iterable, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "UniPoly",
    "as_rational",
    "bernoulli",
    "bernoulli_star",
    "goldberg_poly",
    "integrate_unit",
    "goldberg_coeff",
    "word_runs",
    "goldberg_word",
    "thompson_sum",
    "kks_kernel",
    "carlitz_check",
]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused so binary rounding never leaks into exact data.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class UniPoly:
    """Dense univariate polynomial with Fraction coefficients.

    ``coeffs[i]`` is the coefficient of ``x**i``; trailing zeros are trimmed so
    the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, power: int, c=1) -> "UniPoly":
        return cls([0] * power + [c])

    @classmethod
    def from_dict(cls, d: dict) -> "UniPoly":
        if not d:
            return cls()
        top = max(d)
        cs = [ZERO] * (top + 1)
        for k, v in d.items():
            cs[k] += v
        return cls(cs)

    def to_dict(self) -> dict[int, Fraction]:
        return {i: c for i, c in enumerate(self.coeffs) if c}

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly.const(other)

    def __add__(self, other) -> "UniPoly":
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly(self[i] + o[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = as_rational(other)
            return UniPoly(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        out = UniPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        acc = ZERO if not isinstance(x, float) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def render(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = str(abs(c)) + ("*" + mono if mono else "")
            parts.append(("-" if c < 0 else "+", body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


# ---------------------------------------------------------------- Bernoulli

_bern_lock = threading.Lock()
_bern_table: list[Fraction] = [ONE]


def bernoulli(n: int) -> Fraction:
    """B_n from the recursion B_n = -1/(n+1) * sum_{k<n} C(n+1,k) B_k (B_1 = -1/2)."""
    if n < 0:
        raise ValueError("bernoulli index must be >= 0")
    table = _bern_table
    if n < len(table):
        return table[n]
    with _bern_lock:
        while len(table) <= n:
            m = len(table)
            s = sum((comb(m + 1, k) * table[k] for k in range(m)), ZERO)
            table.append(-s / (m + 1))
        return table[n]


def bernoulli_star(n: int) -> Fraction:
    """B*_n = (-1)^n B_n, so B*_1 = 1/2."""
    b = bernoulli(n)
    return -b if n % 2 else b


# ----------------------------------------------------------------- Goldberg

@lru_cache(maxsize=None)
def goldberg_poly(s: int) -> UniPoly:
    """G_1 = 1 and G_s = (1/s) d/dt [t(t-1) G_{s-1}]."""
    if s < 1:
        raise ValueError("Goldberg polynomials are indexed from 1")
    if s == 1:
        return UniPoly.const(1)
    t2_t = UniPoly((0, -1, 1))
    return (t2_t * goldberg_poly(s - 1)).derivative() * Fraction(1, s)


def integrate_unit(p: UniPoly) -> Fraction:
    """Exact integral of p over [0, 1]."""
    return sum((c / (i + 1) for i, c in enumerate(p.coeffs)), ZERO)


_T = UniPoly((0, 1))
_T_MINUS_1 = UniPoly((-1, 1))


@lru_cache(maxsize=None)
def _c_xi(runs: tuple[int, ...]) -> Fraction:
    m = len(runs)
    integrand = _T ** (m // 2) * _T_MINUS_1 ** ((m - 1) // 2)
    for s in runs:
        integrand = integrand * goldberg_poly(s)
    return integrate_unit(integrand)


def goldberg_coeff(first_letter: str, runs: Sequence[int]) -> Fraction:
    """Goldberg coefficient of a two-letter word given by its run lengths.

    ``first_letter`` is ``"xi"`` (or ``"X"``) or ``"eta"`` (or ``"Y"``).
    """
    runs = tuple(int(s) for s in runs)
    if not runs or min(runs) < 1:
        raise ValueError("runs must be a nonempty list of positive integers")
    c = _c_xi(runs)
    if first_letter in ("xi", "X", "x"):
        return c
    if first_letter in ("eta", "Y", "y"):
        return c if sum(runs) % 2 else -c
    raise ValueError(f"unknown first letter {first_letter!r}")


def word_runs(word: str) -> tuple[str, tuple[int, ...]]:
    """Split an X/Y word into its first letter and run-length encoding."""
    if not word:
        raise ValueError("empty word")
    return word[0], tuple(len(list(g)) for _, g in groupby(word))


def goldberg_word(word: str) -> Fraction:
    first, runs = word_runs(word)
    return goldberg_coeff(first, runs)


def thompson_sum(n: int) -> Fraction:
    """Sum of |g_w| over all 2^n words of length n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    total = ZERO
    for letters in product("XY", repeat=n):
        total += abs(goldberg_word("".join(letters)))
    return total


# ------------------------------------------------------ Bernoulli identities

def kks_kernel(k: int, s: int) -> Fraction:
    """The K(k, s) kernel; equals 1 for s = 0 and 0 otherwise."""
    if not 0 <= s <= k:
        raise ValueError("need 0 <= s <= k")
    total = ZERO
    for n in range(k + 1):
        inner = 0
        for j in range(n + 1):
            # number of l in [0, k-n] with l + j = s
            if 0 <= s - j <= k - n:
                inner += (-1) ** j * comb(n, j)
        if inner:
            total += comb(k + 1, n) * bernoulli_star(n) * inner
    return total / (k + 1)


def carlitz_check(k: int, m: int) -> bool:
    lhs = (-1) ** k * sum((comb(k, j) * bernoulli(m + j) for j in range(k + 1)), ZERO)
    rhs = (-1) ** m * sum((comb(m, i) * bernoulli(k + i) for i in range(m + 1)), ZERO)
    return lhs == rhs


def beta_unit(a: int, b: int) -> Fraction:
    """a! b! / (a+b+1)!, the unsigned beta integral."""
    return Fraction(factorial(a) * factorial(b), factorial(a + b + 1))
