"""Bracket words over {X, Y} and the BCH series in three forms.

A word ``"XYY"`` inside a :class:`BracketSeries` stands for the left-nested
bracket ``[[X, Y], Y]``.  Series are never reduced modulo antisymmetry or
Jacobi; two Lie series are compared through their associative expansions.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Iterable, Mapping, Sequence

from .exact_arith import bernoulli_star, goldberg_word
from .lie_algebra import DimensionError, LieAlgebra, Vector, ad_power, bracket

__all__ = [
    "NCPoly",
    "BracketSeries",
    "expand_bracket",
    "expand_series",
    "bch_goldberg",
    "bch_dynkin",
    "bch_associative",
    "bch_part",
    "bch_tilde",
    "bch_first_order",
    "eval_bracket_word",
]

NCPoly = dict  # {word (str over "XY"): Fraction}


def _nc_clean(p: Mapping) -> NCPoly:
    return {w: c for w, c in p.items() if c}


def nc_mul(a: Mapping, b: Mapping, max_len: int | None = None) -> NCPoly:
    out: dict = defaultdict(Fraction)
    for wa, ca in a.items():
        for wb, cb in b.items():
            if max_len is None or len(wa) + len(wb) <= max_len:
                out[wa + wb] += ca * cb
    return _nc_clean(out)


def nc_add(a: Mapping, b: Mapping, scale=1) -> NCPoly:
    out = dict(a)
    for w, c in b.items():
        out[w] = out.get(w, 0) + scale * c
    return _nc_clean(out)


class BracketSeries:
    """Linear combination of left-nested bracket words; insertion ordered."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple[Fraction, str]] | Mapping[str, Fraction] = ()):
        acc: dict[str, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else ((w, c) for c, w in terms)
        for w, c in items:
            if not w or set(w) - {"X", "Y"}:
                raise ValueError(f"bad bracket word {w!r}")
            acc[w] = acc.get(w, Fraction(0)) + Fraction(c)
        self.terms = {w: c for w, c in acc.items() if c}

    def __iter__(self):
        return iter((c, w) for w, c in self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, BracketSeries) and self.terms == other.terms

    def restrict(self, a: int, b: int) -> "BracketSeries":
        return BracketSeries(
            {w: c for w, c in self.terms.items() if w.count("X") == a and w.count("Y") == b}
        )

    def degree_part(self, n: int) -> "BracketSeries":
        return BracketSeries({w: c for w, c in self.terms.items() if len(w) == n})

    def expand(self) -> NCPoly:
        return expand_series(self)

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})[{_nest(w)}]" for w, c in self.terms.items())

    def __repr__(self) -> str:
        return f"BracketSeries({self.render()})"


def _nest(w: str) -> str:
    out = w[0]
    for ch in w[1:]:
        out = f"[{out},{ch}]" if len(out) > 1 else f"{out},{ch}"
    return out if len(w) > 1 else w


@lru_cache(maxsize=None)
def _expand_word(w: str) -> tuple:
    if len(w) == 1:
        return ((w, Fraction(1)),)
    inner = dict(_expand_word(w[:-1]))
    last = w[-1]
    out: dict = defaultdict(Fraction)
    for u, c in inner.items():
        out[u + last] += c
        out[last + u] -= c
    return tuple((u, c) for u, c in out.items() if c)


def expand_bracket(term: tuple[Fraction, str]) -> NCPoly:
    """Expand c * [w] into the free associative algebra."""
    c, w = term
    if not w:
        raise ValueError("empty bracket word")
    c = Fraction(c)
    return _nc_clean({u: c * v for u, v in _expand_word(w)})


def expand_series(s: BracketSeries) -> NCPoly:
    out: dict = defaultdict(Fraction)
    for c, w in s:
        for u, v in expand_bracket((c, w)).items():
            out[u] += v
    return _nc_clean(out)


# ---------------------------------------------------------------- BCH forms

@lru_cache(maxsize=None)
def _goldberg_layer(n: int) -> tuple:
    out = []
    for letters in product("XY", repeat=n):
        w = "".join(letters)
        g = goldberg_word(w)
        if g:
            out.append((w, g / n))
    return tuple(out)


def bch_goldberg(order: int) -> BracketSeries:
    """sum_{|w| <= order} (g_w / |w|) [w]."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return BracketSeries({w: c for n in range(1, order + 1) for w, c in _goldberg_layer(n)})


def _compositions(total: int) -> Iterable[tuple[int, int]]:
    for n in range(total + 1):
        yield n, total - n


def bch_dynkin(order: int) -> BracketSeries:
    """Dynkin's closed form truncated at total letter count <= order.

    sum_k (-1)^{k-1}/k sum over k pairs (n_i, m_i) != (0, 0) of
    [X^{n_1} Y^{m_1} ... X^{n_k} Y^{m_k}] / (sum(n_i + m_i) * prod n_i! m_i!).
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    acc: dict = defaultdict(Fraction)

    def rec(k_left, budget, word, denom, k):
        if k_left == 0:
            if word:
                acc[word] += Fraction((-1) ** (k - 1), k * len(word) * denom)
            return
        for size in range(1, budget - (k_left - 1) + 1):
            for n, m in _compositions(size):
                rec(
                    k_left - 1,
                    budget - size,
                    word + "X" * n + "Y" * m,
                    denom * factorial(n) * factorial(m),
                    k,
                )

    for k in range(1, order + 1):
        rec(k, order, "", 1, k)
    return BracketSeries(acc)


def bch_associative(order: int) -> NCPoly:
    """log(exp X exp Y) by composing truncated series in the free algebra."""
    if order < 1:
        raise ValueError("order must be >= 1")
    exp_x = {"X" * n: Fraction(1, factorial(n)) for n in range(order + 1)}
    exp_y = {"Y" * n: Fraction(1, factorial(n)) for n in range(order + 1)}
    a = nc_mul(exp_x, exp_y, order)
    a.pop("", None)
    out: NCPoly = {}
    power: NCPoly = {"": Fraction(1)}
    for k in range(1, order + 1):
        power = nc_mul(power, a, order)
        out = nc_add(out, power, Fraction((-1) ** (k - 1), k))
    return out


def bch_part(a: int, b: int) -> BracketSeries:
    """Component of the Goldberg-Thompson series with a X's and b Y's."""
    if a < 0 or b < 0 or a + b < 1:
        raise ValueError("need a, b >= 0 with a + b >= 1")
    return _bch_part(a, b)


@lru_cache(maxsize=None)
def _bch_part(a: int, b: int) -> BracketSeries:
    n = a + b
    return BracketSeries(
        {w: c for w, c in _goldberg_layer(n) if w.count("X") == a}
    )


# ---------------------------------------------------------------- evaluation

def eval_bracket_word(L: LieAlgebra, w: str, xs: Sequence[Vector], ys: Sequence[Vector]) -> Vector:
    """Left-nested bracket with the i-th X replaced by xs[i], j-th Y by ys[j]."""
    ix = iy = 0
    acc = None
    for ch in w:
        if ch == "X":
            v = xs[ix]
            ix += 1
        else:
            v = ys[iy]
            iy += 1
        acc = v if acc is None else bracket(L, acc, v)
        if acc is not v and not any(acc):
            return L.zero()
    return acc


def bch_tilde(a: int, b: int, xs: Sequence[Vector], ys: Sequence[Vector], L: LieAlgebra) -> Vector:
    """BCH_{a,b} with occurrences replaced left to right by xs and ys."""
    if len(xs) != a or len(ys) != b:
        raise ValueError(f"need {a} xs and {b} ys, got {len(xs)} and {len(ys)}")
    for v in list(xs) + list(ys):
        if len(v) != L.dim:
            raise DimensionError(f"vector of length {len(v)} in algebra of dim {L.dim}")
    out = [Fraction(0)] * L.dim
    for c, w in bch_part(a, b):
        v = eval_bracket_word(L, w, xs, ys)
        for k, x in enumerate(v):
            if x:
                out[k] += c * x
    return tuple(out)


@dataclass(frozen=True)
class FirstOrderCheck:
    bernoulli_side: Vector
    bch_side: Vector

    @property
    def agree(self) -> bool:
        return self.bernoulli_side == self.bch_side


def bch_first_order(L: LieAlgebra, xi: Vector, eta: Vector, order: int) -> FirstOrderCheck:
    """Compare sum_n B*_n/n! ad_xi^n(eta) with sum_n BCH~_{n,1}(xi..xi; eta)."""
    if not 1 <= order <= 10:
        raise ValueError("order must be in 1..10")
    lhs = [Fraction(0)] * L.dim
    rhs = [Fraction(0)] * L.dim
    for n in range(order + 1):
        term = ad_power(L, xi, n, eta)
        f = bernoulli_star(n) / factorial(n)
        for k, x in enumerate(term):
            lhs[k] += f * x
        for k, x in enumerate(bch_tilde(n, 1, [xi] * n, [eta], L)):
            rhs[k] += x
    return FirstOrderCheck(tuple(lhs), tuple(rhs))
