"""Weighted l1 seminorms p_R = sum_n n!^R p^n and the continuity estimates.

Every check takes explicit sample pairs of monomials (sorted index tuples)
and returns a :class:`Report`.  Exact Fraction arithmetic is used when R is
an integer and all constants are rational; otherwise values are floats and
inequalities carry a relative slack of 1e-9.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from numbers import Real
from typing import Iterable, Sequence

from .exact_arith import as_rational, bernoulli_star
from .gutt_star import star_pbw
from .hopf import TensorSquareElement
from .lie_algebra import LieAlgebra, heisenberg, nilpotency_index
from .sym_algebra import SymElement

__all__ = [
    "BasisSeminorm",
    "Report",
    "GrowthTable",
    "REL_TOL",
    "factorial_pow",
    "p_r",
    "p_r_tensor",
    "asymptotic_scale",
    "monomial_pairs",
    "check_continuity_r1",
    "cn_estimate_check",
    "heisenberg_counterexample",
    "so3_counterexample",
    "weyl_project",
    "weyl_estimate_check",
    "weyl_projection_check",
    "bimodule_estimate_check",
    "symmetric_product_check",
    "hopf_bound_check",
    "coproduct_factorial_bound",
]

REL_TOL = 1e-9


def _is_int(R) -> bool:
    if isinstance(R, bool):
        return False
    if isinstance(R, int):
        return True
    if isinstance(R, Fraction):
        return R.denominator == 1
    return False


def _exact(*xs) -> bool:
    return all(isinstance(x, (int, Fraction)) for x in xs)


def factorial_pow(n: int, R):
    """n!^R: exact for integer R, else via log-gamma in double precision."""
    if _is_int(R):
        r = int(R)
        if r >= 0:
            return Fraction(math.factorial(n) ** r)
        return Fraction(1, math.factorial(n) ** (-r))
    return math.exp(float(R) * math.lgamma(n + 1))


@dataclass(frozen=True)
class BasisSeminorm:
    """p(sum v_i e_i) = sum |v_i| w_i with positive weights (exact or float)."""

    weights: tuple

    def __post_init__(self):
        if any(not w > 0 for w in self.weights):
            raise ValueError("weights must be positive")

    @classmethod
    def unit(cls, dim: int) -> "BasisSeminorm":
        return cls(tuple(Fraction(1) for _ in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.weights)

    def scaled(self, c) -> "BasisSeminorm":
        return BasisSeminorm(tuple(c * w for w in self.weights))

    def mono_weight(self, m: Sequence[int]):
        out = Fraction(1)
        for i in m:
            out = out * self.weights[i]
        return out

    @property
    def exact(self) -> bool:
        return _exact(*self.weights)


def p_r(x: SymElement, p: BasisSeminorm, R, z_abs=1):
    """sum over monomials of (sum_j |a_j| z_abs^j) (deg)!^R prod w_i."""
    if R < 0:
        raise ValueError("negative R is out of scope")
    if p.dim != x.dim:
        raise ValueError("seminorm and element dimensions differ")
    total = Fraction(0) if (_is_int(R) and p.exact and _exact(z_abs)) else 0.0
    for (m, j), c in x.terms.items():
        total += abs(c) * z_abs**j * factorial_pow(len(m), R) * p.mono_weight(m)
    return total


def p_r_tensor(t: TensorSquareElement, p: BasisSeminorm, R, z_abs=1):
    """l1 cross evaluation: |c| deg1!^R deg2!^R w(m1) w(m2)."""
    total = Fraction(0) if (_is_int(R) and p.exact and _exact(z_abs)) else 0.0
    for (a, b, j), c in t.terms.items():
        total += (
            abs(c) * z_abs**j * factorial_pow(len(a), R) * factorial_pow(len(b), R)
            * p.mono_weight(a) * p.mono_weight(b)
        )
    return total


def asymptotic_scale(L: LieAlgebra, p: BasisSeminorm) -> Fraction:
    """s = max(1, max_{ij} sum_k |c_ij^k| w_k / (w_i w_j)).

    With q = s p one has q([x, y]) <= q(x) q(y), so q serves as the
    asymptotic estimate of p for every bracket length.
    """
    return max(Fraction(1), L.structure_bound(p.weights))


# ------------------------------------------------------------------ reports

def fmt(v) -> str:
    if isinstance(v, Fraction) and v.denominator == 1 and abs(v) < 10**12:
        return str(v.numerator)
    try:
        return f"{float(v):.12g}"
    except OverflowError:
        return f"{v:.12e}" if not isinstance(v, Fraction) else f"~10^{len(str(v.numerator)) - len(str(v.denominator))}"


def leq(lhs, rhs) -> bool:
    if _exact(lhs, rhs):
        return lhs <= rhs
    return float(lhs) <= float(rhs) * (1 + REL_TOL)


@dataclass
class Entry:
    check: str
    sample: str
    lhs: object
    rhs: object
    passed: bool
    asserted: bool = True

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} {self.check} {self.sample} lhs={fmt(self.lhs)} rhs={fmt(self.rhs)}"


@dataclass
class Report:
    entries: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    def add(self, check: str, sample: str, lhs, rhs, asserted: bool = True, passed: bool | None = None) -> Entry:
        ok = leq(lhs, rhs) if passed is None else passed
        e = Entry(check, sample, lhs, rhs, ok, asserted)
        self.entries.append(e)
        return e

    def extend(self, other: "Report") -> "Report":
        self.entries.extend(other.entries)
        self.info.update(other.info)
        return self

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries if e.asserted)

    def failures(self) -> list:
        return [e for e in self.entries if e.asserted and not e.passed]

    def violations(self) -> list:
        """Failed entries including diagnostic ones."""
        return [e for e in self.entries if not e.passed]

    def max_ratio(self) -> float:
        best = 0.0
        for e in self.entries:
            try:
                r = float(e.lhs) / float(e.rhs) if e.rhs else math.inf
            except OverflowError:
                r = float(Fraction(e.lhs) / Fraction(e.rhs))
            best = max(best, r)
        return best

    def lines(self) -> list[str]:
        return [e.line() for e in sorted(self.entries, key=lambda e: (e.check, e.sample))]


# ------------------------------------------------------------------ samples

def _monos(dim: int, deg: int) -> list[tuple]:
    return [tuple(c) for c in combinations_with_replacement(range(dim), deg)]


def monomial_pairs(dim: int, max_total: int, min_each: int = 0) -> list[tuple[tuple, tuple]]:
    """All pairs of basis monomials with deg x + deg y <= max_total."""
    out = []
    for tot in range(max_total + 1):
        for k in range(min_each, tot - min_each + 1):
            for a in _monos(dim, k):
                for b in _monos(dim, tot - k):
                    out.append((a, b))
    return out


def _label(L: LieAlgebra, m: tuple) -> str:
    if not m:
        return "1"
    return "".join(L.labels[i] for i in m)


def _star_formal(L: LieAlgebra, a: tuple, b: tuple) -> SymElement:
    memo = L._cache.setdefault("star_formal", {})
    hit = memo.get((a, b))
    if hit is None:
        hit = star_pbw(L, SymElement.monomial(L.dim, a), SymElement.monomial(L.dim, b))
        memo[(a, b)] = hit
    return hit


def _mono_norm(m: tuple, p: BasisSeminorm, R):
    return factorial_pow(len(m), R) * p.mono_weight(m)


# ------------------------------------------------------------------ checks

def check_continuity_r1(
    L: LieAlgebra, p: BasisSeminorm, z0, R, pairs: Iterable[tuple[tuple, tuple]]
) -> Report:
    """p_R(x * y) <= (cq)_R(x) (cq)_R(y), c = 16(|z0|+1), q = s p, R >= 1."""
    if R < 1:
        raise ValueError("this estimate needs R >= 1")
    z_abs = abs(as_rational(z0))
    s = asymptotic_scale(L, p)
    cq = p.scaled(16 * (z_abs + 1) * s)
    rep = Report(info={"scale": s, "c": 16 * (z_abs + 1)})
    for a, b in pairs:
        lhs = p_r(_star_formal(L, a, b), p, R, z_abs)
        rhs = _mono_norm(a, cq, R) * _mono_norm(b, cq, R)
        rep.add(f"continuity_R={R}_z={z0}", f"{_label(L, a)}|{_label(L, b)}", lhs, rhs)
    return rep


def cn_estimate_check(
    L: LieAlgebra,
    p: BasisSeminorm,
    R,
    n: int | None,
    pairs: Iterable[tuple[tuple, tuple]],
    nilpotent: bool = False,
) -> Report:
    """Bound on p_R(C_n(x, y)) for each sampled pair (all n if n is None).

    General: n!^{1-R} / (2 8^n) (16q)_R(x) (16q)_R(y).
    Nilpotent (index N): 1/(2 8^n) (32e q)_{R+eps}(x) (32e q)_{R+eps}(y)
    with eps = (N-1)/N (1-R).
    """
    s = asymptotic_scale(L, p)
    rep = Report(info={"scale": s})
    if nilpotent:
        N = nilpotency_index(L, 12)
        if N is None:
            raise ValueError("algebra not detected nilpotent")
        eps = Fraction(N - 1, N) * (1 - as_rational(R) if not isinstance(R, float) else 1 - Fraction(R))
        R_rhs = R + eps if not isinstance(R, float) else float(R) + float(eps)
        q = p.scaled(32 * math.e * s)
        rep.info.update(N=N, eps=eps)
    else:
        q = p.scaled(16 * s)
    for a, b in pairs:
        prod = _star_formal(L, a, b)
        ns = range(len(a) + len(b)) if n is None else [n]
        for nn in ns:
            lhs = p_r(prod.z_part(nn), p, R)
            if nilpotent:
                rhs = _mono_norm(a, q, R_rhs) * _mono_norm(b, q, R_rhs) / (2 * 8**nn)
            else:
                rhs = factorial_pow(nn, 1 - R) / (2 * 8**nn) * _mono_norm(a, q, R) * _mono_norm(b, q, R)
            tag = "cn_nilpotent" if nilpotent else "cn"
            rep.add(f"{tag}_R={R}_n={nn}", f"{_label(L, a)}|{_label(L, b)}", lhs, rhs)
    return rep


def bimodule_estimate_check(
    L: LieAlgebra, p: BasisSeminorm, R, pairs: Iterable[tuple[tuple, tuple]], z0=1
) -> Report:
    """Both bimodule estimates with c = (N e)^{N(1-R)}, checked at z = z0."""
    if not 0 <= R < 1:
        raise ValueError("need 0 <= R < 1")
    N = nilpotency_index(L, 12)
    if N is None:
        raise ValueError("algebra not detected nilpotent")
    Rf = float(R)
    c = (N * math.e) ** (N * (1 - Rf))
    R_hi = Rf + N * (1 - Rf)
    if R_hi == int(R_hi):
        R_hi = int(R_hi)
    s = asymptotic_scale(L, p)
    q16 = p.scaled(16 * s)
    q16c = p.scaled(16 * c * s)
    z_abs = abs(as_rational(z0))
    rep = Report(info={"N": N, "c": c, "R_hi": R_hi})
    for a, b in pairs:
        lhs = p_r(_star_formal(L, a, b), p, R, z_abs)
        rhs1 = _mono_norm(a, q16, R) * _mono_norm(b, q16c, R_hi)
        rhs2 = _mono_norm(a, q16c, R_hi) * _mono_norm(b, q16, R)
        sample = f"{_label(L, a)}|{_label(L, b)}"
        rep.add(f"bimodule_right_R={R}", sample, lhs, rhs1)
        rep.add(f"bimodule_left_R={R}", sample, lhs, rhs2)
    return rep


def symmetric_product_check(p: BasisSeminorm, R, pairs) -> Report:
    """p_R(xy) <= (2^R p)_R(x) (2^R p)_R(y) for the commutative product."""
    rep = Report()
    two_r = Fraction(2) ** int(R) if _is_int(R) else 2.0 ** float(R)
    q = p.scaled(two_r)
    for a, b in pairs:
        lhs = _mono_norm(tuple(sorted(a + b)), p, R)
        rhs = _mono_norm(a, q, R) * _mono_norm(b, q, R)
        rep.add(f"sym_product_R={R}", f"{a}|{b}", lhs, rhs)
    return rep


def coproduct_factorial_bound(n: int, R):
    """(lhs, rhs) of sum_I |I|!^R (n-|I|)!^R <= 2^n n!^R."""
    lhs = sum(math.comb(n, i) * factorial_pow(i, R) * factorial_pow(n - i, R) for i in range(n + 1))
    return lhs, 2**n * factorial_pow(n, R)


def hopf_bound_check(x: SymElement, p: BasisSeminorm, R, label: str = "x") -> Report:
    """p_R(S x) <= p_R(x) and (p_R (x) p_R)(Delta x) <= (2p)_R(x)."""
    from .hopf import antipode, coproduct

    rep = Report()
    rep.add(f"antipode_R={R}", label, p_r(antipode(x), p, R), p_r(x, p, R))
    rep.add(f"coproduct_R={R}", label, p_r_tensor(coproduct(x), p, R), p_r(x, p.scaled(2), R))
    return rep


# ------------------------------------------------------------ counterexamples

@dataclass
class GrowthTable:
    rows: list  # (k, value, bound)
    report: Report = field(default_factory=Report)

    def to_csv(self) -> str:
        out = ["k,value,bound"]
        for k, v, b in self.rows:
            out.append(f"{k},{float(v):.12g},{float(b):.12g}")
        return "\n".join(out) + "\n"


def _log_abs(c: Fraction) -> float:
    """log |c| for possibly huge rationals."""
    c = abs(c)
    return math.log(c.numerator) - math.log(c.denominator)


def _growth_checks(
    table: GrowthTable, name: str, tail: int = 5, bases=(2, 10, 100), asserted_base: int = 100
) -> None:
    """Lower-bound rows plus value/c^k monotonicity on the tail; only c = asserted_base gates."""
    rows = table.rows
    for k, v, b in rows:
        table.report.add(f"{name}_lower_bound", f"k={k}", b, v)
    last = rows[-tail:]
    if len(last) >= 2:
        for c in bases:
            logs = [math.log(v) - k * math.log(c) for k, v, _ in last]
            mono = all(x < y for x, y in zip(logs, logs[1:]))
            e = table.report.add(
                f"{name}_growth_logratio_c={c}",
                f"k={last[0][0]}..{last[-1][0]}",
                math.exp(logs[0]) if logs[0] < 700 else math.inf,
                math.exp(logs[-1]) if logs[-1] < 700 else math.inf,
                asserted=c == asserted_base,
                passed=mono,
            )
            e.lhs, e.rhs = logs[0], logs[-1]


def heisenberg_counterexample(R: float, eps: float, kmax: int) -> GrowthTable:
    """n_R(a_k * b_k) at z = 1 with a_k = P^k/k!^{R+eps}, b_k = Q^k/k!^{R+eps}.

    The product is taken from the PBW construction.  Value column vs the
    lower bound k!^{1-R-2eps}; growth of value/c^k is checked over the last
    five rows for c in {2, 10, 100}.
    """
    if not 0 <= R < 1 or eps <= 0 or not 2 * eps < 1 - R:
        raise ValueError("need 0 <= R < 1, eps > 0 and 2 eps < 1 - R")
    if not 1 <= kmax <= 30:
        raise ValueError("kmax must be in 1..30")
    H = heisenberg(1)
    rows = []
    for k in range(1, kmax + 1):
        prod = star_pbw(H, SymElement.monomial(3, (0,) * k), SymElement.monomial(3, (1,) * k))
        log_scale = -2 * (R + eps) * math.lgamma(k + 1)
        value = 0.0
        for (m, j), c in prod.terms.items():
            value += math.exp(_log_abs(c) + R * math.lgamma(len(m) + 1) + log_scale)
        bound = math.exp((1 - R - 2 * eps) * math.lgamma(k + 1))
        rows.append((k, value, bound))
    table = GrowthTable(rows)
    _growth_checks(table, "heisenberg")
    return table


def so3_counterexample(R: float, eps: float, kmax: int) -> GrowthTable:
    """n_R(a_k * e2) at z = 1 with a_k = e1^k/k!^{R+eps}; bound |B*_k|/k!^{R+eps}."""
    if R < 0 or eps <= 0 or not R + eps < 1:
        raise ValueError("need R >= 0, eps > 0 and R + eps < 1")
    if not 1 <= kmax <= 30:
        raise ValueError("kmax must be in 1..30")
    from .lie_algebra import so3

    L = so3()
    rows = []
    e2 = SymElement.monomial(3, (1,))
    for k in range(1, kmax + 1):
        prod = star_pbw(L, SymElement.monomial(3, (0,) * k), e2)
        log_scale = -(R + eps) * math.lgamma(k + 1)
        value = 0.0
        for (m, j), c in prod.terms.items():
            value += math.exp(_log_abs(c) + R * math.lgamma(len(m) + 1) + log_scale)
        b = bernoulli_star(k)
        bound = math.exp(_log_abs(b) + log_scale) if b else 0.0
        rows.append((k, value, bound))
    table = GrowthTable(rows)
    for k, v, b in rows:
        table.report.add("so3_lower_bound", f"k={k}", b, v)
    return table


# ------------------------------------------------------------------- Weyl

def _is_heisenberg1(L: LieAlgebra) -> bool:
    return L == heisenberg(1)


def weyl_project(x: SymElement, h, L: LieAlgebra | None = None) -> SymElement:
    """Substitute E -> h; the result lives on the two generators P, Q."""
    if L is not None and not _is_heisenberg1(L):
        raise ValueError("weyl_project needs the ambient algebra heisenberg(1)")
    if x.dim != 3:
        raise ValueError("weyl_project needs elements of heisenberg(1)")
    h = as_rational(h)
    out: dict = {}
    for (m, j), c in x.terms.items():
        e = m.count(2)
        key = (tuple(i for i in m if i != 2), j)
        out[key] = out.get(key, 0) + c * h**e
    return SymElement(2, out)


def weyl_estimate_check(h, z0, R, pairs: Iterable[tuple[tuple, tuple]], asserted: bool = True) -> Report:
    """p_R(pi(x * y)) <= (c p)_R(x) (c p)_R(y), c = 8(|z0|+1)(|h|+1), unit weights."""
    H = heisenberg(1)
    h = as_rational(h)
    z_abs = abs(as_rational(z0))
    c = 8 * (z_abs + 1) * (abs(h) + 1)
    p3 = BasisSeminorm.unit(3)
    p2 = BasisSeminorm.unit(2)
    cp = p3.scaled(c)
    rep = Report(info={"c": c})
    for a, b in pairs:
        lhs = p_r(weyl_project(_star_formal(H, a, b), h), p2, R, z_abs)
        rhs = _mono_norm(a, cp, R) * _mono_norm(b, cp, R)
        rep.add(f"weyl_product_R={R}", f"{_label(H, a)}|{_label(H, b)}", lhs, rhs, asserted=asserted)
    return rep


def weyl_projection_check(h, R, monos: Iterable[tuple]) -> Report:
    """p_R(pi(x)) <= ((|h|+1) p)_R(x) on basis monomials."""
    h = as_rational(h)
    p3 = BasisSeminorm.unit(3)
    p2 = BasisSeminorm.unit(2)
    q = p3.scaled(abs(h) + 1)
    rep = Report()
    H = heisenberg(1)
    for m in monos:
        x = SymElement.monomial(3, m)
        rep.add(f"weyl_projection_R={R}", _label(H, m), p_r(weyl_project(x, h), p2, R), _mono_norm(m, q, R))
    return rep
