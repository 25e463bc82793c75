import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import HEIS, SO3, sym_elements
from guttstar.lie_algebra import abelian
from guttstar.seminorm import (
    BasisSeminorm,
    Report,
    asymptotic_scale,
    bimodule_estimate_check,
    check_continuity_r1,
    cn_estimate_check,
    factorial_pow,
    heisenberg_counterexample,
    monomial_pairs,
    p_r,
    so3_counterexample,
    symmetric_product_check,
    weyl_estimate_check,
    weyl_project,
    weyl_projection_check,
)
from guttstar.sym_algebra import SymElement

F = Fraction
UNIT = BasisSeminorm.unit(3)


def mono(*idx, c=1, z=0):
    return SymElement.monomial(3, idx, c, z)


# --------------------------------------------------------------- p_R basics

def test_factorial_pow():
    assert factorial_pow(4, 2) == 576
    assert factorial_pow(3, -1) == F(1, 6)
    assert factorial_pow(0, 0.5) == 1.0
    assert math.isclose(factorial_pow(5, 0.5), math.sqrt(120), rel_tol=1e-12)


def test_p_r_examples():
    x = mono(0, 1, c=-3) + mono(2, c=F(1, 2), z=1)
    assert p_r(x, UNIT, 0) == F(7, 2)
    assert p_r(x, UNIT, 1) == 6 + F(1, 2)
    assert p_r(x, UNIT, 1, z_abs=4) == 6 + 2
    assert p_r(x, BasisSeminorm((F(2), F(1), F(3))), 1) == 12 + F(3, 2)
    assert isinstance(p_r(x, UNIT, 0.5), float)


def test_p_r_of_normalized_powers():
    # a_k = P^k / k!^{R+eps} has n_R(a_k) = k!^{-eps}
    R, eps = 0.5, 0.1
    for k in range(1, 12):
        a = mono(*[0] * k, c=F(1))
        val = p_r(a, UNIT, R) / math.exp((R + eps) * math.lgamma(k + 1))
        assert math.isclose(val, math.exp(-eps * math.lgamma(k + 1)), rel_tol=1e-12)


def test_p_r_domain():
    with pytest.raises(ValueError):
        p_r(mono(0), UNIT, -1)
    with pytest.raises(ValueError):
        p_r(SymElement.unit(2), UNIT, 1)
    with pytest.raises(ValueError):
        BasisSeminorm((F(1), F(0)))


@given(sym_elements(max_deg=4), sym_elements(max_deg=4), st.sampled_from([0, 1, 2]))
def test_triangle_inequality(x, y, R):
    assert p_r(x + y, UNIT, R) <= p_r(x, UNIT, R) + p_r(y, UNIT, R)


@given(sym_elements(max_deg=4), st.fractions(-5, 5), st.sampled_from([0, 1, 2]))
def test_homogeneity(x, lam, R):
    assert p_r(x.scale(lam), UNIT, R) == abs(lam) * p_r(x, UNIT, R)


@given(sym_elements(max_deg=5))
def test_monotone_in_r(x):
    assert p_r(x, UNIT, 0) <= p_r(x, UNIT, 1) <= p_r(x, UNIT, 2)


@given(sym_elements(max_deg=4))
def test_scaling_weights_is_monotone(x):
    assert p_r(x, UNIT, 1) <= p_r(x, UNIT.scaled(2), 1)


def test_asymptotic_scale():
    assert asymptotic_scale(HEIS, UNIT) == 1
    assert asymptotic_scale(SO3, UNIT) == 1
    assert asymptotic_scale(abelian(3), UNIT) == 1
    assert asymptotic_scale(HEIS, BasisSeminorm((F(1, 2), F(1, 2), F(1)))) == 4


@pytest.mark.parametrize("R", [0, F(1, 2), 1, 2])
def test_symmetric_product_bound(R):
    assert symmetric_product_check(UNIT, R, monomial_pairs(3, 6)).ok


# ------------------------------------------------------------- reports

def test_report_helpers():
    rep = Report()
    rep.add("a", "s1", F(1), F(2))
    rep.add("a", "s2", 3.0, 2.0, asserted=False)
    rep.add("b", "s", 1.0 + 1e-12, 1.0)
    assert rep.ok
    assert len(rep.violations()) == 1 and rep.failures() == []
    assert rep.max_ratio() == 1.5
    assert rep.lines()[0] == "PASS a s1 lhs=1 rhs=2"


def test_monomial_pairs_counts():
    assert len(monomial_pairs(3, 0)) == 1
    assert len(monomial_pairs(3, 1)) == 7
    assert all(len(a) + len(b) <= 4 for a, b in monomial_pairs(3, 4))
    assert all(a and b for a, b in monomial_pairs(3, 4, min_each=1))


# ------------------------------------------------------------- estimates

@pytest.mark.parametrize("z0", [0, 1, 3])
@pytest.mark.parametrize("R", [1, F(3, 2), 2])
def test_continuity(algebra, z0, R):
    rep = check_continuity_r1(algebra, UNIT, z0, R, monomial_pairs(3, 6))
    assert rep.ok, rep.failures()[:3]
    assert rep.info["c"] == 16 * (z0 + 1)


def test_continuity_domain():
    with pytest.raises(ValueError):
        check_continuity_r1(HEIS, UNIT, 1, F(1, 2), [])


@pytest.mark.parametrize("R", [1, 2])
def test_cn_estimate_general(algebra, R):
    assert cn_estimate_check(algebra, UNIT, R, None, monomial_pairs(3, 6)).ok


@pytest.mark.parametrize("R", [0, F(1, 2)])
def test_cn_estimate_nilpotent(R):
    rep = cn_estimate_check(HEIS, UNIT, R, None, monomial_pairs(3, 6), nilpotent=True)
    assert rep.ok
    assert rep.info["N"] == 2


def test_cn_nilpotent_rejects_so3():
    with pytest.raises(ValueError):
        cn_estimate_check(SO3, UNIT, 0, 1, [], nilpotent=True)


@pytest.mark.parametrize("R", [0, F(1, 2)])
def test_bimodule_estimate(R):
    rep = bimodule_estimate_check(HEIS, UNIT, R, monomial_pairs(3, 6))
    assert rep.ok
    checks = {e.check for e in rep.entries}
    assert checks == {f"bimodule_left_R={R}", f"bimodule_right_R={R}"}


def test_bimodule_domain():
    with pytest.raises(ValueError):
        bimodule_estimate_check(HEIS, UNIT, 1, [])
    with pytest.raises(ValueError):
        bimodule_estimate_check(SO3, UNIT, 0, [])


# -------------------------------------------------------------- Weyl

def test_weyl_project_examples():
    P, Q, E = 0, 1, 2
    assert weyl_project(mono(P, Q, E, E), 3) == SymElement.monomial(2, (0, 1), 9)
    assert weyl_project(mono(E), 0) == SymElement.zero(2)
    assert weyl_project(mono(P, E, c=2, z=1), F(1, 2)) == SymElement.monomial(2, (0,), 1, 1)
    with pytest.raises(ValueError):
        weyl_project(SymElement.unit(2), 1)
    with pytest.raises(ValueError):
        weyl_project(mono(0), 1, SO3)


@pytest.mark.parametrize("h", [0, 1, F(-5, 2)])
@pytest.mark.parametrize("R", [0, F(1, 2), 1, 2])
def test_weyl_projection_bound(h, R):
    from itertools import combinations_with_replacement

    monos = [m for d in range(9) for m in combinations_with_replacement(range(3), d)]
    assert weyl_projection_check(h, R, monos).ok


def test_weyl_product_bound():
    rep = weyl_estimate_check(1, 1, F(1, 2), monomial_pairs(3, 6))
    assert rep.ok
    assert rep.info["c"] == 32


# ------------------------------------------------------- counterexamples

def test_heisenberg_counterexample_table():
    t = heisenberg_counterexample(0.5, 0.1, 12)
    assert [r[0] for r in t.rows] == list(range(1, 13))
    assert all(e.passed for e in t.report.entries if e.check == "heisenberg_lower_bound")
    csv = t.to_csv().splitlines()
    assert csv[0] == "k,value,bound"
    assert len(csv) == 13
    k, v, b = csv[1].split(",")
    assert k == "1" and float(v) >= float(b)


def test_heisenberg_counterexample_first_value():
    # k = 1: P*Q at z = 1 is PQ + E/2, so n_R = 2^R + 1/2, scaled by 1!^{...} = 1
    t = heisenberg_counterexample(0.5, 0.1, 1)
    assert len(t.rows) == 1
    assert math.isclose(t.rows[0][1], 2**0.5 + 0.5, rel_tol=1e-12)
    assert not any("growth" in e.check for e in t.report.entries)


@pytest.mark.parametrize("args", [(1.0, 0.1, 5), (0.5, 0.0, 5), (0.5, 0.3, 5), (0.5, 0.1, 0), (0.5, 0.1, 31)])
def test_heisenberg_counterexample_domain(args):
    with pytest.raises(ValueError):
        heisenberg_counterexample(*args)


def test_so3_counterexample():
    t = so3_counterexample(0.5, 0.1, 16)
    assert t.report.ok
    odd = [b for k, _, b in t.rows if k % 2 and k > 1]
    assert odd and all(b == 0 for b in odd)
    with pytest.raises(ValueError):
        so3_counterexample(0.95, 0.1, 5)
