from fractions import Fraction

import pytest
from hypothesis import given

from conftest import rationals, sym_elements
from guttstar.exact_arith import UniPoly
from guttstar.sym_algebra import SymElement, project, sym_mul

F = Fraction
e = lambda *idx: SymElement.monomial(3, idx)


def test_mul_examples():
    assert sym_mul(e(0), e(1)) == e(0, 1)
    assert (e(0) + e(1)) * e(0) == e(0, 0) + e(0, 1)
    assert SymElement.unit(3) * e(2) == e(2)


def test_project_examples():
    x = e(0, 1) + e(2)
    assert project(x, 1) == e(2)
    assert project(x, 5) == SymElement.zero(3)
    assert sum((project(x, n) for n in range(4)), SymElement.zero(3)) == x


def test_evaluate_z():
    x = SymElement.monomial(3, (0,), 1, 2)
    assert x.evaluate_z(2) == e(0).scale(4)
    assert x.evaluate_z(0) == SymElement.zero(3)


def test_coeff_is_polynomial_in_z():
    x = SymElement.monomial(3, (0,), 3, 2) + SymElement.monomial(3, (0,), 1, 0)
    assert x.coeff((0,)) == UniPoly([1, 0, 3])
    assert x.z_degree() == 2


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        SymElement.unit(2) * SymElement.unit(3)


def test_render_order_and_format():
    x = e(0, 1) + SymElement.monomial(3, (2,), F(1, 2), 1)
    assert x.render(["P", "Q", "E"]) == "P*Q + (1/2)z*E"
    y = e(0, 0, 1).scale(-3) + SymElement.unit(3, 2) + SymElement.monomial(3, (1,), 1, 2)
    assert y.render(["P", "Q", "E"]) == "-3*P^2*Q + z^2*Q + 2"
    assert SymElement.zero(3).render() == "0"


@given(sym_elements(), sym_elements(), sym_elements())
def test_commutative_associative(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(sym_elements(max_deg=6, zpow=2))
def test_unit_neutral(a):
    assert SymElement.unit(3) * a == a


@given(sym_elements(), sym_elements())
def test_projection_of_product(a, b):
    for n in range(7):
        rhs = SymElement.zero(3)
        for p in range(n + 1):
            rhs = rhs + project(a, p) * project(b, n - p)
        assert project(a * b, n) == rhs


@given(sym_elements(zpow=2), rationals())
def test_evaluate_z_is_algebra_map(a, z0):
    b = a * a
    assert b.evaluate_z(z0) == a.evaluate_z(z0) * a.evaluate_z(z0)
