import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import HEIS, SO3, algebras, rationals, vectors
from guttstar.lie_algebra import (
    DimensionError,
    LieAlgebra,
    SpecError,
    abelian,
    ad_power,
    bracket,
    from_spec,
    heisenberg,
    nilpotency_index,
    so3,
    validate,
)

F = Fraction


def test_builders():
    assert HEIS.dim == 3 and HEIS.labels == ("P", "Q", "E")
    assert heisenberg(2).dim == 5
    assert all(c == 0 for plane in abelian(2).c for row in plane for c in row)
    assert validate(HEIS) is None and validate(SO3) is None
    with pytest.raises(ValueError):
        abelian(0)


def test_bracket_examples():
    P, Q, E = (HEIS.basis(i) for i in range(3))
    assert bracket(HEIS, P, Q) == E
    e1, e2, e3 = (SO3.basis(i) for i in range(3))
    assert bracket(SO3, e1, e2) == e3
    assert bracket(SO3, e2, e3) == e1
    assert bracket(SO3, e3, e1) == e2


def test_ad_power_examples():
    P, Q = HEIS.basis(0), HEIS.basis(1)
    assert ad_power(HEIS, P, 0, Q) == Q
    assert ad_power(HEIS, P, 2, Q) == HEIS.zero()
    e1, e2 = SO3.basis(0), SO3.basis(1)
    assert ad_power(SO3, e1, 2, e2) == tuple(-x for x in e2)


def test_dimension_errors():
    with pytest.raises(DimensionError):
        bracket(SO3, (F(1),), SO3.basis(0))


def test_antisymmetry_violation_reported():
    L = LieAlgebra.from_brackets(["a", "b", "c"], {(0, 1): {2: 1}, (1, 0): {2: 1}})
    v = validate(L)
    assert v is not None and v.kind == "antisymmetry" and v.index == (1, 2, 3)


def test_jacobi_violation_reported():
    L = LieAlgebra.from_brackets(["a", "b", "c"], {(0, 1): {0: 1}, (1, 2): {1: 1}, (0, 2): {0: 1}})
    v = validate(L)
    assert v is not None and v.kind == "jacobi"


def _random_antisymmetric(rng, d):
    br = {}
    for i in range(d):
        for j in range(i + 1, d):
            br[(i, j)] = {k: rng.randint(-2, 2) for k in range(d)}
    return LieAlgebra.from_brackets([f"x{i}" for i in range(d)], br)


def test_random_structure_constants_fail_jacobi_above_dim_2():
    rng = random.Random(3)
    assert all(validate(_random_antisymmetric(rng, 2)) is None for _ in range(20))
    fails = sum(validate(_random_antisymmetric(rng, 3)) is not None for _ in range(40))
    assert fails >= 35


@given(algebras, vectors(), vectors(), vectors())
def test_jacobi_on_random_vectors(L, x, y, z):
    a = bracket(L, x, bracket(L, y, z))
    b = bracket(L, y, bracket(L, z, x))
    c = bracket(L, z, bracket(L, x, y))
    assert tuple(p + q + r for p, q, r in zip(a, b, c)) == L.zero()


@given(algebras, vectors(), vectors(), rationals())
def test_bracket_bilinear_antisymmetric(L, x, y, s):
    assert bracket(L, x, x) == L.zero()
    assert bracket(L, x, y) == tuple(-v for v in bracket(L, y, x))
    sx = tuple(s * v for v in x)
    assert bracket(L, sx, y) == tuple(s * v for v in bracket(L, x, y))


def test_nilpotency_index():
    assert nilpotency_index(heisenberg(1), 5) == 2
    assert nilpotency_index(abelian(3), 5) == 1
    assert nilpotency_index(so3(), 6) is None
    for n in (1, 2, 3):
        assert nilpotency_index(heisenberg(n), 5) == 2


def test_nilpotency_index_filiform():
    # [x0, x_i] = x_{i+1}: nilpotent of index 3 in dimension 4
    L = LieAlgebra.from_brackets(["x0", "x1", "x2", "x3"], {(0, 1): {2: 1}, (0, 2): {3: 1}})
    assert validate(L) is None
    assert nilpotency_index(L, 6) == 3
    assert nilpotency_index(L, 2) is None


def test_from_spec_roundtrip_and_errors():
    spec = {"dim": 3, "basis": ["P", "Q", "E"], "brackets": [{"i": "P", "j": "Q", "result": {"E": "1"}}]}
    assert from_spec(spec) == HEIS
    lower = {"dim": 3, "basis": ["P", "Q", "E"], "brackets": [{"i": "Q", "j": "P", "result": {"E": "-1"}}]}
    assert from_spec(lower) == HEIS
    with pytest.raises(SpecError):
        from_spec({"dim": 2, "basis": ["a", "b", "c"], "brackets": []})
    with pytest.raises(SpecError):
        from_spec({"basis": ["a", "a"], "brackets": []})
    with pytest.raises(SpecError):
        from_spec({"basis": ["a", "b"], "brackets": [{"i": "a", "j": "z", "result": {}}]})
    with pytest.raises(SpecError):
        from_spec({"basis": ["a", "b"], "brackets": [{"i": "a", "j": "b", "result": {"a": "1/0"}}]})
    bad = {"basis": ["a", "b", "c"], "brackets": [
        {"i": "a", "j": "b", "result": {"a": "1"}},
        {"i": "b", "j": "c", "result": {"b": "1"}},
        {"i": "a", "j": "c", "result": {"a": "1"}},
    ]}
    with pytest.raises(SpecError, match="jacobi"):
        from_spec(bad)


def test_structure_bound():
    assert HEIS.structure_bound() == 1
    assert SO3.structure_bound() == 1
    assert abelian(2).structure_bound() == 0
