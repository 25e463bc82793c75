import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import AB3, HEIS, SO3, algebras, sym_elements
from guttstar.enveloping import (
    HomomorphismError,
    RepresentationError,
    UElement,
    check_representation,
    lift_hom,
    normal_order,
    normal_order_random,
    q_z,
    q_z_inv,
    represent,
    sym_hom,
    u_mul,
)
from guttstar.gutt_star import star_pbw
from guttstar.lie_algebra import abelian
from guttstar.sym_algebra import SymElement

F = Fraction
P, Q, E = 0, 1, 2


def U(L, *terms):
    """UElement from (word, zpow, coeff) triples."""
    return UElement(L.dim, {(tuple(w), j): F(c) for w, j, c in terms})


def test_normal_order_examples():
    assert normal_order(HEIS, (Q, P)) == U(HEIS, ((P, Q), 0, 1), ((E,), 1, -1))
    assert normal_order(HEIS, (P, Q, E)) == U(HEIS, ((P, Q, E), 0, 1))
    assert normal_order(AB3, (2, 0, 1, 0)) == U(AB3, ((0, 0, 1, 2), 0, 1))
    with pytest.raises(IndexError):
        normal_order(HEIS, (3,))


def test_normal_order_numeric_z():
    assert normal_order(HEIS, (Q, P), z=F(1, 3)) == U(HEIS, ((P, Q), 0, 1), ((E,), 0, F(-1, 3)))


@given(algebras, st.lists(st.integers(0, 2), max_size=6), st.integers(0, 10**6))
def test_normal_order_confluent(L, word, seed):
    assert normal_order_random(L, word, random.Random(seed)) == normal_order(L, word)


def test_u_mul_examples():
    p, q, e = (U(HEIS, ((i,), 0, 1)) for i in (P, Q, E))
    assert u_mul(HEIS, p, q) == U(HEIS, ((P, Q), 0, 1))
    assert u_mul(HEIS, q, p) == U(HEIS, ((P, Q), 0, 1), ((E,), 1, -1))
    assert u_mul(HEIS, u_mul(HEIS, p, q), e) == u_mul(HEIS, p, u_mul(HEIS, q, e))


def _random_u(rng, L, max_len=4, terms=3):
    out = UElement(L.dim)
    for _ in range(terms):
        w = [rng.randrange(L.dim) for _ in range(rng.randint(0, max_len))]
        out = out + normal_order(L, w).scale(F(rng.randint(-3, 3), rng.randint(1, 3)))
    return out


@pytest.mark.parametrize("seed", range(10))
def test_u_mul_associative_unital(algebra, seed):
    rng = random.Random(seed)
    a, b, c = (_random_u(rng, algebra) for _ in range(3))
    assert u_mul(algebra, u_mul(algebra, a, b), c) == u_mul(algebra, a, u_mul(algebra, b, c))
    one = UElement.unit(algebra.dim)
    assert u_mul(algebra, one, a) == a == u_mul(algebra, a, one)


def test_q_z_examples():
    assert q_z(HEIS, SymElement.monomial(3, (P,))) == U(HEIS, ((P,), 0, 1))
    assert q_z(HEIS, SymElement.monomial(3, (P, Q))) == U(HEIS, ((P, Q), 0, 1), ((E,), 1, F(-1, 2)))
    assert q_z(HEIS, SymElement.unit(3)) == U(HEIS, ((), 0, 1))


def test_q_z_inv_examples():
    assert q_z_inv(HEIS, U(HEIS, ((P, Q), 0, 1))) == SymElement.monomial(3, (P, Q)) + SymElement.monomial(
        3, (E,), F(1, 2), 1
    )
    assert q_z_inv(HEIS, U(HEIS, ((P,), 0, 1))) == SymElement.monomial(3, (P,))


def _literal_symmetrization(L, mono):
    from itertools import permutations
    from math import factorial

    out = UElement(L.dim)
    for perm in permutations(mono):
        out = out + normal_order(L, perm)
    return out.scale(F(1, factorial(len(mono))))


@pytest.mark.parametrize("mono", [(0, 1), (0, 0, 1), (0, 1, 2), (0, 0, 1, 1), (0, 1, 1, 2, 2)])
def test_q_z_matches_literal_average(algebra, mono):
    assert q_z(algebra, SymElement.monomial(3, mono)) == _literal_symmetrization(algebra, mono)


@given(algebras, sym_elements(max_deg=5, zpow=1))
def test_round_trip(L, x):
    assert q_z_inv(L, q_z(L, x)) == x


@given(algebras, st.lists(st.integers(0, 2), max_size=5))
def test_round_trip_from_u(L, word):
    u = normal_order(L, word)
    assert q_z(L, q_z_inv(L, u)) == u


@given(algebras, sym_elements(max_deg=3), sym_elements(max_deg=3))
def test_z_zero_is_symmetric_product(L, a, b):
    prod = q_z_inv(L, u_mul(L, q_z(L, a, 0), q_z(L, b, 0), 0), 0)
    assert prod == a * b


# ------------------------------------------------------------ morphisms

def test_lift_hom_identity():
    ident = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    lift = lift_hom(HEIS, HEIS, ident)
    u = normal_order(HEIS, (Q, P, E, Q))
    assert lift(u) == u


def test_lift_hom_rejects_non_homomorphism():
    phi = [[0], [0], [1]]
    with pytest.raises(HomomorphismError):
        lift_hom(HEIS, abelian(1), phi)


def test_lift_hom_scaling_automorphism():
    phi = [[2, 0, 0], [0, 1, 0], [0, 0, 2]]
    lift = lift_hom(HEIS, HEIS, phi)
    rng = random.Random(5)
    for _ in range(10):
        a, b = _random_u(rng, HEIS), _random_u(rng, HEIS)
        assert lift(u_mul(HEIS, a, b)) == u_mul(HEIS, lift(a), lift(b))


def test_sym_hom_intertwines_star():
    # so3 -> so3 rotation-like permutation e1 -> e2 -> e3 -> e1
    phi = [[0, 1, 0], [0, 0, 1], [1, 0, 0]]
    f = sym_hom(SO3, SO3, phi)
    rng = random.Random(2)
    for _ in range(10):
        a = SymElement.monomial(3, sorted(rng.randrange(3) for _ in range(rng.randint(0, 3))))
        b = SymElement.monomial(3, sorted(rng.randrange(3) for _ in range(rng.randint(0, 3))))
        assert f(star_pbw(SO3, a, b)) == star_pbw(SO3, f(a), f(b))


def test_basis_reordering_does_not_change_star_product():
    from guttstar.lie_algebra import LieAlgebra

    perm = [2, 0, 1]  # new index of old basis vector i
    br = {}
    for i in range(3):
        for j in range(3):
            if SO3.table[i][j]:
                br[(perm[i], perm[j])] = {perm[k]: c for k, c in SO3.table[i][j]}
    labels = [None] * 3
    for i, p in enumerate(perm):
        labels[p] = SO3.labels[i]
    L2 = LieAlgebra.from_brackets(labels, br)

    def move(x):
        return SymElement(3, {(tuple(sorted(perm[i] for i in m)), j): c for (m, j), c in x.terms.items()})

    rng = random.Random(7)
    for _ in range(15):
        a = SymElement.monomial(3, sorted(rng.randrange(3) for _ in range(rng.randint(0, 3))))
        b = SymElement.monomial(3, sorted(rng.randrange(3) for _ in range(rng.randint(0, 3))))
        assert move(star_pbw(SO3, a, b)) == star_pbw(L2, move(a), move(b))


# ------------------------------------------------------ representations

def so3_adjoint():
    mats = []
    for i in range(3):
        m = [[F(0)] * 3 for _ in range(3)]
        for j in range(3):
            for k, c in SO3.table[i][j]:
                m[k][j] = c
        mats.append(m)
    return mats


def _mm(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]


def test_adjoint_is_representation():
    assert check_representation(SO3, so3_adjoint()) is None


def test_represent_examples():
    rho = so3_adjoint()
    assert represent(SO3, rho, 1, SymElement.monomial(3, (0,))) == rho[0]
    two = represent(SO3, rho, 2, SymElement.monomial(3, (1,)))
    assert two == [[2 * v for v in row] for row in rho[1]]
    sym = represent(SO3, rho, 1, SymElement.monomial(3, (0, 1)))
    a, b = _mm(rho[0], rho[1]), _mm(rho[1], rho[0])
    assert sym == [[(x + y) / 2 for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def test_represent_errors():
    rho = so3_adjoint()
    with pytest.raises(RepresentationError):
        represent(SO3, rho, 0, SymElement.monomial(3, (0,)))
    bad = [rho[0], rho[0], rho[2]]
    with pytest.raises(RepresentationError):
        represent(SO3, bad, 1, SymElement.monomial(3, (0,)))


@given(sym_elements(max_deg=3), sym_elements(max_deg=3), st.sampled_from([F(1), F(-1, 2), F(3)]))
def test_represent_is_morphism(x, y, z0):
    rho = so3_adjoint()
    lhs = represent(SO3, rho, z0, star_pbw(SO3, x, y))
    rhs = _mm(represent(SO3, rho, z0, x), represent(SO3, rho, z0, y))
    assert lhs == rhs
