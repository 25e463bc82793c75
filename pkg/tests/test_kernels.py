import os
import random
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import ALGEBRAS, HEIS, SO3
from guttstar import _kernels_py
from guttstar.lie_algebra import LieAlgebra

try:
    from guttstar import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled kernel not built")

HALF = LieAlgebra.from_brackets(["a", "b", "c"], {(0, 1): {2: Fraction(1, 2)}, (0, 2): {1: Fraction(-3)}})
ZVALS = [None, Fraction(1), Fraction(2, 3), Fraction(0)]


def _engines(L, z):
    out = [_kernels_py.OrderingEngine(L.table, z)]
    if _ckernels is not None:
        out.append(_ckernels.OrderingEngine(L.table, z))
    return out


def test_pure_examples():
    e = _kernels_py.OrderingEngine(HEIS.table)
    assert e.normal_order((1, 0)) == {((0, 1), 0): 1, ((2,), 1): -1}
    assert e.normal_order(()) == {((), 0): 1}
    e1 = _kernels_py.OrderingEngine(HEIS.table, Fraction(1, 2))
    assert e1.normal_order((1, 0)) == {((0, 1), 0): 1, ((2,), 0): Fraction(-1, 2)}


def test_integral_view():
    tab, z, one = _kernels_py._integral_view(HEIS.table, Fraction(3))
    assert one == 1 and type(one) is int and z == 3 and type(z) is int
    tab, z, one = _kernels_py._integral_view(HEIS.table, Fraction(1, 3))
    assert isinstance(one, Fraction) and z == Fraction(1, 3)


@needs_c
@pytest.mark.parametrize("L", [*ALGEBRAS.values(), HALF], ids=[*ALGEBRAS, "half"])
@pytest.mark.parametrize("z", ZVALS, ids=["formal", "1", "2/3", "0"])
def test_kernels_agree(L, z):
    rng = random.Random(11)
    py, c = _engines(L, z)
    for _ in range(60):
        w = tuple(rng.randrange(3) for _ in range(rng.randint(0, 8)))
        assert py.normal_order(w) == c.normal_order(w)


@needs_c
@given(st.lists(st.integers(0, 2), max_size=7), st.lists(st.integers(0, 2), max_size=5))
def test_kernels_agree_on_products(a, b):
    py, c = _engines(SO3, None)
    x, y = py.normal_order(a), py.normal_order(b)
    assert py.mul(x, y) == c.mul(x, y)


def test_cache_is_reused():
    e = _kernels_py.OrderingEngine(SO3.table)
    e.normal_order((2, 1, 0))
    n = e.cache_size()
    e.normal_order((2, 1, 0))
    assert e.cache_size() == n > 0


@pytest.mark.parametrize("flag,expect", [("1", "python"), ("0", None)])
def test_env_selects_kernel(flag, expect):
    env = dict(os.environ, GUTTSTAR_PURE=flag)
    out = subprocess.run(
        [sys.executable, "-c", "import guttstar; print(guttstar.KERNEL)"],
        env=env, capture_output=True, text=True, check=True,
    ).stdout.strip()
    if expect is None:
        expect = "python" if _ckernels is None else "cython"
    assert out == expect
