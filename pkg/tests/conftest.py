import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from guttstar.lie_algebra import abelian, heisenberg, so3
from guttstar.sym_algebra import SymElement

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

HEIS = heisenberg(1)
SO3 = so3()
AB3 = abelian(3)
ALGEBRAS = {"heisenberg": HEIS, "so3": SO3}


def rationals(max_num: int = 6, max_den: int = 4):
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


def monomials(dim: int, max_deg: int, min_deg: int = 0):
    return st.lists(st.integers(0, dim - 1), min_size=min_deg, max_size=max_deg).map(
        lambda xs: tuple(sorted(xs))
    )


def sym_elements(dim: int = 3, max_deg: int = 3, max_terms: int = 3, zpow: int = 0):
    term = st.tuples(monomials(dim, max_deg), st.integers(0, zpow), rationals())
    return st.lists(term, min_size=0, max_size=max_terms).map(
        lambda ts: sum(
            (SymElement.monomial(dim, m, c, j) for m, j, c in ts), SymElement.zero(dim)
        )
    )


def vectors(dim: int = 3):
    return st.tuples(*[rationals() for _ in range(dim)])


algebras = st.sampled_from([HEIS, SO3])


@pytest.fixture(params=["heisenberg", "so3"])
def algebra(request):
    return ALGEBRAS[request.param]


# criterion number -> "criterion N: PASS|FAIL ..." line, filled by test_acceptance
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
