import pytest
from hypothesis import HealthCheck, settings, strategies as st

from quadbetti.exactnum import BinaryForm, GaussianRational
from quadbetti.pencil import Pencil
from quadbetti.qparse import parse_quadric
from quadbetti.symlin import ComplexSymMatrix

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# named inputs used across modules
SKEW_CUBIC = ("z0*z2 - z1^2", "z0*z3 - z1*z2", 3)
CONSTANT_RANK = ("z0^2 - z1^2", "2*z2*(z0 + z1)", 2)
CONSTANT_RANK_AS_PRINTED = ("z0^2 - z1^2", "2*z0*(z1 + z2)", 2)
FOUR_POINTS = ("z0^2 - z1^2", "z0^2 - z2^2", 2)


def make_pencil(q0: str, q1: str, n: int) -> Pencil:
    return Pencil(n, parse_quadric(q0, n), parse_quadric(q1, n))


@pytest.fixture
def skew_cubic() -> Pencil:
    return make_pencil(*SKEW_CUBIC)


@pytest.fixture
def constant_rank() -> Pencil:
    return make_pencil(*CONSTANT_RANK)


small_ints = st.integers(min_value=-3, max_value=3)
small_fracs = st.builds(lambda a, b: GaussianRational(a) / b, small_ints, st.sampled_from([1, 2, 3]))


@st.composite
def gaussians(draw, allow_zero=True):
    z = GaussianRational(draw(small_fracs).re, draw(small_fracs).re)
    if not allow_zero and z.is_zero():
        z = GaussianRational(1)
    return z


@st.composite
def forms(draw, max_degree=3, nonzero=True):
    d = draw(st.integers(min_value=0, max_value=max_degree))
    coeffs = draw(st.lists(gaussians(), min_size=d + 1, max_size=d + 1))
    f = BinaryForm(coeffs)
    if nonzero and f.is_zero:
        f = BinaryForm([GaussianRational(1)] + coeffs[1:])
    return f


@st.composite
def sym_matrices(draw, min_size=1, max_size=6, sparse=False):
    m = draw(st.integers(min_value=min_size, max_value=max_size))
    rows = [[GaussianRational(0)] * m for _ in range(m)]
    pool = st.one_of(st.just(GaussianRational(0)), gaussians()) if sparse else gaussians()
    for i in range(m):
        for j in range(i, m):
            rows[i][j] = rows[j][i] = draw(pool)
    return ComplexSymMatrix(rows)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for v in test_acceptance.RESULTS:
            terminalreporter.write_line(v.line())
