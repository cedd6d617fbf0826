import pytest
from hypothesis import HealthCheck, settings

from valkey import (
    Augmented,
    Monomial,
    PAdicRationals,
    PrimeField,
    Rationals,
    TAdicRationalFunctions,
    Value,
    parse_poly,
)

settings.register_profile(
    "ci",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture
def qt():
    """The ground field Q(t) with the t-adic valuation."""
    return TAdicRationalFunctions(Rationals())


@pytest.fixture
def q2():
    return PAdicRationals(2)


@pytest.fixture
def gf2t():
    return TAdicRationalFunctions(PrimeField(2))


@pytest.fixture
def nu_t(qt):
    """The running example base: [t-adic; v(x) = 1] on Q(t)[x]."""
    return Monomial(qt, Value.finite(1))


@pytest.fixture
def nu1(qt, nu_t):
    """[nu_t; v(x - t) = 3]."""
    return Augmented(nu_t, parse_poly(qt, "x - t"), Value.finite(3))


def p(cfg, text):
    return parse_poly(cfg, text)
