"""Shared helpers.  mpmath serves as the independent oracle throughout."""

import gmpy2
import mpmath
import pytest
from hypothesis import settings

from superweier import PrecisionConfig, validate_params

# frozen oracle constants are parsed at import time, so fix the precision globally
mpmath.mp.dps = 50

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def to_mp(v):
    """Exact mpfr -> mpmath conversion (a decimal string would round short values)."""
    if not isinstance(v, type(gmpy2.mpfr(0))):
        v = gmpy2.mpfr(v)
    num, den = v.as_integer_ratio()
    return mpmath.mpf(int(num)) / int(den)


def as_complex(z):
    """Any package complex value -> mpmath mpc (log-polar via exp)."""
    if hasattr(z, "log_modulus"):
        return mpmath.exp(to_mp(z.log_modulus) + 1j * to_mp(z.phase))
    return mpmath.mpc(to_mp(z.re), to_mp(z.im))


def oracle_fn(n, alpha, x):
    u = mpmath.mpf(x) / n
    return (mpmath.cos(u) + 1j * alpha * mpmath.sin(u)) ** n


@pytest.fixture
def prec():
    return PrecisionConfig(128)


@pytest.fixture
def p053():
    return validate_params("0.5", 3, "basic")


@pytest.fixture(autouse=True)
def _mp_dps():
    with mpmath.workdps(50):
        yield


# acceptance criteria report one line each; collected here and printed at the end
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
