import gmpy2
import mpmath
import pytest
from hypothesis import given, strategies as st

from superweier import (
    DomainError, DuplicateNodes, NodeSet, PrecisionConfig, ResourceLimit, ValidationError,
    eval_fn, eval_fn_sum, eval_lagrange_tn, fourier_expansion, local_wave_number,
    superosc_boundary,
)
from conftest import as_complex, oracle_fn

# Frozen from an independent 40-digit mpmath evaluation of (cos u + i alpha sin u)^n.
F100_PI_AT_1 = mpmath.mpc("-1.045323553782791869525862734762628929102",
                          "0.0009703848625256053578058234571078516406582")
F100_PI_ERROR_AT_1 = mpmath.mpf("0.04533394064366174227655041206453057794937")
F20_3PI_AT_01 = mpmath.mpc("0.6013887071326625972907708530500875893106",
                           "0.8265425686726065130766312667729960360974")
KLOC_10_4_AT_1 = mpmath.mpf("3.479771798006465955079318396317517066612")
BOUNDARY_10_4 = mpmath.mpf("4.636476090008061162142562314612144020285")


def test_fn_frozen_value():
    z = as_complex(eval_fn(100, "pi", 1))
    assert abs(z - F100_PI_AT_1) < mpmath.mpf(10) ** -30
    assert abs(abs(z - mpmath.exp(1j * mpmath.pi)) - F100_PI_ERROR_AT_1) < mpmath.mpf(10) ** -30


def test_fn_sum_frozen_value():
    assert abs(as_complex(eval_fn_sum(20, "3pi", "0.1")) - F20_3PI_AT_01) < mpmath.mpf(10) ** -30


def test_fn_at_origin_is_one():
    z = eval_fn(7, 5, 0)
    assert z.log_modulus == 0 and z.phase == 0


def test_fn_domain():
    with pytest.raises(DomainError):
        eval_fn(2, 3, 4)
    with pytest.raises(ValidationError):
        eval_fn(0, 3, 0.1)


def test_fn_huge_modulus_stays_logpolar():
    # far outside the superoscillatory window the modulus leaves double range
    z = eval_fn(1000, 10 ** 6, 1500)
    assert z.log_modulus > 1e4


@given(st.integers(1, 40), st.floats(-20, 20), st.floats(-1.5, 1.5))
def test_fn_matches_oracle(n, alpha, frac):
    x = frac * n  # keep |x/n| < pi/2
    got = as_complex(eval_fn(n, alpha, x))
    ref = oracle_fn(n, mpmath.mpf(alpha), mpmath.mpf(x))
    assert abs(got - ref) <= abs(ref) * mpmath.mpf(2) ** -110


@given(st.integers(1, 30), st.floats(-10, 10))
def test_fourier_coefficients_sum_to_one(n, alpha):
    # F_n(0) = 1 = sum of coefficients; frequencies in the band
    terms = fourier_expansion(n, alpha)
    assert len(terms) == n + 1
    total = mpmath.fsum(mpmath.mpf(str(t.coefficient.re)) for t in terms)
    assert abs(total - 1) < mpmath.mpf(2) ** -100 * max(1, abs(alpha)) ** n
    assert all(-1 <= t.frequency <= 1 for t in terms)


def test_fourier_expansion_cap():
    with pytest.raises(ResourceLimit):
        fourier_expansion(10, 2, cap=5)


@given(st.integers(1, 48), st.sampled_from(["pi", "3pi", "7pi"]), st.floats(-1, 1))
def test_two_forms_agree(n, alpha, x):
    closed = as_complex(eval_fn(n, alpha, x))
    summed = as_complex(eval_fn_sum(n, alpha, x))
    assert abs(closed - summed) <= abs(summed) * mpmath.mpf(10) ** -25


def test_local_wave_number_and_boundary():
    assert abs(mpmath.mpf(str(local_wave_number(10, 4, 1))) - KLOC_10_4_AT_1) < mpmath.mpf(10) ** -30
    b = superosc_boundary(10, 4)
    assert abs(mpmath.mpf(str(b)) - BOUNDARY_10_4) < mpmath.mpf(10) ** -30
    # the wave number crosses 1 exactly at the boundary
    assert abs(local_wave_number(10, 4, b) - 1) < 1e-30
    assert local_wave_number(10, 4, b * 0.99) > 1 > local_wave_number(10, 4, b * 1.01)
    with pytest.raises(DomainError):
        superosc_boundary(10, 1)


@given(st.integers(2, 20), st.floats(1.5, 30), st.floats(-1.4, 1.4))
def test_local_wave_number_is_phase_gradient(n, alpha, frac):
    x = mpmath.mpf(frac) * n
    h = mpmath.mpf(10) ** -15
    # central difference of the continuous phase n * atan2(alpha sin u, cos u)
    phase = lambda t: n * mpmath.atan2(alpha * mpmath.sin(t / n), mpmath.cos(t / n))
    fd = (phase(x + h) - phase(x - h)) / (2 * h)
    got = mpmath.mpf(str(local_wave_number(n, alpha, str(x))))
    assert abs(got - fd) < mpmath.mpf(10) ** -20 * max(1, abs(fd))


def test_node_sets():
    eq = NodeSet.equispaced(5)  # degree 5: six nodes, like the binomial frequencies
    assert len(eq) == 6
    assert [float(h) for h in sorted(eq.nodes)] == [-1, -0.6, -0.2, 0.2, 0.6, 1]
    ch = NodeSet.chebyshev(6)
    assert all(-1 < h < 1 for h in ch.nodes)
    with pytest.raises(DuplicateNodes):
        NodeSet.custom([0.1, 0.1, 0.5])
    with pytest.raises(ValidationError):
        NodeSet.custom([0.1, 2.0])


@pytest.mark.parametrize("make", [NodeSet.equispaced, NodeSet.chebyshev])
def test_lagrange_approximates_exponential(make):
    t = as_complex(eval_lagrange_tn(make(16), "pi", "0.1"))
    assert abs(t - mpmath.exp(1j * mpmath.pi / 10)) < 1e-15


def test_lagrange_exact_at_node():
    nodes = NodeSet.custom([-1, 0, 0.5, 1])
    t = eval_lagrange_tn(nodes, 0.5, 3)
    assert abs(as_complex(t) - mpmath.exp(1.5j)) < mpmath.mpf(2) ** -120


def test_lagrange_matches_direct_oracle():
    h = [mpmath.mpf(v) for v in ("-1", "-0.3", "0.2", "0.9")]
    alpha, x = mpmath.mpf(3), mpmath.mpf("0.7")
    ref = mpmath.fsum(
        mpmath.fprod((hk - alpha) / (hk - hj) for hk in h if hk != hj) * mpmath.exp(1j * hj * x)
        for hj in h
    )
    got = as_complex(eval_lagrange_tn(NodeSet.custom(["-1", "-0.3", "0.2", "0.9"]), 3, "0.7"))
    assert abs(got - ref) < mpmath.mpf(10) ** -30


@pytest.mark.parametrize("n, alpha, x", [(2000, "3pi", "1"), (4096, "pi", "5"), (500, "9pi", "0.7")])
def test_two_forms_agree_at_large_order(n, alpha, x):
    # the sum cancels through thousands of bits here
    closed = as_complex(eval_fn(n, alpha, x))
    summed = as_complex(eval_fn_sum(n, alpha, x))
    assert abs(closed - summed) <= abs(summed) * mpmath.mpf(2) ** -120
