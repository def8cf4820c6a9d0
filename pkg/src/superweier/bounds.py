"""Explicit error bounds for ``F_n -> exp(i alpha x)`` and for ``W_{N,n} -> W_N``.

Single term, valid for ``|x| <= M`` and ``n >= 4M/pi``::

    K = |alpha^2 - 1| M^2 / 2,   J = 2 |alpha (1 - alpha^2)| M^3
    |F_n(x; alpha) - exp(i alpha x)| <= (1/n) sqrt(K^2 e^{2K/n} + (J/n)^2 e^{K/n})

Summed over the Weierstrass terms, valid for ``n >= max(4M/pi, K_max)``::

    sup |W_N - W_{N,n}| <= (e/n) S1 + (sqrt(e)/n^2) S2

with ``S1 = sum a^m K_m`` and ``S2 = sum a^m J_m`` in closed geometric form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial
from typing import NamedTuple

import gmpy2
import numpy as np
from gmpy2 import mpfr

from ._grid import grid_argmax, grid_point
from .errors import DegenerateRatio, DomainError, Overflow, PreconditionViolated, ValidationError
from .numerics import DEFAULT_PRECISION, LogPolarComplex, PrecisionConfig, real
from .superosc import _fn_polar
from .weierstrass import FrequencyIndex, WeierstrassParams, _truncated_sum, eval_super_weierstrass

__all__ = [
    "ErrorBudget",
    "GlobalBudget",
    "CarnotParts",
    "lemma_gap",
    "single_term_bound",
    "carnot_decompose",
    "global_sums",
    "global_min_n",
    "global_bound",
    "empirical_sup_error",
    "single_term_sup_error",
]


def lemma_gap(gamma, y):
    """Both sides of ``|(1+y)^gamma - 1| <= gamma |y| exp(gamma |y|)``.

    Vectorised over numpy arrays.  Only ``gamma >= 1`` is accepted: that is the
    range in which the inequality is established for ``-1 < y < 0``.
    """
    g = np.asarray(gamma, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(g < 1):
        raise DomainError("lemma_gap requires gamma >= 1")
    if np.any(y <= -1):
        raise DomainError("lemma_gap requires y > -1")
    lhs = np.abs(np.expm1(g * np.log1p(y)))
    t = g * np.abs(y)
    rhs = t * np.exp(t)
    return lhs[()], rhs[()]


@dataclass(frozen=True)
class ErrorBudget:
    K: mpfr
    J: mpfr
    bound: mpfr
    n: int
    alpha: mpfr
    M: mpfr


@dataclass(frozen=True)
class GlobalBudget:
    S1: mpfr
    S2: mpfr
    K_max: mpfr
    bound: mpfr
    min_n: int
    n: int


def _four_m_over_pi(M):
    return 4 * M / gmpy2.const_pi()


def _check_positive_M(M):
    if not M > 0:
        raise ValidationError(f"M must be positive, got {M}")


def _check_n(n):
    if int(n) != n or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n!r}")
    return int(n)


def single_term_bound(n: int, alpha, M, prec: PrecisionConfig = DEFAULT_PRECISION) -> ErrorBudget:
    n = _check_n(n)
    with prec.context():
        alpha, M = real(alpha), real(M)
        _check_positive_M(M)
        limit = _four_m_over_pi(M)
        if n < limit:
            min_n = int(gmpy2.ceil(limit))
            raise PreconditionViolated(
                f"n = {n} violates n >= 4M/pi = {float(limit):.6g}", binding="n >= 4M/pi", min_n=min_n
            )
        a2 = alpha * alpha - 1
        K = abs(a2) * M * M / 2
        J = 2 * abs(alpha * a2) * M ** 3
        bound = gmpy2.sqrt(K * K * gmpy2.exp(2 * K / n) + (J / n) ** 2 * gmpy2.exp(K / n)) / n
        return ErrorBudget(K, J, bound, n, alpha, M)


class CarnotParts(NamedTuple):
    """``|w - z|^2`` split into its radial and angular summands.

    All three are at true scale; ``log_scale`` is the ``2 L`` that was factored
    out, ``L`` being the larger log-modulus.
    """

    distance_sq: mpfr
    radial_part: mpfr
    angular_part: mpfr
    log_scale: mpfr


def carnot_decompose(w: LogPolarComplex, z: LogPolarComplex,
                     prec: PrecisionConfig = DEFAULT_PRECISION) -> CarnotParts:
    """``|w-z|^2 = (rho_w - rho_z)^2 + 2 rho_w rho_z (1 - cos(theta_w - theta_z))``."""
    with prec.context():
        L = max(w.log_modulus, z.log_modulus)
        rw = gmpy2.exp(w.log_modulus - L)
        rz = gmpy2.exp(z.log_modulus - L)
        if rw == 0 or rz == 0:
            raise Overflow("log-modulus gap too large: the smaller operand vanishes after rescaling")
        radial = (rw - rz) ** 2
        # 1 - cos(d) = 2 sin^2(d/2) avoids cancellation for nearby phases.
        angular = 4 * rw * rz * gmpy2.sin((w.phase - z.phase) / 2) ** 2
        scale = gmpy2.exp(2 * L)
        out = CarnotParts((radial + angular) * scale, radial * scale, angular * scale, 2 * L)
        if not all(gmpy2.is_finite(v) for v in out):
            raise Overflow("distance exceeds the MPFR exponent range")
        return out


def _geometric(r, N, degenerate):
    if r == 1:
        if degenerate == "raise":
            raise DegenerateRatio("geometric ratio equals 1")
        return mpfr(N + 1)
    return (r ** (N + 1) - 1) / (r - 1)


def global_sums(p: WeierstrassParams, M, N: int, prec: PrecisionConfig = DEFAULT_PRECISION,
                degenerate: str = "fallback"):
    """``(S1, S2)`` from their closed geometric forms.

    A ratio (``a b^2``, ``a b^3``, ``a b``) equal to one uses the ``N + 1`` term
    count instead, or raises :class:`DegenerateRatio` if ``degenerate="raise"``.
    """
    if int(N) != N or N < 0:
        raise ValidationError(f"N must be a nonnegative integer, got {N!r}")
    N = int(N)
    with prec.context():
        M = real(M)
        _check_positive_M(M)
        a, b, pi = p.a, p.b, gmpy2.const_pi()
        geo = partial(_geometric, N=N, degenerate=degenerate)
        S1 = M * M / 2 * (pi ** 2 * geo(a * b ** 2) - (1 - a ** (N + 1)) / (1 - a))
        S2 = 2 * M ** 3 * (pi ** 3 * geo(a * b ** 3) - pi * geo(a * b))
        return S1, S2


def global_min_n(p: WeierstrassParams, M, N: int, prec: PrecisionConfig = DEFAULT_PRECISION):
    """``(min_n, K_max, binding)`` for the global bound at truncation ``N``."""
    with prec.context():
        M = real(M)
        alpha_N = FrequencyIndex.of(p, N).alpha_m
        K_max = (alpha_N ** 2 - 1) * M * M / 2
        limit = _four_m_over_pi(M)
        binding = "n >= K_max" if K_max >= limit else "n >= 4M/pi"
        return int(gmpy2.ceil(max(K_max, limit))), K_max, binding


def global_bound(p: WeierstrassParams, M, N: int, n: int,
                 prec: PrecisionConfig = DEFAULT_PRECISION) -> GlobalBudget:
    """Explicit ``sup_{|x|<=M} |W_N - W_{N,n}|`` bound.

    Raises :class:`PreconditionViolated` (with ``binding`` and ``min_n``) when
    ``n < max(4M/pi, K_max)``.  ``K_max`` grows like ``(b^N pi M)^2 / 2``, so
    the admissible ``n`` explodes with ``N``.
    """
    n = _check_n(n)
    min_n, K_max, binding = global_min_n(p, M, N, prec)
    if n < min_n:
        raise PreconditionViolated(
            f"n = {n} violates {binding} (need n >= {min_n}, K_max = {float(K_max):.6g})",
            binding=binding, min_n=min_n,
        )
    S1, S2 = global_sums(p, M, N, prec)
    with prec.context():
        one = mpfr(1)
        bound = gmpy2.exp(one) / n * S1 + gmpy2.sqrt(gmpy2.exp(one)) / n ** 2 * S2
    return GlobalBudget(S1, S2, K_max, bound, min_n, n)


def _super_point_error(k, p, M, N, n, count, bits):
    with gmpy2.context(precision=bits):
        x = grid_point(M, k, count)
        re, im = _truncated_sum(p, N, x)
        w = eval_super_weierstrass(p, N, n, x, PrecisionConfig(bits))
        r = gmpy2.exp(w.log_modulus)
        s, c = gmpy2.sin_cos(w.phase)
        return gmpy2.hypot(r * c - re, r * s - im)


def _single_point_error(k, n, alpha, M, count, bits):
    with gmpy2.context(precision=bits):
        x = grid_point(M, k, count)
        f = _fn_polar(n, alpha, x / n)
        r = gmpy2.exp(f.log_modulus)
        s, c = gmpy2.sin_cos(f.phase)
        ts, tc = gmpy2.sin_cos(alpha * x)
        return gmpy2.hypot(r * c - tc, r * s - ts)


def _check_grid(M, n, grid_points, require_bound_domain):
    if int(grid_points) != grid_points or grid_points < 2:
        raise ValidationError(f"grid_points must be an integer >= 2, got {grid_points!r}")
    _check_positive_M(M)
    if require_bound_domain:
        limit = _four_m_over_pi(M)
        if n < limit:
            raise PreconditionViolated(
                f"n = {n} violates n >= 4M/pi = {float(limit):.6g}",
                binding="n >= 4M/pi", min_n=int(gmpy2.ceil(limit)),
            )
    elif M / n >= gmpy2.const_pi() / 2:
        raise DomainError("grid reaches |x/n| >= pi/2")


def empirical_sup_error(p: WeierstrassParams, M, N: int, n: int, grid_points: int,
                        prec: PrecisionConfig = DEFAULT_PRECISION, workers=None,
                        require_bound_domain: bool = True):
    """Max of ``|W_N(x) - W_{N,n}(x)|`` over a uniform grid of ``[-M, M]``.

    Returns ``(sup_err, argmax_x)``; ties go to the leftmost point, so the
    result is the same for any ``workers``.  The grid spacing is ``2M/(G-1)``;
    the error function is Lipschitz with constant at most about
    ``sum a^m b^m pi (1 + |W_{N,n}|)``, which bounds what a finer grid could add.
    ``require_bound_domain=False`` drops the ``n >= 4M/pi`` hypothesis and only
    asks that the evaluator be defined.
    """
    n = _check_n(n)
    with prec.context():
        M = real(M)
        _check_grid(M, n, grid_points, require_bound_domain)
    fn = partial(_super_point_error, p=p, M=M, N=int(N), n=n, count=int(grid_points),
                 bits=prec.mantissa_bits)
    err, k = grid_argmax(fn, int(grid_points), workers)
    with prec.context():
        return err, grid_point(M, k, int(grid_points))


def single_term_sup_error(n: int, alpha, M, grid_points: int,
                          prec: PrecisionConfig = DEFAULT_PRECISION, workers=None):
    """Max of ``|F_n(x; alpha) - exp(i alpha x)|`` over a uniform grid of ``[-M, M]``."""
    n = _check_n(n)
    with prec.context():
        M, alpha = real(M), real(alpha)
        _check_grid(M, n, grid_points, True)
    fn = partial(_single_point_error, n=n, alpha=alpha, M=M, count=int(grid_points),
                 bits=prec.mantissa_bits)
    err, k = grid_argmax(fn, int(grid_points), workers)
    with prec.context():
        return err, grid_point(M, k, int(grid_points))
