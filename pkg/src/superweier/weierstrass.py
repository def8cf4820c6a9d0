"""Weierstrass function ``W``, its truncation ``W_N`` and the superoscillating ``W_{N,n}``.

    W(x)       = sum_{m>=0} a**m exp(i b**m pi x)
    W_N(x)     = sum_{m=0..N} a**m exp(i b**m pi x)
    W_{N,n}(x) = sum_{m=0..N} a**m F_n(x; b**m pi)

``W`` and ``W_N`` are bounded by ``1/(1-a)`` and come back as
:class:`CartesianComplex`; ``W_{N,n}`` grows exponentially outside the
superoscillation window and comes back log-polar.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import gmpy2
from gmpy2 import mpfr

from .errors import CancellationToZero, DomainError, InvalidParams, InvalidTolerance, ValidationError
from .numerics import (
    DEFAULT_PRECISION,
    CartesianComplex,
    LogPolarComplex,
    PrecisionConfig,
    escalating,
    real,
    scaled_sum,
)
from .superosc import _fn_polar

__all__ = [
    "Strictness",
    "WeierstrassParams",
    "FrequencyIndex",
    "validate_params",
    "eval_truncated",
    "tail_terms_needed",
    "eval_weierstrass",
    "eval_super_weierstrass",
]


class Strictness(str, enum.Enum):
    STRICT = "strict"
    BASIC = "basic"


@dataclass(frozen=True)
class WeierstrassParams:
    """Validated ``(a, b)``; construct through :func:`validate_params`."""

    a: mpfr
    b: mpfr
    strictness: Strictness = Strictness.BASIC

    @property
    def ab3(self) -> mpfr:
        return self.a * self.b ** 3


@dataclass(frozen=True)
class FrequencyIndex:
    m: int
    alpha_m: mpfr

    @classmethod
    def of(cls, p: WeierstrassParams, m: int) -> "FrequencyIndex":
        """``alpha_m = b**m * pi`` at the active context precision."""
        return cls(m, p.b ** m * gmpy2.const_pi())


def validate_params(a, b, strictness="strict", prec: PrecisionConfig = DEFAULT_PRECISION) -> WeierstrassParams:
    """Check ``(a, b)``.

    ``basic`` requires ``0 < a < 1`` and ``b > 1``.  ``strict`` also demands the
    classical hypotheses: ``b`` an odd integer and ``a*b > 1 + 3*pi/2``.
    Raises :class:`InvalidParams` naming the first violated condition.
    """
    strictness = Strictness(strictness)
    with prec.context():
        a, b = real(a), real(b)
        if not 0 < a < 1:
            raise InvalidParams(f"need 0 < a < 1, got a = {a}")
        if not b > 1:
            raise InvalidParams(f"need b > 1, got b = {b}")
        if strictness is Strictness.STRICT:
            if not gmpy2.is_integer(b) or int(b) % 2 == 0:
                raise InvalidParams(f"strict mode needs b to be an odd integer, got b = {b}")
            threshold = 1 + 3 * gmpy2.const_pi() / 2
            if not a * b > threshold:
                raise InvalidParams(
                    f"strict mode needs a*b > 1 + 3*pi/2 = {float(threshold):.6f}, "
                    f"got a*b = {float(a * b):.6g}"
                )
    return WeierstrassParams(a, b, strictness)


def _check_index(N, name="N"):
    if int(N) != N or N < 0:
        raise ValidationError(f"{name} must be a nonnegative integer, got {N!r}")
    return int(N)


def _truncated_sum(p, N, x):
    # active context
    re = im = mpfr(0)
    for m in range(N + 1):
        weight = p.a ** m
        s, c = gmpy2.sin_cos(FrequencyIndex.of(p, m).alpha_m * x)
        re += weight * c
        im += weight * s
    return re, im


def eval_truncated(p: WeierstrassParams, N: int, x, prec: PrecisionConfig = DEFAULT_PRECISION) -> CartesianComplex:
    N = _check_index(N)
    with prec.context():
        return CartesianComplex(*_truncated_sum(p, N, real(x)))


def tail_terms_needed(p: WeierstrassParams, tol, prec: PrecisionConfig = DEFAULT_PRECISION) -> int:
    """Least ``N`` with ``a**(N+1) / (1-a) <= tol``."""
    with prec.context():
        tol = real(tol)
        if not tol > 0:
            raise InvalidTolerance(f"tolerance must be positive, got {tol}")
        # Closed-form guess, then settle the boundary exactly.
        N = max(int(gmpy2.floor(gmpy2.log(tol * (1 - p.a)) / gmpy2.log(p.a))) - 2, 0)
        while p.a ** (N + 1) / (1 - p.a) > tol:
            N += 1
        while N > 0 and p.a ** N / (1 - p.a) <= tol:
            N -= 1
        return N


def eval_weierstrass(p: WeierstrassParams, x, tol, prec: PrecisionConfig = DEFAULT_PRECISION):
    """``W(x)`` to within ``tol``; returns ``(value, N_used)``.

    ``N_used`` is fixed in advance from the geometric tail bound rather than by
    watching terms, so the truncation is deterministic.
    """
    N = tail_terms_needed(p, tol, prec)
    return eval_truncated(p, N, x, prec), N


def eval_super_weierstrass(p: WeierstrassParams, N: int, n: int, x,
                           prec: PrecisionConfig = DEFAULT_PRECISION) -> LogPolarComplex:
    """``W_{N,n}(x)`` summed in series order ``m = 0..N``; requires ``|x/n| < pi/2``.

    Terms are recomputed at doubled precision when the sum cancels.
    """
    N = _check_index(N)
    if int(n) != n or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    for q in escalating(prec):
        with q.context():
            xr = real(x)
            u = xr / n
            if abs(u) >= gmpy2.const_pi() / 2:
                raise DomainError(f"|x/n| = {float(abs(u)):.6g} must be < pi/2")
            terms = _super_terms(p, N, n, u)
        try:
            return scaled_sum(terms, q)
        except CancellationToZero:
            continue
    raise CancellationToZero(f"W_(N={N}, n={n}) cancelled to zero at x = {x}")


def _super_terms(p, N, n, u):
    # (a**m, F_n(x; b**m pi)) for m = 0..N, active context
    return [(p.a ** m, _fn_polar(n, FrequencyIndex.of(p, m).alpha_m, u)) for m in range(N + 1)]
