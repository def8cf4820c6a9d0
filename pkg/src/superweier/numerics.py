"""High-dynamic-range complex arithmetic on top of MPFR (via gmpy2).

Values that can grow like ``exp(10**4)`` are carried as :class:`LogPolarComplex`
(natural-log modulus, unreduced phase).  Bounded values use
:class:`CartesianComplex`.  All reals are ``gmpy2.mpfr``; the working precision
is set per call from a :class:`PrecisionConfig`, through gmpy2's thread-local
contexts, so nothing here touches global state.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import gmpy2
from gmpy2 import mpfr

from .errors import CancellationToZero, DomainError, Overflow, ValidationError, ZeroValue

__all__ = [
    "PrecisionConfig",
    "DEFAULT_PRECISION",
    "CartesianComplex",
    "LogPolarComplex",
    "real",
    "logpolar_from_cartesian",
    "to_cartesian",
    "scaled_sum",
    "escalating",
]


@dataclass(frozen=True)
class PrecisionConfig:
    """Working precision of all internal reals.

    ``max_escalations`` is how many times the mantissa may be doubled when a
    sum is found to have cancelled below half the working precision.
    """

    mantissa_bits: int = 128
    max_escalations: int = 3

    def __post_init__(self):
        if int(self.mantissa_bits) != self.mantissa_bits or self.mantissa_bits < 64:
            raise ValidationError(f"mantissa_bits must be an integer >= 64, got {self.mantissa_bits}")
        if int(self.max_escalations) != self.max_escalations or self.max_escalations < 0:
            raise ValidationError(f"max_escalations must be a nonnegative integer, got {self.max_escalations}")

    def context(self, bits=None):
        """gmpy2 context manager at ``bits`` (default: ``mantissa_bits``)."""
        return gmpy2.context(precision=int(bits or self.mantissa_bits))


DEFAULT_PRECISION = PrecisionConfig()


def escalating(prec: PrecisionConfig) -> Iterator[PrecisionConfig]:
    """Yield ``prec`` and its successive doublings, without further escalation."""
    bits = prec.mantissa_bits
    for _ in range(prec.max_escalations + 1):
        yield PrecisionConfig(bits, 0)
        bits *= 2


_PI_LITERAL = re.compile(
    r"^\s*(?P<sign>[+-])?\s*(?P<coef>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*pi"
    r"(?:\s*/\s*(?P<den>\d+(?:\.\d*)?))?\s*$",
    re.IGNORECASE,
)


def real(value) -> mpfr:
    """Convert ``value`` to an mpfr rounded to the active context precision.

    Strings may be decimal literals or multiples of pi (``"pi"``, ``"3pi"``,
    ``"-2.5*pi"``, ``"pi/4"``), so frequencies like ``b**m * pi`` never pass
    through a truncated double.
    """
    if isinstance(value, str):
        m = _PI_LITERAL.match(value)
        if m:
            out = gmpy2.const_pi()
            if m["coef"]:
                out = mpfr(m["coef"]) * out
            if m["den"]:
                out = out / mpfr(m["den"])
            return -out if m["sign"] == "-" else out
        try:
            out = mpfr(value.strip())
        except ValueError:
            raise ValidationError(f"cannot parse real number from {value!r}") from None
    elif isinstance(value, Fraction):
        out = mpfr(value.numerator) / mpfr(value.denominator)
    else:
        out = mpfr(value)
    if not gmpy2.is_finite(out):
        raise ValidationError(f"real number must be finite, got {value!r}")
    return +out


@dataclass(frozen=True)
class CartesianComplex:
    re: mpfr
    im: mpfr

    def __post_init__(self):
        if not (gmpy2.is_finite(mpfr(self.re)) and gmpy2.is_finite(mpfr(self.im))):
            raise DomainError("CartesianComplex components must be finite")

    @classmethod
    def from_complex(cls, z: complex) -> "CartesianComplex":
        return cls(mpfr(z.real), mpfr(z.imag))

    def __abs__(self):
        return gmpy2.hypot(self.re, self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self) -> "CartesianComplex":
        return CartesianComplex(self.re, -self.im)

    def __add__(self, other):
        return CartesianComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return CartesianComplex(self.re - other.re, self.im - other.im)


@dataclass(frozen=True)
class LogPolarComplex:
    """``exp(log_modulus) * exp(i * phase)``; the phase is not reduced mod 2 pi."""

    log_modulus: mpfr
    phase: mpfr

    def __post_init__(self):
        if not (gmpy2.is_finite(mpfr(self.log_modulus)) and gmpy2.is_finite(mpfr(self.phase))):
            raise DomainError("LogPolarComplex fields must be finite")

    def conjugate(self) -> "LogPolarComplex":
        return LogPolarComplex(self.log_modulus, -self.phase)

    def __mul__(self, other: "LogPolarComplex") -> "LogPolarComplex":
        return LogPolarComplex(self.log_modulus + other.log_modulus, self.phase + other.phase)

    def __complex__(self):
        return complex(to_cartesian(self, max_log_modulus=709))

    @property
    def log10_modulus(self):
        return self.log_modulus / gmpy2.log(mpfr(10))


def logpolar_from_cartesian(z, prec: PrecisionConfig = DEFAULT_PRECISION) -> LogPolarComplex:
    """Principal-argument log-polar form of a nonzero cartesian value."""
    if isinstance(z, complex):
        z = CartesianComplex.from_complex(z)
    if z.re == 0 and z.im == 0:
        raise ZeroValue("zero has no log-polar representation")
    with prec.context():
        return LogPolarComplex(gmpy2.log(gmpy2.hypot(z.re, z.im)), gmpy2.atan2(z.im, z.re))


def to_cartesian(z: LogPolarComplex, max_log_modulus=math.inf,
                 prec: PrecisionConfig = DEFAULT_PRECISION) -> CartesianComplex:
    if z.log_modulus > max_log_modulus:
        raise Overflow(
            f"log modulus {float(z.log_modulus):.6g} exceeds cap {max_log_modulus}; "
            "value only representable in log-polar form"
        )
    with prec.context():
        r = gmpy2.exp(z.log_modulus)
        s, c = gmpy2.sin_cos(z.phase)
        return CartesianComplex(r * c, r * s)


def _rescaled_sum(log_weights, terms, bits):
    # Factor out the dominant term (modulus and phase), so the partial sums live
    # in the unit disc scale and the result phase stays on the dominant branch.
    with gmpy2.context(precision=bits):
        logs = [lw + t.log_modulus for lw, t in zip(log_weights, terms)]
        k = max(range(len(logs)), key=logs.__getitem__)
        ref_log, ref_phase = logs[k], terms[k].phase
        re = im = mpfr(0)
        for lg, t in zip(logs, terms):
            r = gmpy2.exp(lg - ref_log)
            s, c = gmpy2.sin_cos(t.phase - ref_phase)
            re += r * c
            im += r * s
        modulus = gmpy2.hypot(re, im)
        if modulus < gmpy2.exp2(-bits / 2):
            return None
        return LogPolarComplex(ref_log + gmpy2.log(modulus), ref_phase + gmpy2.atan2(im, re))


def scaled_sum(terms: Iterable[tuple], prec: PrecisionConfig = DEFAULT_PRECISION) -> LogPolarComplex:
    """Sum ``weight * term`` over ``(weight, LogPolarComplex)`` pairs without overflow.

    The terms are added in the given order after dividing out the largest
    ``weight * |term|``.  If the rescaled sum falls below ``2**(-bits/2)`` the
    summation is repeated with the mantissa doubled, up to
    ``prec.max_escalations`` times, and :class:`CancellationToZero` is raised
    if it never clears the threshold.
    """
    terms = list(terms)
    if not terms:
        raise ValidationError("scaled_sum needs at least one term")
    if any(not w > 0 for w, _ in terms):
        raise ValidationError("scaled_sum weights must be strictly positive")
    values = [t for _, t in terms]
    for p in escalating(prec):
        with p.context():
            log_weights = [gmpy2.log(real(w)) for w, _ in terms]
        out = _rescaled_sum(log_weights, values, p.mantissa_bits)
        if out is not None:
            return out
    raise CancellationToZero(
        f"sum of {len(terms)} terms cancelled below working precision "
        f"after {prec.max_escalations} escalations"
    )
