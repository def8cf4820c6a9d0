"""The canonical superoscillating sequence and its Lagrange-type cousin.

``F_n(x; alpha) = (cos(x/n) + i alpha sin(x/n))**n`` is band limited to
``[-1, 1]`` yet approximates ``exp(i alpha x)`` near the origin.  The
production evaluator :func:`eval_fn` uses the closed polar form, whose cost
does not depend on ``n``; :func:`eval_fn_sum` expands the binomial and is the
independent O(n) oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpfr

from .errors import CancellationToZero, DomainError, DuplicateNodes, ResourceLimit, ValidationError
from .numerics import (
    DEFAULT_PRECISION,
    CartesianComplex,
    LogPolarComplex,
    PrecisionConfig,
    _rescaled_sum,
    escalating,
    real,
)

__all__ = [
    "FourierTerm",
    "NodeSet",
    "EXPANSION_CAP",
    "eval_fn",
    "fourier_expansion",
    "eval_fn_sum",
    "local_wave_number",
    "superosc_boundary",
    "eval_lagrange_tn",
]

EXPANSION_CAP = 4096


def _check_order(n):
    if int(n) != n or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n!r}")
    return int(n)


def _fn_polar(n, alpha, u):
    """Log-polar ``(cos u + i alpha sin u)**n`` in the active context.

    Valid for ``|u| < pi`` whenever the base is nonzero; on ``|u| < pi/2`` the
    phase coincides with ``n * atan(alpha * tan(u))``.
    """
    s, c = gmpy2.sin_cos(u)
    arg = (alpha * alpha - 1) * s * s
    if arg <= -1:
        raise DomainError("F_n base is zero (alpha = 0 at x/n = +-pi/2)")
    return LogPolarComplex(n * gmpy2.log1p(arg) / 2, n * gmpy2.atan2(alpha * s, c))


def eval_fn(n: int, alpha, x, prec: PrecisionConfig = DEFAULT_PRECISION) -> LogPolarComplex:
    """``F_n(x; alpha)`` in log-polar form; requires ``|x/n| < pi/2``."""
    n = _check_order(n)
    with prec.context():
        alpha, x = real(alpha), real(x)
        u = x / n
        if abs(u) >= gmpy2.const_pi() / 2:
            raise DomainError(f"|x/n| = {float(abs(u)):.6g} must be < pi/2")
        return _fn_polar(n, alpha, u)


@dataclass(frozen=True)
class FourierTerm:
    coefficient: CartesianComplex
    frequency: mpfr

    def __post_init__(self):
        if not -1 <= self.frequency <= 1:
            raise ValidationError(f"frequency {self.frequency} outside the band [-1, 1]")


def _binomial_coefficients(n, alpha):
    # C_j(n; alpha) in the active context, j = 0..n
    p = (alpha + 1) / 2
    q = (1 - alpha) / 2
    return [gmpy2.comb(n, j) * p ** (n - j) * q ** j for j in range(n + 1)]


def _check_cap(n, cap):
    if n > cap:
        raise ResourceLimit(f"Fourier expansion of order {n} exceeds cap {cap}")


def fourier_expansion(n: int, alpha, prec: PrecisionConfig = DEFAULT_PRECISION,
                      cap: int = EXPANSION_CAP) -> list[FourierTerm]:
    """The ``n + 1`` binomial terms of ``F_n``, ordered by ``j``.

    Term ``j`` has coefficient ``binom(n, j) ((alpha+1)/2)**(n-j) ((1-alpha)/2)**j``
    and frequency ``1 - 2j/n``.
    """
    n = _check_order(n)
    _check_cap(n, cap)
    with prec.context():
        coefs = _binomial_coefficients(n, real(alpha))
        return [
            FourierTerm(CartesianComplex(c, mpfr(0)), mpfr(n - 2 * j) / n)
            for j, c in enumerate(coefs)
        ]


@lru_cache(maxsize=256)
def _cached_coefficients(n, alpha, bits):
    with gmpy2.context(precision=bits):
        coefs = _binomial_coefficients(n, alpha)
        total = sum(abs(c) for c in coefs)
    return coefs, total


def eval_fn_sum(n: int, alpha, x, prec: PrecisionConfig = DEFAULT_PRECISION,
                cap: int = EXPANSION_CAP) -> CartesianComplex:
    """``F_n(x; alpha)`` as the explicit superposition of ``n + 1`` waves.

    The coefficients alternate in sign and their absolute sum is
    ``max(|alpha|, 1)**n``, so the sum is taken with that many guard bits on
    top of the working precision.  If fewer than ``mantissa_bits`` bits of the
    result survive, the guarded precision is doubled (``max_escalations``
    times) before giving up.
    """
    n = _check_order(n)
    _check_cap(n, cap)
    with prec.context():
        alpha, x = real(alpha), real(x)
        growth = max(abs(alpha), mpfr(1))
        # extra log2(n) bits absorb the rounding of the phase recurrence below
        guard = int(gmpy2.ceil(n * gmpy2.log2(growth))) + n.bit_length() + 32
    start = PrecisionConfig(prec.mantissa_bits + guard, prec.max_escalations)
    for p in escalating(start):
        bits = p.mantissa_bits
        coefs, total = _cached_coefficients(n, alpha, bits)
        with p.context():
            # frequencies step by -2/n, so exp(i lambda_j x) = exp(ix) * exp(-2ix/n)^j
            ws, wc = gmpy2.sin_cos(-2 * x / n)
            zs, zc = gmpy2.sin_cos(x)
            re = im = mpfr(0)
            for c in coefs:
                re += c * zc
                im += c * zs
                zc, zs = zc * wc - zs * ws, zc * ws + zs * wc
            if gmpy2.hypot(re, im) >= total * gmpy2.exp2(prec.mantissa_bits - bits):
                with prec.context():
                    return CartesianComplex(+re, +im)
    raise CancellationToZero(f"Fourier sum of F_{n} cancelled beyond the guarded precision")


def local_wave_number(n: int, alpha, x, prec: PrecisionConfig = DEFAULT_PRECISION) -> mpfr:
    """Phase gradient ``alpha / (cos^2(x/n) + alpha^2 sin^2(x/n))``."""
    n = _check_order(n)
    with prec.context():
        alpha, x = real(alpha), real(x)
        s, c = gmpy2.sin_cos(x / n)
        den = c * c + alpha * alpha * s * s
        if den == 0:
            raise DomainError("local wave number undefined: alpha = 0 at a zero of cos(x/n)")
        return alpha / den


def superosc_boundary(n: int, alpha, prec: PrecisionConfig = DEFAULT_PRECISION) -> mpfr:
    """Half-width ``n * atan(1/sqrt(alpha))`` of the superoscillation window."""
    n = _check_order(n)
    with prec.context():
        alpha = real(alpha)
        if not alpha > 1:
            raise DomainError(f"superoscillation window needs alpha > 1, got {float(alpha)}")
        return n * gmpy2.atan(1 / gmpy2.sqrt(alpha))


@dataclass(frozen=True)
class NodeSet:
    """Distinct interpolation nodes in ``[-1, 1]``.

    Nodes are stored as exact mpfr values; the built-in families are rounded
    once, at ``bits`` precision, when the set is constructed.
    """

    nodes: tuple
    kind: str = "custom"

    def __post_init__(self):
        if self.kind not in ("equispaced", "chebyshev", "custom"):
            raise ValidationError(f"unknown node kind {self.kind!r}")
        if len(self.nodes) < 2:
            raise ValidationError("a node set needs at least two nodes")
        for h in self.nodes:
            if not -1 <= h <= 1:
                raise ValidationError(f"node {h} outside [-1, 1]")
        ordered = sorted(self.nodes)
        if any(u == v for u, v in zip(ordered, ordered[1:])):
            raise DuplicateNodes("interpolation nodes must be pairwise distinct")

    def __len__(self):
        return len(self.nodes)

    @classmethod
    def equispaced(cls, n: int, bits: int = 512) -> "NodeSet":
        """``h_j = 1 - 2j/n``, matching the frequencies of ``F_n``."""
        n = _check_order(n)
        with gmpy2.context(precision=bits):
            return cls(tuple(real(Fraction(n - 2 * j, n)) for j in range(n + 1)), "equispaced")

    @classmethod
    def chebyshev(cls, n: int, bits: int = 512) -> "NodeSet":
        """``h_j = cos((2j + 1) pi / (2n + 2))``, ``j = 0..n``."""
        n = _check_order(n)
        with gmpy2.context(precision=bits):
            pi = gmpy2.const_pi()
            return cls(tuple(gmpy2.cos((2 * j + 1) * pi / (2 * n + 2)) for j in range(n + 1)),
                       "chebyshev")

    @classmethod
    def custom(cls, nodes, bits: int = 512) -> "NodeSet":
        with gmpy2.context(precision=bits):
            return cls(tuple(real(h) for h in nodes), "custom")


@lru_cache(maxsize=64)
def _lagrange_log_coefficients(nodes, alpha, bits):
    # (log|coef_j|, coef_j < 0) via log sums; raw products overflow for n >~ 50
    out = []
    with gmpy2.context(precision=bits):
        for j, hj in enumerate(nodes):
            log_mod = mpfr(0)
            negatives = 0
            for k, hk in enumerate(nodes):
                if k == j:
                    continue
                num, den = hk - alpha, hk - hj
                log_mod += gmpy2.log(abs(num)) - gmpy2.log(abs(den))
                negatives += (num < 0) != (den < 0)
            out.append((log_mod, negatives % 2 == 1))
    return tuple(out)


def eval_lagrange_tn(nodes: NodeSet, alpha, x, prec: PrecisionConfig = DEFAULT_PRECISION) -> CartesianComplex:
    """Lagrange-type superoscillation ``T_n(x; alpha)`` over ``nodes``.

    ``sum_j [prod_{k != j} (h_k - alpha)/(h_k - h_j)] exp(i h_j x)``.  When
    ``alpha`` is itself a node the sum collapses to that node's exponential.
    """
    if not isinstance(nodes, NodeSet):
        nodes = NodeSet.custom(nodes)
    h = nodes.nodes
    for p in escalating(prec):
        bits = p.mantissa_bits
        with p.context():
            a, xr = real(alpha), real(x)
            for hk in h:
                if hk == a:
                    s, c = gmpy2.sin_cos(hk * xr)
                    with prec.context():
                        return CartesianComplex(+c, +s)
            pi = gmpy2.const_pi()
            coefs = _lagrange_log_coefficients(h, a, bits)
            terms = [
                LogPolarComplex(lm, hj * xr + (pi if negative else 0))
                for (lm, negative), hj in zip(coefs, h)
            ]
        out = _rescaled_sum([mpfr(0)] * len(terms), terms, bits)
        if out is None:
            continue
        with p.context():
            r = gmpy2.exp(out.log_modulus)
            s, c = gmpy2.sin_cos(out.phase)
            re, im = r * c, r * s
        with prec.context():
            return CartesianComplex(+re, +im)
    raise CancellationToZero(f"T_n sum over {len(h)} nodes cancelled below working precision")

