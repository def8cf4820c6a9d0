"""Order of limits for ``W_{N,n}``: fixed-n divergence, iterated and joint limits.

With ``n`` fixed the series in ``N`` diverges off the origin (the term ratio
tends to ``a b^n``).  Taking ``n -> infinity`` first recovers ``W_N`` and then
``W``.  Along a schedule ``n_N`` the joint limit converges when
``R_N = (a b^3)^N / n_N -> 0``; ``beta = a b^3`` is the divergence wall.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import partial
from typing import NamedTuple, Optional

import gmpy2
from gmpy2 import mpfr

from ._grid import grid_argmax, grid_point
from .bounds import empirical_sup_error, global_bound, global_min_n
from .errors import BudgetExceeded, DomainError, InvalidParams, ValidationError
from .numerics import DEFAULT_PRECISION, PrecisionConfig, real, scaled_sum
from .superosc import _fn_polar
from .weierstrass import (
    FrequencyIndex,
    WeierstrassParams,
    _truncated_sum,
    eval_super_weierstrass,
    tail_terms_needed,
)

__all__ = [
    "Schedule",
    "RegimeClass",
    "TraceRow",
    "ConvergenceTrace",
    "ProbeResult",
    "PhaseCell",
    "DEFAULT_BUDGET",
    "ratio_sequence",
    "divergence_probe",
    "classify",
    "joint_convergence_run",
    "iterated_limit_trace",
    "iterated_limit_check",
    "phase_diagram",
]

DEFAULT_BUDGET = 10 ** 9

# Relative gap under which beta is taken to sit exactly on the wall a*b^3.
# Inputs arrive as decimal or binary literals, so exact equality is too brittle.
WALL_RTOL = 2.0 ** -40


@dataclass(frozen=True)
class Schedule:
    """``n_N = round(c * N**p * beta**N)``, rounding half away from zero."""

    c: float = 1.0
    p: float = 0.0
    beta: float = 2.0

    def __post_init__(self):
        if not self.c > 0:
            raise InvalidParams(f"schedule needs c > 0, got {self.c}")
        if not self.p >= 0:
            raise InvalidParams(f"schedule needs p >= 0, got {self.p}")
        if not self.beta > 1:
            raise InvalidParams(f"schedule needs beta > 1, got {self.beta}")

    def n_at(self, N: int, prec: PrecisionConfig = DEFAULT_PRECISION) -> int:
        if int(N) != N or N < 1:
            raise ValidationError(f"schedules are defined for N >= 1, got {N!r}")
        with prec.context():
            value = real(self.c) * mpfr(N) ** real(self.p) * real(self.beta) ** int(N)
            n = int(gmpy2.floor(value + mpfr(0.5)))
        if n < 1:
            raise InvalidParams(f"schedule gives n_{N} = {n} < 1")
        return n


class RegimeClass(str, enum.Enum):
    SUB_CRITICAL = "sub_critical"
    CRITICAL = "critical"
    SUPER_CRITICAL = "super_critical"


def classify(p: WeierstrassParams, s: Schedule, prec: PrecisionConfig = DEFAULT_PRECISION) -> RegimeClass:
    """Regime from the limit of ``R_N``, decided from the schedule parameters alone.

    ``R_N = (a b^3 / beta)^N / (c N^p)``: below the wall it blows up, above it
    vanishes, and on the wall it tends to ``1/c`` only when ``p = 0``.
    """
    with prec.context():
        gap = real(s.beta) / p.ab3 - 1
    if abs(gap) <= WALL_RTOL:
        return RegimeClass.CRITICAL if s.p == 0 else RegimeClass.SUPER_CRITICAL
    return RegimeClass.SUB_CRITICAL if gap < 0 else RegimeClass.SUPER_CRITICAL


def _ratio_R(p, N, n, prec):
    with prec.context():
        return p.ab3 ** N / n


def ratio_sequence(p: WeierstrassParams, n: int, x, m_max: int,
                   prec: PrecisionConfig = DEFAULT_PRECISION) -> list:
    """Moduli ratios ``|u_{m+1}(x) / u_m(x)|`` of consecutive series terms, ``m = 0..m_max``.

    Evaluated in the log domain; the limit is ``a b^n`` for ``x != 0``.
    """
    with prec.context():
        x = real(x)
        u = x / n
        if abs(u) >= gmpy2.const_pi():
            raise DomainError(f"ratio test needs |x/n| < pi, got {float(abs(u)):.6g}")
        s, c = gmpy2.sin_cos(u)
        s2, c2 = s * s, c * c
        pi2 = gmpy2.const_pi() ** 2
        log_a = gmpy2.log(p.a)
        logs = [gmpy2.log(c2 + p.b ** (2 * m) * pi2 * s2) for m in range(m_max + 2)]
        return [gmpy2.exp(log_a + n * (logs[m + 1] - logs[m]) / 2) for m in range(m_max + 1)]


class ProbeResult(NamedTuple):
    diverged: bool
    N_hit: Optional[int]
    partial_log_modulus: mpfr


def divergence_probe(p: WeierstrassParams, n: int, x, threshold_log, N_cap: int,
                     prec: PrecisionConfig = DEFAULT_PRECISION) -> ProbeResult:
    """Accumulate ``W_{N,n}(x)`` for ``N = 0..N_cap`` and report the first ``N``
    whose partial sum has log-modulus above ``threshold_log``.

    ``n`` stays fixed, so off the origin the partial sums blow up whenever
    ``a b^n > 1``; at ``x = 0`` they approach ``1/(1-a)``.
    """
    with prec.context():
        x = real(x)
        threshold_log = real(threshold_log)
        u = x / n
        if abs(u) >= gmpy2.const_pi():
            raise DomainError(f"need |x| < n*pi, got |x/n| = {float(abs(u)):.6g}")
        terms = [(p.a ** m, _fn_polar(n, FrequencyIndex.of(p, m).alpha_m, u)) for m in range(N_cap + 1)]
    running = None
    for N, term in enumerate(terms):
        running = scaled_sum([term] if running is None else [(1, running), term], prec)
        if running.log_modulus > threshold_log:
            return ProbeResult(True, N, running.log_modulus)
    return ProbeResult(False, None, running.log_modulus)


@dataclass(frozen=True)
class TraceRow:
    N: int
    n: int
    R_N: mpfr
    sup_err_E1: Optional[mpfr]
    bound_E1: Optional[mpfr]
    tail_E2: mpfr
    total_bound: Optional[mpfr]
    admissible: bool


@dataclass(frozen=True)
class ConvergenceTrace:
    rows: tuple

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def admissible_rows(self):
        return [r for r in self.rows if r.admissible]


def _tail(p, N, prec):
    with prec.context():
        return p.a ** (N + 1) / (1 - p.a)


def _trace_row(p, N, n, M, grid_points, prec, workers):
    min_n, _, _ = global_min_n(p, M, N, prec)
    tail = _tail(p, N, prec)
    R = _ratio_R(p, N, n, prec)
    if n < min_n:
        return TraceRow(N, n, R, None, None, tail, None, False)
    sup_err, _ = empirical_sup_error(p, M, N, n, grid_points, prec, workers)
    bound = global_bound(p, M, N, n, prec).bound
    with prec.context():
        total = bound + tail
    return TraceRow(N, n, R, sup_err, bound, tail, total, True)


def _check_budget(n, cap, where):
    if n > cap:
        raise BudgetExceeded(f"{where}: n = {n} exceeds the compute budget {cap}")


def joint_convergence_run(p: WeierstrassParams, s: Schedule, N_max: int, M, grid_points: int,
                          prec: PrecisionConfig = DEFAULT_PRECISION, cap: int = DEFAULT_BUDGET,
                          workers=None) -> ConvergenceTrace:
    """Measure ``W_{N, n_N}`` against ``W_N`` for ``N = 1..N_max``.

    Rows whose ``n_N`` misses ``max(4M/pi, K_max(N))`` are kept but flagged
    inadmissible and left unmeasured.
    """
    schedule = [(N, s.n_at(N, prec)) for N in range(1, int(N_max) + 1)]
    for N, n in schedule:
        _check_budget(n, cap, f"N = {N}")
    return ConvergenceTrace(tuple(_trace_row(p, N, n, M, grid_points, prec, workers) for N, n in schedule))


def iterated_limit_trace(p: WeierstrassParams, N: int, M, n_list, grid_points: int = 2001,
                         prec: PrecisionConfig = DEFAULT_PRECISION, workers=None) -> ConvergenceTrace:
    """Fixed ``N``, growing ``n``: every ``n`` is measured, bounds only where admissible."""
    n_list = [int(n) for n in n_list]
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValidationError("n_list must be strictly increasing")
    rows = []
    for n in n_list:
        row = _trace_row(p, N, n, M, grid_points, prec, workers)
        if not row.admissible:
            sup_err, _ = empirical_sup_error(p, M, N, n, grid_points, prec, workers)
            row = TraceRow(N, n, row.R_N, sup_err, None, row.tail_E2, None, False)
        rows.append(row)
    return ConvergenceTrace(tuple(rows))


def iterated_limit_check(p: WeierstrassParams, N: int, M, n_list,
                         prec: PrecisionConfig = DEFAULT_PRECISION, grid_points: int = 2001,
                         workers=None) -> list:
    """Grid sup of ``|W_{N,n} - W_N|`` for each ``n`` in ``n_list`` (the inner limit)."""
    trace = iterated_limit_trace(p, N, M, n_list, grid_points, prec, workers)
    return [row.sup_err_E1 for row in trace]


class PhaseCell(NamedTuple):
    beta: mpfr
    N: int
    n: int
    R_N: mpfr
    log10_error_or_bound: float
    regime: RegimeClass
    measured: str  # "measured", "inadmissible" or "budget_exceeded"


def _total_point_error(k, p, M, N, n, N_ref, count, bits):
    # |W_{N,n}(x) - W(x)| with W truncated at N_ref >= N
    with gmpy2.context(precision=bits):
        x = grid_point(M, k, count)
        re, im = _truncated_sum(p, N_ref, x)
        w = eval_super_weierstrass(p, N, n, x, PrecisionConfig(bits))
        # log10 of the difference; W_{N,n} may be astronomically large
        r = gmpy2.exp(w.log_modulus)
        s, c = gmpy2.sin_cos(w.phase)
        return gmpy2.hypot(r * c - re, r * s - im)


def phase_diagram(p: WeierstrassParams, beta_grid, N_max: int, M,
                  prec: PrecisionConfig = DEFAULT_PRECISION, *, c=1.0, p_exp=0.0,
                  grid_points: int = 401, cap: int = DEFAULT_BUDGET, workers=None,
                  measure_inadmissible: bool = False, reference_tol=1e-12) -> list:
    """Regime map over ``beta`` (columns) and ``N = 1..N_max`` (rows).

    Each cell uses the schedule ``n_N = round(c N^p_exp beta^N)``.  Admissible
    cells carry the measured ``sup |W_{N,n_N} - W|`` (``W`` itself truncated so
    its tail is below ``reference_tol``); cells over budget carry the analytic
    ``bound_E1 + tail_E2`` if the bound applies; other cells carry NaN unless
    ``measure_inadmissible`` asks for a measurement wherever ``W_{N,n}`` is
    defined on the grid.
    """
    betas = list(beta_grid)
    with prec.context():
        values = [real(b) for b in betas]
    if any(not v > 1 for v in values):
        raise ValidationError("beta grid values must exceed 1")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValidationError("beta grid must be strictly increasing")
    with prec.context():
        M = real(M)
    N_ref = tail_terms_needed(p, reference_tol, prec)
    cells = []
    for beta, beta_value in zip(betas, values):
        s = Schedule(c, p_exp, beta)
        regime = classify(p, s, prec)
        for N in range(1, int(N_max) + 1):
            n = s.n_at(N, prec)
            R = _ratio_R(p, N, n, prec)
            min_n, _, _ = global_min_n(p, M, N, prec)
            admissible = n >= min_n
            status, value = "inadmissible", math.nan
            with prec.context():
                definable = M / n < gmpy2.const_pi() / 2
            if n > cap:
                status = "budget_exceeded"
                if admissible:
                    bound = global_bound(p, M, N, n, prec).bound
                    value = float(gmpy2.log10(bound + _tail(p, N, prec)))
            elif admissible or (measure_inadmissible and definable):
                fn = partial(_total_point_error, p=p, M=M, N=N, n=n, N_ref=max(N_ref, N),
                             count=int(grid_points), bits=prec.mantissa_bits)
                err, _ = grid_argmax(fn, int(grid_points), workers)
                status = "measured"
                with prec.context():
                    value = float(gmpy2.log10(err))
            cells.append(PhaseCell(beta_value, N, n, R, value, regime, status))
    return cells
