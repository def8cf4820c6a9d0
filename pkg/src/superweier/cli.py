"""Command-line front end.

Exit codes: 0 success, 1 numerical failure, 2 invalid input.  Data files
carry no timestamps; provenance goes to a ``<output>.meta.json`` sidecar.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import platform
import sys
from datetime import datetime, timezone

import gmpy2

from . import __version__
from .bounds import global_bound, single_term_bound
from .errors import NumericalError, ValidationError
from .numerics import PrecisionConfig, real, to_cartesian
from .regimes import Schedule, iterated_limit_trace, joint_convergence_run, phase_diagram
from .superosc import NodeSet, eval_fn, eval_fn_sum, eval_lagrange_tn
from .svg import error_chart_svg, phase_svg
from .weierstrass import eval_super_weierstrass, eval_truncated, eval_weierstrass, validate_params

PREC_ENV = "SUPERWEIER_BITS"
SWEEP_HEADER = ["N", "n", "R_N", "sup_err_E1", "bound_E1", "tail_E2", "total_bound", "admissible"]
PHASE_HEADER = ["beta", "N", "n", "R_N", "log10_error_or_bound", "regime", "measured"]
LOG_PRINT_GUARD = 700 * math.log(10)


def fmt(x) -> str:
    """Shortest round-trip decimal for double-representable values, else 17 digits."""
    if x is None:
        return "nan"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    f = float(x)
    if math.isfinite(f) or math.isnan(f):
        return repr(f)
    return format(gmpy2.mpfr(x), ".16e")


def _precision(args) -> PrecisionConfig:
    bits = args.bits if args.bits is not None else int(os.environ.get(PREC_ENV, 128))
    return PrecisionConfig(bits)


def _float_list(text):
    try:
        return [v.strip() for v in text.split(",") if v.strip()]
    except AttributeError:  # pragma: no cover
        raise argparse.ArgumentTypeError(f"bad list {text!r}")


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise ValidationError(f"missing required option(s): {', '.join(missing)}")


def _params(args):
    _need(args, "a", "b")
    return validate_params(args.a, args.b, "strict" if args.strict else "basic")


def _write_text(path, text, args, kind):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    meta = {
        "command": args.command,
        "kind": kind,
        "argv": sys.argv[1:],
        "mantissa_bits": _precision(args).mantissa_bits,
        "package_version": __version__,
        "python": platform.python_version(),
        "gmpy2": gmpy2.version(),
        "created_utc": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    with open(path + ".meta.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _logpolar_fields(z, prec):
    if abs(z.log_modulus) > LOG_PRINT_GUARD:
        return "log10_modulus", fmt(z.log10_modulus), "phase", fmt(z.phase)
    c = to_cartesian(z, prec=prec)
    return "re", fmt(c.re), "im", fmt(c.im)


def cmd_eval(args) -> int:
    prec = _precision(args)
    if not args.x:
        raise ValidationError("give at least one --x point")
    lines = []
    for x in args.x:
        with prec.context():
            xr = real(x)
        extra = ""
        if args.what in ("fn", "sum"):
            _need(args, "n", "alpha")
            if args.what == "fn":
                c = to_cartesian(eval_fn(args.n, args.alpha, xr, prec), prec=prec)
            else:
                c = eval_fn_sum(args.n, args.alpha, xr, prec)
            k1, v1, k2, v2 = "re", fmt(c.re), "im", fmt(c.im)
            if args.compare:
                with prec.context():
                    s, co = gmpy2.sin_cos(real(args.alpha) * xr)
                    err = gmpy2.hypot(c.re - co, c.im - s)
                extra = f" target_re={fmt(co)} target_im={fmt(s)} abs_error={fmt(err)}"
        elif args.what == "lagrange":
            _need(args, "n", "alpha")
            nodes = NodeSet.chebyshev(args.n) if args.nodes == "chebyshev" else NodeSet.equispaced(args.n)
            c = eval_lagrange_tn(nodes, args.alpha, xr, prec)
            k1, v1, k2, v2 = "re", fmt(c.re), "im", fmt(c.im)
        elif args.what == "trunc":
            _need(args, "N")
            c = eval_truncated(_params(args), args.N, xr, prec)
            k1, v1, k2, v2 = "re", fmt(c.re), "im", fmt(c.im)
        elif args.what == "super":
            _need(args, "N", "n")
            z = eval_super_weierstrass(_params(args), args.N, args.n, xr, prec)
            k1, v1, k2, v2 = _logpolar_fields(z, prec)
        else:
            _need(args, "tol")
            c, N_used = eval_weierstrass(_params(args), xr, args.tol, prec)
            k1, v1, k2, v2 = "re", fmt(c.re), "im", fmt(c.im)
            extra = f" N_used={N_used}"
        lines.append(f"x={x} {k1}={v1} {k2}={v2}{extra}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_bound(args) -> int:
    prec = _precision(args)
    if args.kind == "single":
        _need(args, "n", "alpha", "M")
        b = single_term_bound(args.n, args.alpha, args.M, prec)
        payload = {"K": float(b.K), "J": float(b.J), "bound": float(b.bound)}
    else:
        _need(args, "n", "M", "N")
        g = global_bound(_params(args), args.M, args.N, args.n, prec)
        payload = {"S1": float(g.S1), "S2": float(g.S2), "K_max": float(g.K_max),
                   "min_n": g.min_n, "bound": float(g.bound)}
    _write_text(args.out, json.dumps(payload, indent=2, sort_keys=True) + "\n", args, "bound")
    return 0


def cmd_sweep(args) -> int:
    prec = _precision(args)
    if args.grid_points < 2:
        raise ValidationError(f"--grid-points must be >= 2, got {args.grid_points}")
    p = _params(args)
    _need(args, "M")
    if args.fixed_N is not None:
        _need(args, "n_list")
        trace = iterated_limit_trace(p, args.fixed_N, args.M, args.n_list, args.grid_points, prec,
                                     workers=args.workers)
    else:
        _need(args, "beta", "N_max")
        schedule = Schedule(float(args.c), float(args.p), float(args.beta))
        trace = joint_convergence_run(p, schedule, args.N_max, args.M, args.grid_points, prec,
                                      cap=args.cap, workers=args.workers)
    rows = [[r.N, r.n, fmt(r.R_N), fmt(r.sup_err_E1), fmt(r.bound_E1), fmt(r.tail_E2),
             fmt(r.total_bound), fmt(r.admissible)] for r in trace]
    _write_text(args.out, _csv_text(SWEEP_HEADER, rows), args, "sweep")
    if args.svg:
        xs = [r.n for r in trace]
        svg = error_chart_svg(xs, [r.sup_err_E1 and float(r.sup_err_E1) for r in trace],
                              [r.bound_E1 and float(r.bound_E1) for r in trace])
        _write_text(args.svg, svg, args, "sweep-svg")
    return 0


def cmd_phase(args) -> int:
    prec = _precision(args)
    p = _params(args)
    if args.beta_grid is None:
        with prec.context():
            wall = p.ab3
            betas = [float(wall * gmpy2.mpfr(args.b) ** k) for k in (-2, -1, 0, 1, 2)]
        betas = [b for b in betas if b > 1]
    else:
        betas = [float(b) for b in args.beta_grid]
    cells = phase_diagram(p, betas, args.N_max, args.M, prec, c=float(args.c), p_exp=float(args.p),
                          grid_points=args.grid_points, cap=args.cap, workers=args.workers,
                          measure_inadmissible=args.measure_inadmissible)
    prefix = args.out
    if args.format in ("csv", "both"):
        rows = [[fmt(c.beta), c.N, c.n, fmt(c.R_N), fmt(c.log10_error_or_bound), c.regime.value, c.measured]
                for c in cells]
        _write_text(None if prefix is None else prefix + ".csv", _csv_text(PHASE_HEADER, rows), args, "phase")
    if args.format in ("svg", "both"):
        if prefix is None:
            raise ValidationError("SVG output needs --out PREFIX")
        with prec.context():
            wall = float(p.ab3)
        _write_text(prefix + ".svg", phase_svg(cells, wall, title=f"a={args.a}, b={args.b}"), args, "phase-svg")
    return 0


def _add_common(sp, params=True):
    sp.add_argument("--bits", type=int, default=None,
                    help=f"working precision in bits (default: ${PREC_ENV} or 128)")
    if params:
        sp.add_argument("--a", type=str)
        sp.add_argument("--b", type=str)
        sp.add_argument("--strict", action="store_true",
                        help="require b odd and a*b > 1 + 3pi/2")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superweier", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate F_n, T_n, W_N, W_{N,n} or W at points")
    what = ev.add_mutually_exclusive_group(required=True)
    for flag, dest, text in [("--fn", "fn", "F_n(x; alpha), closed polar form"),
                             ("--sum", "sum", "F_n(x; alpha), explicit Fourier sum"),
                             ("--lagrange", "lagrange", "Lagrange-type T_n(x; alpha)"),
                             ("--trunc", "trunc", "truncated Weierstrass W_N"),
                             ("--super", "super", "superoscillating W_{N,n}"),
                             ("--weier", "weier", "Weierstrass W to a tolerance")]:
        what.add_argument(flag, dest="what", action="store_const", const=dest, help=text)
    _add_common(ev)
    ev.add_argument("--n", type=int)
    ev.add_argument("--N", type=int)
    ev.add_argument("--alpha", type=str, help="real or multiple of pi, e.g. 3pi")
    ev.add_argument("--x", type=str, nargs="+")
    ev.add_argument("--tol", type=str)
    ev.add_argument("--nodes", choices=["equispaced", "chebyshev"], default="equispaced")
    ev.add_argument("--compare", action="store_true", help="also print exp(i alpha x) and the error")
    ev.set_defaults(func=cmd_eval)

    bd = sub.add_parser("bound", help="explicit error bounds as JSON")
    kind = bd.add_mutually_exclusive_group(required=True)
    kind.add_argument("--single", dest="kind", action="store_const", const="single")
    kind.add_argument("--global", dest="kind", action="store_const", const="global")
    _add_common(bd)
    bd.add_argument("--n", type=int)
    bd.add_argument("--N", type=int)
    bd.add_argument("--alpha", type=str)
    bd.add_argument("--M", type=str)
    bd.add_argument("--out", type=str)
    bd.set_defaults(func=cmd_bound)

    sw = sub.add_parser("sweep", help="joint-limit or fixed-N sweep to CSV")
    _add_common(sw)
    sw.add_argument("--M", type=str)
    sw.add_argument("--fixed-N", dest="fixed_N", type=int, help="fixed-N sweep over --n-list")
    sw.add_argument("--n-list", dest="n_list", type=_int_list)
    sw.add_argument("--c", type=str, default="1")
    sw.add_argument("--p", type=str, default="1")
    sw.add_argument("--beta", type=str)
    sw.add_argument("--N-max", dest="N_max", type=int)
    sw.add_argument("--grid-points", dest="grid_points", type=int, default=2001)
    sw.add_argument("--workers", type=int, default=1)
    sw.add_argument("--cap", type=int, default=10 ** 9)
    sw.add_argument("--out", type=str)
    sw.add_argument("--svg", type=str, help="also write an error-versus-n chart")
    sw.set_defaults(func=cmd_sweep)

    ph = sub.add_parser("phase", help="regime map over schedule growth beta")
    _add_common(ph)
    ph.add_argument("--M", type=str, default="1")
    ph.add_argument("--beta-grid", dest="beta_grid", type=_float_list)
    ph.add_argument("--N-max", dest="N_max", type=int, default=4)
    ph.add_argument("--c", type=str, default="1")
    ph.add_argument("--p", type=str, default="0")
    ph.add_argument("--grid-points", dest="grid_points", type=int, default=401)
    ph.add_argument("--workers", type=int, default=1)
    ph.add_argument("--cap", type=int, default=10 ** 9)
    ph.add_argument("--measure-inadmissible", action="store_true")
    ph.add_argument("--format", choices=["both", "csv", "svg"], default="both")
    ph.add_argument("--out", type=str, help="output prefix; writes PREFIX.csv and PREFIX.svg")
    ph.set_defaults(func=cmd_phase)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        binding = getattr(exc, "binding", None)
        suffix = f" [binding: {binding}]" if binding else ""
        print(f"error: {exc}{suffix}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
