"""``chessboard`` command-line front end.

Subcommands: count, sum, converge, verify, field.  Output goes to stdout as
CSV (rows only, default) or JSON (full record).

Exit codes: 0 success, 2 usage error, 3 domain error, 4 verification
failure, 5 enumeration bound exceeded.
"""
from __future__ import annotations

import argparse
import datetime
import sys
from importlib import metadata

import numpy as np

from . import kernels
from .closedform import COMPONENTS, psi_component, psi_component_array, spinor_field
from .combinatorics import (
    ALL_DIRECTION_PAIRS,
    ENUMERATION_BOUND,
    DirectionPair,
    LatticeEndpoint,
    admissible_bends,
    count_paths,
    direction_symbol,
    enumerate_paths,
)
from .dirac import GridSpec, corrupted_field, independence_grid, residual_convergence
from .errors import DomainError, OracleScaleExceeded
from .output import OutputRecord, render
from .pathsum import (
    MODIFIED,
    ORIGINAL,
    SumSpec,
    convergence_scan,
    oracle_sum,
    path_sum,
    snap_endpoint,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_VERIFY = 4
EXIT_ORACLE_BOUND = 5

ORDER_WINDOW = (1.8, 2.2)


class VerificationFailed(Exception):
    pass


def default_threshold(h: float, m: float) -> float:
    """Residual ceiling at spacing ``h``.

    Calibrated on the exact solutions over t in [1, 2], margin 0.2, where the
    observed max residual is about 0.015, 0.23 and 6.0 times h**2 for
    m = 0.5, 1, 2; the ceiling leaves a 40x-700x allowance.
    """
    return 10.0 * h * h * max(1.0, m) ** 4


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _dirs_from(args):
    return DirectionPair.from_component(args.component)


def _complex_ref(value):
    return float(value.real), float(value.imag)


def cmd_count(args):
    rec = OutputRecord("count", _inputs(args))
    if (args.start is None) != (args.end is None):
        raise DomainError("give both --start and --end, or neither for all four pairs")
    pairs = ALL_DIRECTION_PAIRS if args.start is None else (DirectionPair(args.start, args.end),)
    endpoint = LatticeEndpoint(args.P, args.Q)
    if args.oracle and endpoint.N > args.bound:
        raise OracleScaleExceeded(endpoint.N, args.bound)
    for dirs in pairs:
        bends = [args.R] if args.R is not None else list(admissible_bends(endpoint, dirs))
        oracle = None
        if args.oracle:
            oracle = {}
            for path in enumerate_paths(endpoint, dirs, args.bound):
                oracle[path.R] = oracle.get(path.R, 0) + 1
        for R in bends:
            n = count_paths(endpoint, dirs, R)
            row = dict(start=direction_symbol(dirs.start), end=direction_symbol(dirs.end), R=R, count=n)
            if oracle is not None:
                row.update(oracle_count=oracle.get(R, 0), match=oracle.get(R, 0) == n)
            rec.add(**row)
    return rec


def cmd_sum(args):
    rec = OutputRecord("sum", _inputs(args))
    dirs = _dirs_from(args)
    ep = snap_endpoint(args.x, args.t, args.N, args.strict_endpoint)
    spec = SumSpec(ep, dirs, args.m, args.convention, args.r_max)
    res = path_sum(spec)
    ref = psi_component(ep.x, args.t, args.m, dirs.component)
    if args.convention == ORIGINAL:
        # raw original sums approach (i m eps) times the modified limit
        ref = 1j * spec.step * ref
    row = dict(
        N=ep.N, P=ep.P, Q=ep.Q, realized_x=float(ep.x),
        re=float(res.value.real), im=float(res.value.imag),
        closed_form_re=float(ref.real), closed_form_im=float(ref.imag),
        abs_error=float(abs(res.value - ref)), status=res.status,
    )
    if args.oracle:
        orc = oracle_sum(spec, args.bound)
        row.update(oracle_re=float(orc.value.real), oracle_im=float(orc.value.imag))
    rec.add(**row)
    return rec


def _schedule(args):
    if args.N_list:
        return args.N_list
    return [int(round(args.N_start * args.N_factor**k)) for k in range(args.N_count)]


def cmd_converge(args):
    rec = OutputRecord("converge", _inputs(args))
    scan = convergence_scan(args.x, args.t, args.m, _dirs_from(args), _schedule(args), args.strict_endpoint)
    for r, p in zip(scan.records, scan.local_orders):
        rec.add(kind="record", N=r.N, P=r.P, Q=r.Q, realized_x=float(r.realized_x),
                re=float(r.value.real), im=float(r.value.imag),
                ref_re=float(r.reference.real), ref_im=float(r.reference.imag),
                abs_error=float(r.abs_error), order=p)
    rec.add(kind="fit", order=scan.order)
    return rec


def cmd_verify(args):
    rec = OutputRecord("verify", _inputs(args))
    grid = GridSpec(args.t_min, args.t_max, args.margin, max(args.h_list))
    grid.validate()
    solutions = (1, 2) if args.solution == "both" else (int(args.solution),)
    h_min = min(args.h_list)
    threshold = args.threshold if args.threshold is not None else default_threshold(h_min, args.m)
    all_ok = True
    for which in solutions:
        if args.corrupt:
            field = corrupted_field(args.m, args.corrupt, which)
        else:
            field = spinor_field(args.m, which)
        conv = residual_convergence(field, args.m, grid, args.h_list)
        for r in conv.reports:
            rec.add(kind="residual", solution=which, h=r.h, max_abs=r.max_abs, rms=r.rms,
                    sample_count=r.sample_count)
        finest = min(conv.reports, key=lambda r: r.h)
        if all(r.max_abs == 0 for r in conv.reports):
            ok = True
        else:
            ok = (conv.order is not None
                  and ORDER_WINDOW[0] <= conv.order <= ORDER_WINDOW[1]
                  and finest.max_abs < threshold)
        all_ok &= ok
        rec.add(kind="fit", solution=which, h=finest.h, max_abs=finest.max_abs, order=conv.order, passed=ok)
    det_min, n = independence_grid(args.m, grid)
    rec.add(kind="independence", h=grid.h, sample_count=n, det_min=det_min, passed=det_min > 0)
    if not all_ok:
        raise VerificationFailed(rec)
    return rec


def cmd_field(args):
    rec = OutputRecord("field", _inputs(args))
    if args.nt < 1 or args.nx < 1:
        raise DomainError("--nt and --nx must be positive")
    for t in np.linspace(args.t_min, args.t_max, args.nt):
        t = float(t)
        lo = -t if args.x_min is None else args.x_min
        hi = t if args.x_max is None else args.x_max
        xs = np.linspace(lo, hi, args.nx)
        if not args.continuation:
            xs = xs[np.abs(xs) <= t]
        if xs.size == 0:
            continue
        vals = psi_component_array(xs, t, args.m, args.component, continuation=args.continuation)
        for x, v in zip(xs, vals):
            rec.add(x=float(x), t=t, re=float(v.real), im=float(v.imag))
    return rec


def _inputs(args):
    skip = {"func", "format", "no_meta", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _common(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--no-meta", action="store_true", help="omit the JSON metadata section")


def _point_flags(p):
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--component", choices=COMPONENTS, required=True)
    p.add_argument("--strict-endpoint", action="store_true",
                   help="fail instead of rounding P = N(1+x/t)/2 to an integer")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chessboard", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="exact path counts by bend number")
    p.add_argument("--P", type=int, required=True)
    p.add_argument("--Q", type=int, required=True)
    p.add_argument("--start", choices=("+", "-"))
    p.add_argument("--end", choices=("+", "-"))
    g = p.add_mutually_exclusive_group()
    g.add_argument("--R", type=int)
    g.add_argument("--all-R", action="store_true", help="every parity-admissible R (default)")
    p.add_argument("--oracle", action="store_true", help="cross-check against exhaustive enumeration")
    p.add_argument("--bound", type=int, default=ENUMERATION_BOUND)
    _common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("sum", help="finite-N bend-amplitude sum")
    _point_flags(p)
    p.add_argument("--convention", choices=(MODIFIED, ORIGINAL), default=MODIFIED)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--r-max", type=int)
    p.add_argument("--oracle", action="store_true", help="add the per-path product sum")
    p.add_argument("--bound", type=int, default=ENUMERATION_BOUND)
    _common(p)
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("converge", help="modified sums against the closed form over N")
    _point_flags(p)
    p.add_argument("--N-list", type=_int_list)
    p.add_argument("--N-start", type=int, default=100)
    p.add_argument("--N-factor", type=float, default=2.0)
    p.add_argument("--N-count", type=int, default=4)
    _common(p)
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("verify", help="finite-difference Dirac residuals of Psi1/Psi2")
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--t-min", type=float, default=1.0)
    p.add_argument("--t-max", type=float, default=2.0)
    p.add_argument("--margin", type=float, default=0.2)
    p.add_argument("--h-list", type=_float_list, default=[4e-3, 2e-3, 1e-3])
    p.add_argument("--solution", choices=("1", "2", "both"), default="both")
    p.add_argument("--threshold", type=float, help="max residual allowed at the finest h")
    p.add_argument("--corrupt", choices=("cosine", "scale"), help=argparse.SUPPRESS)
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("field", help="sample a closed-form component on a grid")
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--component", choices=COMPONENTS, required=True)
    p.add_argument("--t-min", type=float, default=1.0)
    p.add_argument("--t-max", type=float, default=1.0)
    p.add_argument("--nt", type=int, default=1)
    p.add_argument("--x-min", type=float)
    p.add_argument("--x-max", type=float)
    p.add_argument("--nx", type=int, default=201)
    p.add_argument("--continuation", action="store_true", help="allow |x| > t via the analytic continuation")
    _common(p)
    p.set_defaults(func=cmd_field)
    return parser


def _meta():
    try:
        version = metadata.version("artifact")
    except metadata.PackageNotFoundError:
        version = "unknown"
    return {
        "generated_utc": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
        "package_version": version,
        "kernel_backend": kernels.BACKEND,
    }


def _emit(record, args, out):
    if args.format == "json" and not args.no_meta:
        record.meta = _meta()
    out.write(render(record, args.format))


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        record = args.func(args)
    except VerificationFailed as exc:
        _emit(exc.args[0], args, out)
        print("verification failed", file=sys.stderr)
        return EXIT_VERIFY
    except OracleScaleExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ORACLE_BOUND
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    _emit(record, args, out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
