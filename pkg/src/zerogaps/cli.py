"""Command-line front end.

Every command prints one report, as key-sorted JSON or as CSV with a
header row. Floats carry 9 significant digits. Exit codes: 0 success,
2 domain or input errors (a JSON error object goes to stderr), 64 bad
usage, 74 file I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from . import arithmetic, asymptotic, bounds, hfun, zeros
from .errors import ZeroGapsError
from .numerics import QuadSpec

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_USAGE = 64
EXIT_IO = 74

COMMANDS = (
    "eval-h",
    "table",
    "optimize-theta",
    "optimize-vartheta",
    "asymptotic",
    "discrete",
    "zeros-stats",
    "counting",
)


class UsageError(Exception):
    pass


@dataclass
class Report:
    data: Dict[str, Any]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    columns: List[str] = field(default_factory=list)


def fmt_float(x: float) -> float:
    if not math.isfinite(x):
        return x
    return float(f"{x:.9g}")


def _round(obj):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def _csv_cell(v):
    if isinstance(v, float):
        return f"{v:.9g}"
    if v is None:
        return ""
    return v


def emit(report: Report, fmt: str) -> bytes:
    if fmt == "json":
        return (json.dumps(_round(report.data), sort_keys=True) + "\n").encode()
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    columns = report.columns or sorted(report.data)
    writer.writerow(columns)
    rows = report.rows if report.columns else [report.data]
    for row in rows:
        writer.writerow([_csv_cell(row.get(c)) for c in columns])
    return buf.getvalue().encode()


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _quad(args) -> QuadSpec:
    return QuadSpec(abs_tol=args.abs_tol)


def cmd_eval_h(args) -> Report:
    p = hfun.HParams(args.c, args.ell, args.delta, _quad(args))
    h = hfun.h_plus(p) if args.kind == "plus" else hfun.h_minus(p)
    data = {"kind": args.kind, "c": args.c, "ell": args.ell, "delta": args.delta, "h": h}
    if args.certified_k is not None:
        scheme = bounds.BoundScheme(args.certified_k, args.mode)
        if args.kind == "plus":
            data["certified_bound"] = bounds.certified_h_plus_upper(args.c, args.ell, args.delta, scheme)
        else:
            data["certified_bound"] = bounds.certified_h_minus_lower(args.c, args.ell, args.delta, scheme)
        data["k"] = args.certified_k
        data["mode"] = args.mode
    return Report(data)


def cmd_table(args) -> Report:
    rows = hfun.parse_rows(args.rows)
    digits = args.sig_digits or None
    result = hfun.build_table(args.kind, rows, args.delta, _quad(args), digits) if rows else None
    out = [asdict(r) for r in result.rows] if result else []
    errs = [{"r": r, "ell": ell, "message": msg} for r, ell, msg in (result.errors if result else [])]
    return Report({"kind": args.kind, "delta": args.delta, "rows": out, "errors": errs},
                  rows=out, columns=["r", "ell", "c", "h_value"])


def _parse_ks(text):
    try:
        ks = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--k expects comma-separated integers, got {text!r}") from None
    if not ks:
        raise UsageError("--k is empty")
    return ks


def _optimize(args, kind) -> Report:
    optimizer = bounds.optimize_theta if kind == "theta" else bounds.optimize_vartheta
    objective = bounds.theta_objective if kind == "theta" else bounds.vartheta_objective
    rows = []
    for k in _parse_ks(args.k):
        scheme = bounds.BoundScheme(k, args.mode)
        if args.at is not None:
            row = {"scheme": args.mode, "k": k, "b_star": args.at, "value": objective(args.at, scheme),
                   "boundary": None, "valid": True}
        else:
            res = optimizer(scheme, (args.b_min, args.b_max))
            row = {"scheme": args.mode, "k": k, "b_star": res.b_star, "value": res.theta,
                   "boundary": res.boundary, "valid": res.valid}
        cmp = bounds.compare_published(kind, k, row["value"])
        row["published"] = cmp["published"] if cmp else None
        row["deviation"] = cmp["deviation"] if cmp else None
        rows.append(row)
    return Report({"objective": kind, "results": rows}, rows=rows,
                  columns=["scheme", "k", "b_star", "value"])


def cmd_optimize_theta(args) -> Report:
    return _optimize(args, "theta")


def cmd_optimize_vartheta(args) -> Report:
    return _optimize(args, "vartheta")


def cmd_asymptotic(args) -> Report:
    quad = _quad(args)
    if args.optimize:
        res = asymptotic.optimize_B((args.b_min, args.b_max))
        return Report({"B_star": res.arg_star, "theta": res.val_star, "boundary": res.boundary})
    if args.B is None:
        raise UsageError("asymptotic needs --optimize or --B")
    B = args.B
    data = {
        "B": B,
        "delta": args.delta,
        "objective": asymptotic.asymptotic_objective(B),
        "integral_closed_form": asymptotic.closed_form_integral(B, args.delta),
        "integral_quadrature": asymptotic.asymptotic_integral(B, args.delta, quad),
    }
    if args.r is not None:
        data["r"] = args.r
        data["tail_E"] = asymptotic.tail_E(args.r, B, args.delta, quad)
        data["tail_majorant"] = asymptotic.tail_majorant(args.r, B)
        if args.theta is not None:
            data["theta"] = args.theta
            data["kind"] = args.kind
            data["h_bound"] = asymptotic.h_plus_large_r(args.r, B, args.theta, args.delta, quad, args.kind)
        if args.diagnostic:
            diag = asymptotic.large_r_diagnostic(args.r, B, args.delta, quad)
            data["finite_r_difference"] = diag["difference"]
            data["correction"] = diag["correction"]
    if args.settle_tol is not None:
        data["settle_tol"] = args.settle_tol
        data["settling_r"] = asymptotic.settling_r(B, args.settle_tol, args.delta)
    return Report(data)


def cmd_discrete(args) -> Report:
    log_t = args.logT if args.logT is not None else math.log(args.X) / (1.0 - args.delta)
    p = arithmetic.DiscreteParams(args.X, log_t, args.ell, args.sign, args.c)
    value = arithmetic.h_discrete(p)
    # integral counterpart at the matching delta = 1 - log X / log T
    delta = 1.0 - math.log(args.X) / log_t
    hp = hfun.HParams(args.c, args.ell, delta, _quad(args))
    integral = hfun.h_plus(hp) if args.sign == "plus" else hfun.h_minus(hp)
    data = {"X": args.X, "logT": log_t, "ell": args.ell, "sign": args.sign, "c": args.c,
            "h_discrete": value, "h_integral": integral, "difference": value - integral}
    if args.n is not None:
        data["n"] = args.n
        data["d_ell_n"] = arithmetic.d_ell(args.n, args.ell)
        data["von_mangoldt_n"] = arithmetic.von_mangoldt(args.n)
        data["liouville_n"] = arithmetic.liouville(args.n)
    return Report(data)


def _read_table(path) -> zeros.ZeroTable:
    if path == "-":
        return zeros.load_zeros(sys.stdin.buffer, source="<stdin>")
    return zeros.load_zeros_file(path)


def cmd_zeros_stats(args) -> Report:
    table = _read_table(args.input)
    rep = zeros.gap_report(table, args.r, args.theta, args.vartheta)
    data = asdict(rep)
    if args.n is not None:
        data["n"] = args.n
        data["gap_n"] = zeros.normalized_gap(table, args.n, args.r)
    return Report(data, rows=[data], columns=list(data))


def cmd_counting(args) -> Report:
    table = _read_table(args.input)
    data = asdict(zeros.counting_check(table, args.T))
    return Report(data, rows=[data], columns=list(data))


HANDLERS = {
    "eval-h": cmd_eval_h,
    "table": cmd_table,
    "optimize-theta": cmd_optimize_theta,
    "optimize-vartheta": cmd_optimize_vartheta,
    "asymptotic": cmd_asymptotic,
    "discrete": cmd_discrete,
    "zeros-stats": cmd_zeros_stats,
    "counting": cmd_counting,
}


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", "-o", default="-", help="output path, '-' for stdout")
    common.add_argument("--abs-tol", type=float, default=1e-9, help="quadrature absolute tolerance")

    parser = _Parser(prog="zerogaps", description="Gap bounds for zeta-zero ordinates.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval-h", parents=[common], help="evaluate h+ or h- at one point")
    p.add_argument("--kind", choices=("plus", "minus"), default="plus")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--ell", type=float, required=True)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--certified-k", type=int, default=None,
                   help="also report the closed-form chord bound with this many pieces")
    p.add_argument("--mode", choices=bounds.MODES, default=bounds.RIGOROUS)

    p = sub.add_parser("table", parents=[common], help="find certified c for (r, ell) rows")
    p.add_argument("--kind", choices=("plus", "minus"), default="plus")
    p.add_argument("--rows", required=True, help='comma list of r:ell, e.g. "1:2.2,2:2.8"')
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--sig-digits", type=int, default=4,
                   help="round c toward the certified side as the published tables do; 0 keeps it exact")

    for name, default_k, default_mode, b_max in (
        ("optimize-theta", "2", bounds.AS_PRINTED, 8.0),
        ("optimize-vartheta", "1", bounds.AS_PRINTED, 9.0),
    ):
        p = sub.add_parser(name, parents=[common], help=f"maximize the {name[9:]} objective over b")
        p.add_argument("--k", default=default_k, help="piece count, or a comma list of counts")
        p.add_argument("--mode", choices=bounds.MODES, default=default_mode)
        p.add_argument("--b-min", type=float, default=3.0)
        p.add_argument("--b-max", type=float, default=b_max)
        p.add_argument("--at", type=float, default=None, help="evaluate at this b instead of maximizing")

    p = sub.add_parser("asymptotic", parents=[common], help="large-r objective, integral and tail")
    p.add_argument("--optimize", action="store_true")
    p.add_argument("--b-min", type=float, default=0.5)
    p.add_argument("--b-max", type=float, default=4.0)
    p.add_argument("--B", type=float, default=None)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--r", type=float, default=None)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--kind", choices=("plus", "minus"), default="plus")
    p.add_argument("--diagnostic", action="store_true", help="report the finite-r weight difference")
    p.add_argument("--settle-tol", type=float, default=None)

    p = sub.add_parser("discrete", parents=[common], help="finite-X discrete functional")
    p.add_argument("--X", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--sign", choices=("plus", "minus"), default="plus")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--delta", type=float, default=0.1, help="sets log T = log X / (1 - delta)")
    group.add_argument("--logT", type=float, default=None)
    p.add_argument("--n", type=int, default=None, help="also report d_ell, Lambda and lambda at n")

    p = sub.add_parser("zeros-stats", parents=[common], help="normalized r-gap report for a zero table")
    p.add_argument("--input", "-i", required=True, help="zero table path, '-' for stdin")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--theta", type=float, default=bounds.THEOREM_THETA)
    p.add_argument("--vartheta", type=float, default=bounds.THEOREM_VARTHETA)
    p.add_argument("--n", type=int, default=None, help="also report the normalized gap at index n")

    p = sub.add_parser("counting", parents=[common], help="zero count up to T against N(T)")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--T", type=float, required=True)
    return parser


def _write(payload: bytes, output: str, stdout) -> None:
    if output == "-":
        stdout.write(payload)
        stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(output))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".zerogaps-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, output)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _error_object(kind: str, exc: BaseException, **extra) -> bytes:
    body = {"error": {"type": kind, "message": str(exc), **extra}}
    return (json.dumps(body, sort_keys=True) + "\n").encode()


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout.buffer
    stderr = stderr if stderr is not None else sys.stderr.buffer
    try:
        args = build_parser().parse_args(argv)
        report = HANDLERS[args.command](args)
        payload = emit(report, args.format)
        _write(payload, args.output, stdout)
    except UsageError as exc:
        stderr.write(_error_object("usage", exc))
        return EXIT_USAGE
    except ZeroGapsError as exc:
        extra = {}
        if getattr(exc, "line", None) is not None:
            extra["line"] = exc.line
        stderr.write(_error_object(type(exc).__name__, exc, **extra))
        return EXIT_DOMAIN
    except OSError as exc:
        stderr.write(_error_object("io", exc))
        return EXIT_IO
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(argv))
