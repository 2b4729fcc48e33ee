"""Command-line front end.

Exit codes: 0 success, 2 bad arguments or malformed input, 3 domain
infeasibility, 4 I/O errors.  Errors are reported on stderr as a single JSON
line ``{"error": ..., "exit_code": ..., "message": ...}``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, NoReturn, TextIO

from . import __version__
from .bounds import Kind, RegimeTag, StatProfile, am_gm_gap_bound, extremal_sequence, geometric_mean_bounds, product_bounds
from .comparisons import evaluate_bounds, product_bound_comparison
from .errors import GmEnvelopeError, ParseError
from .finance import RobustParams, envelope_from_params, ingest_csv, robust_sweep, wealth_envelope
from .ladder import build_ladder, log_normalized_P
from .oracle import brute_force_extrema
from .render import envelope, render

EXIT_ARGS = 2
EXIT_IO = 4


class _CliExit(Exception):
    def __init__(self, code: str, exit_code: int, message: str) -> None:
        super().__init__(message)
        self.code = code
        self.exit_code = exit_code


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise _CliExit("InvalidArguments", EXIT_ARGS, f"{self.prog}: {message}")


def _emit_error(code: str, exit_code: int, message: str, stream: TextIO) -> int:
    line = json.dumps({"error": code, "exit_code": exit_code, "message": " ".join(str(message).split())})
    stream.write(line + "\n")
    return exit_code


def _profile(args: argparse.Namespace) -> StatProfile:
    return StatProfile(args.n, args.mu, args.sigma)


def _profile_echo(args: argparse.Namespace) -> dict:
    return {"n": args.n, "mu": args.mu, "sigma": args.sigma}


def _extremal_record(profile: StatProfile, kind: Kind) -> dict | None:
    try:
        seq = extremal_sequence(profile, kind)
    except GmEnvelopeError:
        return None
    return {
        "repeated_value": seq.repeated_value,
        "repeated_count": seq.repeated_count,
        "outlier_value": seq.outlier_value,
    }


def cmd_bounds(args: argparse.Namespace) -> dict:
    profile = _profile(args)
    b = product_bounds(profile)
    lower_gm, upper_gm = geometric_mean_bounds(profile)
    result = {
        "regime": b.regime.tag.value,
        "ratio": b.regime.ratio,
        "lower_product": b.lower_product,
        "upper_product": b.upper_product,
        "lower_log": b.lower_log,
        "upper_log": b.upper_log,
        "lower_attained": b.lower_attained,
        "lower_gm": lower_gm,
        "upper_gm": upper_gm,
        "gap_bound": am_gm_gap_bound(profile),
        "extremal_upper": _extremal_record(profile, Kind.UPPER),
        "extremal_lower": _extremal_record(profile, Kind.LOWER) if b.lower_attained else None,
    }
    return envelope("bounds", _profile_echo(args), result)


def cmd_ladder(args: argparse.Namespace) -> dict:
    ladder = build_ladder(_profile(args))
    rows = [
        {
            "i": e.i,
            "critical_value": e.value,
            "sign": e.sign,
            "log_abs": e.log_abs,
            "normalized": e.normalized,
            "positive": e.positive,
        }
        for e in ladder.entries
    ]
    result = {"ratio": ladder.profile.ratio, "ordered": ladder.ordered, "rows": rows}
    return envelope("ladder", _profile_echo(args), result)


def cmd_curves(args: argparse.Namespace) -> dict:
    n = args.n
    t_max = args.t_max if args.t_max is not None else 1.0 / math.sqrt(n - 1)
    types = args.types or list(range(1, n))
    rows = []
    for k in range(args.points + 1):
        t = t_max * k / args.points
        row: dict[str, Any] = {"t": t}
        for i in types:
            sign, log_abs = log_normalized_P(i, n, t)
            row[f"P{i}"] = 0.0 if sign == 0 else sign * math.exp(log_abs)
        rows.append(row)
    inputs = {"n": n, "t_max": t_max, "points": args.points, "types": types}
    return envelope("curves", inputs, {"rows": rows})


def cmd_verify(args: argparse.Namespace) -> dict:
    report = brute_force_extrema(_profile(args), args.count, args.seed)
    result = {
        "regime": report.regime,
        "requested": report.requested,
        "all_positive_count": report.all_positive_count,
        "min_product_log": report.min_product_log,
        "max_product_log": report.max_product_log,
        "lower_log": report.lower_log,
        "upper_log": report.upper_log,
        "containment_violations": report.containment_violations,
        "forced_positive_ok": report.forced_positive_ok,
        "seed": report.seed,
    }
    inputs = {**_profile_echo(args), "count": args.count, "seed": args.seed}
    return envelope("verify", inputs, result)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _read_sequence(text: str) -> list[float]:
    values = []
    for line_no, line in enumerate(text.splitlines(), 1):
        field = line.strip()
        if not field:
            continue
        try:
            values.append(float(field.replace("−", "-")))
        except ValueError:
            raise ParseError(f"not a number: {field!r}", line=line_no) from None
    return values


def cmd_compare(args: argparse.Namespace) -> dict:
    values = _read_sequence(_read_text(args.input))
    report = evaluate_bounds(values)
    prod = product_bound_comparison(values)
    p = report.sequence_profile
    result = {
        "n": p.n,
        "mu": p.mu,
        "sigma": p.sigma,
        "seq_min": report.seq_min,
        "seq_max": report.seq_max,
        "geometric_mean": report.geometric_mean,
        "gap_actual": report.gap_actual,
        "gap_corollary1": report.gap_corollary1,
        "gap_aldaz": report.gap_aldaz,
        "cf_lower": report.cf_lower,
        "cf_upper": report.cf_upper,
        "tightest_upper_on_gap": report.tightest_upper_on_gap,
        "product": {
            "actual": prod.actual_product,
            "sharp_lower": prod.sharp_lower,
            "sharp_upper": prod.sharp_upper,
            "cf_lower": prod.cf_lower,
            "cf_upper": prod.cf_upper,
            "in_sharp": prod.in_sharp,
            "in_cf": prod.in_cf,
        },
    }
    return envelope("compare", {"input": args.input}, result)


def cmd_finance_envelope(args: argparse.Namespace) -> dict:
    if args.input is not None:
        series = ingest_csv(_read_text(args.input), period_label=args.period)
        env = wealth_envelope(series)
        inputs = {"input": args.input, "period": args.period}
    else:
        if args.n is None or args.mu_n is None or args.sigma_n is None:
            raise _CliExit("InvalidArguments", EXIT_ARGS, "give a CSV input or all of --n, --mu-n, --sigma-n")
        env = envelope_from_params(args.n, args.mu_n, args.sigma_n)
        inputs = {"n": args.n, "mu_n": args.mu_n, "sigma_n": args.sigma_n}
    return envelope("finance envelope", inputs, env.as_record())


def _doubling_grid(lo: int, hi: int) -> list[int]:
    out = []
    n = lo
    while n <= hi:
        out.append(n)
        n *= 2
    return out


def cmd_finance_robust(args: argparse.Namespace) -> dict:
    if (args.growth_mean is None) == (args.mean_return is None):
        raise _CliExit("InvalidArguments", EXIT_ARGS, "give exactly one of --growth-mean, --mean-return")
    if args.growth_mean is not None:
        params = RobustParams(args.growth_mean, args.sigma0, args.epsilon)
    else:
        params = RobustParams.from_mean_return(args.mean_return, args.sigma0, args.epsilon)
    if args.n_min < 2 or args.n_max < args.n_min:
        raise _CliExit("InvalidArguments", EXIT_ARGS, "need 2 <= --n-min <= --n-max")
    rows = [{"n": n, "log_value": lv, "value": v} for n, lv, v in robust_sweep(params, _doubling_grid(args.n_min, args.n_max))]
    inputs = {
        "growth_mean": params.growth_mean,
        "sigma0": params.sigma0,
        "epsilon": params.epsilon,
        "n_min": args.n_min,
        "n_max": args.n_max,
    }
    return envelope("finance robust", inputs, {"decays": params.decays, "rows": rows})


def _add_format(p: argparse.ArgumentParser, default: str = "json") -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default=default)


def _add_profile(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="number of terms (>= 2)")
    p.add_argument("--mu", type=float, required=True, help="arithmetic mean (> 0)")
    p.add_argument("--sigma", type=float, required=True, help="population standard deviation (divisor n)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gm-envelope", description="Sharp mean-variance bounds on products and geometric means.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="product and geometric-mean bounds for (n, mu, sigma)")
    _add_profile(p)
    _add_format(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("ladder", help="table of the n-1 critical values")
    _add_profile(p)
    _add_format(p)
    p.set_defaults(func=cmd_ladder)

    p = sub.add_parser("curves", help="normalized critical polynomials P_i(t) on a t-grid (CSV for plotting)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--types", type=int, nargs="*", help="type indices i (default: all)")
    p.add_argument("--t-max", type=float, default=None, help="default 1/sqrt(n-1)")
    p.add_argument("--points", type=int, default=64)
    _add_format(p, default="csv")
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("verify", help="brute-force sampling check of the bounds")
    _add_profile(p)
    p.add_argument("--count", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    _add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", help="compare gap bounds on a sequence (one number per line)")
    p.add_argument("input", nargs="?", default="-", help="file path, or - for stdin")
    _add_format(p)
    p.set_defaults(func=cmd_compare)

    fin = sub.add_parser("finance", help="investment-return envelopes")
    fsub = fin.add_subparsers(dest="finance_command", required=True)

    p = fsub.add_parser("envelope", help="terminal-wealth envelope from a CSV of returns or from parameters")
    p.add_argument("input", nargs="?", default=None, help="CSV file of returns, or - for stdin")
    p.add_argument("--period", default="", help="label for the period, e.g. daily")
    p.add_argument("--n", type=int)
    p.add_argument("--mu-n", type=float, help="mean per-period return")
    p.add_argument("--sigma-n", type=float, help="population standard deviation of returns")
    _add_format(p)
    p.set_defaults(func=cmd_finance_envelope)

    p = fsub.add_parser("robust", help="robust relative upper envelope over a doubling n-grid")
    p.add_argument("--growth-mean", type=float, help="estimated mean growth factor, e.g. 1.0003")
    p.add_argument("--mean-return", type=float, help="estimated mean return, e.g. 0.0003")
    p.add_argument("--sigma0", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--n-min", type=int, default=1 << 10)
    p.add_argument("--n-max", type=int, default=1 << 20)
    _add_format(p, default="csv")
    p.set_defaults(func=cmd_finance_robust)
    return parser


def main(argv: list[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        env = args.func(args)
    except _CliExit as exc:
        return _emit_error(exc.code, exc.exit_code, str(exc), stderr)
    except GmEnvelopeError as exc:
        return _emit_error(exc.code, exc.exit_code, str(exc), stderr)
    except (OSError, UnicodeDecodeError) as exc:
        return _emit_error("IOError", EXIT_IO, str(exc), stderr)
    stdout.write(render(env, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
