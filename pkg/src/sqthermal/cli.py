"""Command-line front end.

Usage::

    sqthermal norm   --nc 2 --r 0 --m 3 --variant add [--with-oracle]
    sqthermal pnd    --nc 2 --r 0 --m 0 --nmax 2 [--with-oracle] [--format json]
    sqthermal genfun --nc 1 --r 0.5 --f -0.69 [--with-oracle]
    sqthermal verify [--check purification --nc 1] [--tol 1e-8]
    sqthermal sweep  --nc 1 --r 0,0.25,0.5 --m 0:3 --variant add,sub

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error,
3 zero-norm state.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .analytics import expectation_exp_number, normalization, pnd_table
from .core import (
    DomainError,
    ParameterError,
    StateParams,
    TruncationError,
    Variant,
    ZeroNormError,
    validate_params,
)
from .fock_oracle import oracle_exp_number, oracle_norm_certified, oracle_pnd_certified
from .verification import CHECKS, run_checks

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_ZERO_NORM = 3
MAX_GRID_POINTS = 10**5


def fmt(x) -> str:
    """Number formatting for CSV cells: integers verbatim, floats at 17 significant digits."""
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return "%.17g" % x
    return "" if x is None else str(x)


def _json_value(x):
    if isinstance(x, np.ndarray):
        return [_json_value(v) for v in x.tolist()]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, dict):
        return {k: _json_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_value(v) for v in x]
    return x


def dump_json(obj) -> str:
    return json.dumps(_json_value(obj), indent=2) + "\n"


def dump_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _emit(text: str, output: str | None) -> None:
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(output, "w", newline="") as fh:
            fh.write(text)


def _int_or_auto(value: str):
    if value == "auto":
        return "auto"
    try:
        out = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'auto', got {value!r}") from None
    if out < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return out


def _params(args) -> StateParams:
    problems = [p for p in validate_params(args) if not p.startswith("warning")]
    if problems:
        raise ParameterError("; ".join(problems))
    return StateParams(args.n_c, args.r, args.m, args.variant)


def _param_fields(p: StateParams) -> dict:
    return {"n_c": p.n_c, "r": p.r, "m": p.m, "variant": p.variant.value}


def run_norm(args) -> int:
    p = _params(args)
    if p.is_zero_norm:
        raise ZeroNormError(f"zero-norm state: cannot subtract {p.m} photon(s) from the vacuum")
    report = _param_fields(p)
    report["norm_closed_form"] = normalization(p)
    if args.with_oracle:
        cert = oracle_norm_certified(p)
        report["norm_oracle"] = cert.value
        report["rel_diff"] = abs(report["norm_closed_form"] - cert.value) / abs(cert.value)
        report["oracle_dim"] = cert.dim
    if args.format == "json":
        text = dump_json(report)
    else:
        text = dump_csv(list(report), [list(report.values())])
    _emit(text, args.output)
    return EXIT_OK


def run_pnd(args) -> int:
    p = _params(args)
    dist = pnd_table(p, args.nmax)
    values = dist.probabilities
    header = ["n", "pnd_closed_form"]
    columns = [np.arange(len(values)), values]
    meta = {"params": _param_fields(p), "tail_bound": dist.tail_bound,
            "truncation": {"n_max": dist.n_max, "mode": "auto" if args.nmax == "auto" else "fixed"}}
    if args.with_oracle:
        cert = oracle_pnd_certified(p, dist.n_max)
        oracle = cert.value.clip(min=0.0)
        header += ["pnd_oracle", "abs_diff"]
        columns += [oracle, np.abs(values - oracle)]
        meta["truncation"]["oracle_dim"] = cert.dim
    if args.format == "json":
        rows = [dict(zip(header, vals)) for vals in zip(*(c.tolist() for c in columns))]
        text = dump_json({**meta, "rows": rows})
    else:
        text = dump_csv(header, zip(*(c.tolist() for c in columns)))
    _emit(text, args.output)
    return EXIT_OK


def run_genfun(args) -> int:
    p = StateParams(args.n_c, args.r)
    report = {"n_c": p.n_c, "r": p.r, "f": args.f}
    report["expectation_closed_form"] = expectation_exp_number(args.f, p)
    if args.with_oracle:
        if args.f > 0:
            raise DomainError("--with-oracle needs f <= 0 (the truncated sum diverges otherwise)")
        dim = "auto" if args.dim == "auto" else args.dim
        report["expectation_oracle"] = oracle_exp_number(args.f, p, dim)
        report["rel_diff"] = (
            abs(report["expectation_closed_form"] - report["expectation_oracle"])
            / abs(report["expectation_oracle"])
        )
    if args.format == "json":
        text = dump_json(report)
    else:
        text = dump_csv(list(report), [list(report.values())])
    _emit(text, args.output)
    return EXIT_OK


def run_verify(args) -> int:
    names = args.check or ["all"]
    results = run_checks(names, tol=args.tol, n_c=args.n_c)
    ok = all(r.passed for r in results)
    if args.format == "json":
        text = dump_json({
            "tol": args.tol,
            "passed": ok,
            "checks": [
                {"check": r.name, "max_deviation": r.max_deviation, "threshold": r.threshold,
                 "passed": r.passed, "detail": r.detail}
                for r in results
            ],
        })
    else:
        rows = [(r.name, r.max_deviation, r.threshold, "pass" if r.passed else "FAIL",
                 json.dumps(_json_value(r.detail), sort_keys=True)) for r in results]
        text = dump_csv(["check", "max_deviation", "threshold", "status", "detail"], rows)
    _emit(text, args.output)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def parse_range(text: str, kind=float) -> list:
    """Parse ``"a,b,c"`` or ``"start:stop:count"`` (inclusive, evenly spaced).

    For integers ``"start:stop"`` lists every value from start to stop.
    """
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if kind is int:
            if len(parts) not in (2, 3):
                raise ParameterError(f"bad integer range {text!r}")
            start, stop = int(parts[0]), int(parts[1])
            step = int(parts[2]) if len(parts) == 3 else 1
            if step <= 0:
                raise ParameterError(f"bad step in {text!r}")
            return list(range(start, stop + 1, step))
        if len(parts) != 3:
            raise ParameterError(f"float ranges need start:stop:count, got {text!r}")
        count = int(parts[2])
        if count < 1 or count > MAX_GRID_POINTS:
            raise ParameterError(f"bad point count in {text!r}")
        return [float(v) for v in np.linspace(float(parts[0]), float(parts[1]), count)]
    try:
        return [kind(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ParameterError(f"cannot parse {text!r}") from None


def run_sweep(args) -> int:
    n_cs = parse_range(args.n_c)
    rs = parse_range(args.r)
    ms = parse_range(args.m, int)
    variants = [Variant.parse(v) for v in args.variant.split(",")]
    size = len(n_cs) * len(rs) * len(ms) * len(variants)
    if size == 0 or size > MAX_GRID_POINTS:
        raise ParameterError(f"sweep grid has {size} points; allowed 1..{MAX_GRID_POINTS}")

    header = ["n_c", "r", "m", "variant", "n", "probability", "note"]
    rows, blocks = [], []
    for n_c in n_cs:
        for r in rs:
            for m in ms:
                for variant in variants:
                    p = StateParams(n_c, r, m, variant)
                    key = [p.n_c, p.r, p.m, p.variant.value]
                    if p.is_zero_norm:
                        print(f"warning: skipping zero-norm state {key}", file=sys.stderr)
                        rows.append(key + [None, None, "skipped: zero-norm state"])
                        blocks.append({"params": _param_fields(p), "skipped": "zero-norm state"})
                        continue
                    dist = pnd_table(p, args.nmax)
                    for n, prob in enumerate(dist.probabilities.tolist()):
                        rows.append(key + [n, prob, None])
                    blocks.append({"params": _param_fields(p), "tail_bound": dist.tail_bound,
                                   "n_max": dist.n_max,
                                   "probabilities": dist.probabilities})
    if args.format == "json":
        text = dump_json({"blocks": blocks})
    else:
        text = dump_csv(header, rows)
    _emit(text, args.output)
    return EXIT_OK


def _common(parser, sweep=False):
    if sweep:
        parser.add_argument("--nc", dest="n_c", default="0",
                            help="mean thermal photon numbers: list a,b,c or start:stop:count")
        parser.add_argument("--r", default="0", help="squeezing parameters, same syntax")
    else:
        parser.add_argument("--nc", dest="n_c", type=float, required=True,
                            help="mean thermal photon number")
        parser.add_argument("--r", type=float, default=0.0, help="squeezing parameter")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--output", "-o", default=None, help="write to PATH instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqthermal",
        description="Normalization and photon-number distributions of "
                    "photon-added/subtracted squeezed thermal states.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", help="normalization constant")
    _common(p)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--variant", choices=("add", "sub"), default="add")
    p.add_argument("--with-oracle", action="store_true")
    p.set_defaults(func=run_norm)

    p = sub.add_parser("pnd", help="photon-number distribution table")
    _common(p)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--variant", choices=("add", "sub"), default="add")
    p.add_argument("--nmax", type=_int_or_auto, default="auto")
    p.add_argument("--with-oracle", action="store_true")
    p.set_defaults(func=run_pnd)

    p = sub.add_parser("genfun", help="expectation of exp(f a^dag a) in the squeezed thermal state")
    _common(p)
    p.add_argument("--f", type=float, required=True)
    p.add_argument("--dim", type=_int_or_auto, default="auto")
    p.add_argument("--with-oracle", action="store_true")
    p.set_defaults(func=run_genfun)

    p = sub.add_parser("verify", help="run the cross-check suite")
    p.add_argument("--check", action="append", choices=["all", *CHECKS],
                   help="run only this check (repeatable)")
    p.add_argument("--nc", dest="n_c", type=float, default=None,
                   help="mean photon number for the purification check")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=run_verify)

    p = sub.add_parser("sweep", help="long-format PND tables over a parameter grid")
    _common(p, sweep=True)
    p.add_argument("--m", default="0", help="list a,b,c or range start:stop[:step]")
    p.add_argument("--variant", default="add", help="comma list of add/sub")
    p.add_argument("--nmax", type=_int_or_auto, default="auto")
    p.set_defaults(func=run_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ZeroNormError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ZERO_NORM
    except (ParameterError, DomainError, TruncationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
