"""Command-line interface.

Exit codes: 0 ok/holds, 1 fails, 2 usage or parse error, 3 no root,
4 inconclusive, 5 not sharp, 6 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .bohrsum import Verdict, check_inequality
from .errors import (DomainError, FormatError, NoRootFound, NotSharp, ParamError,
                     SpecMismatch)
from .extremal import DEFAULT_TOL as SHARP_TOL, sharpness_test
from .pseries import HarmonicMapSpec, LacunarySeries, load_series
from .radii import (DEFAULT_TOL, P_SYMMETRIC, USES_A, ClassId, ClassSpec, RootRule,
                    radius_regime, regime_case, solve_radius)
from .schur import Family, FuzzConfig, fuzz_class

EXIT_OK, EXIT_FAILS, EXIT_USAGE, EXIT_NO_ROOT = 0, 1, 2, 3
EXIT_INCONCLUSIVE, EXIT_NOT_SHARP, EXIT_IO = 4, 5, 6

_VERDICT_EXIT = {Verdict.HOLDS: EXIT_OK, Verdict.FAILS: EXIT_FAILS,
                 Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE}
_INT_PARAMS = ("p", "m", "k")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 already; keep the text terse
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _threads() -> int | None:
    raw = os.environ.get("BOHR_LAB_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise ParamError(f"BOHR_LAB_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ParamError("BOHR_LAB_THREADS must be >= 0")
    return n or os.cpu_count() or 1


def _emit(obj, pretty: bool) -> None:
    print(json.dumps(obj, indent=2 if pretty else None, allow_nan=False))


def _spec_from(args, **override) -> ClassSpec:
    params = {name: getattr(args, name, None) for name in ("p", "m", "k", "d", "a")}
    params.update(override)
    return ClassSpec(args.class_id, **params)


def _class_args(sub, with_tol: bool = True) -> None:
    sub.add_argument("--class", dest="class_id", required=True,
                     choices=[c.value for c in ClassId])
    sub.add_argument("--p", type=int)
    sub.add_argument("--m", type=int)
    sub.add_argument("--k", type=int)
    sub.add_argument("--d", type=float)
    sub.add_argument("--a", type=float)
    if with_tol:
        sub.add_argument("--tol", type=float, default=DEFAULT_TOL)


def cmd_radius(args) -> int:
    spec = _spec_from(args)
    if args.regime:
        if spec.id is not ClassId.Rpmd21:
            raise ParamError("--regime applies to Rpmd21 only")
        _emit(radius_regime(spec.p, spec.m, spec.d, args.tol).to_dict(), args.pretty)
    else:
        _emit(solve_radius(spec, args.tol).to_dict(), args.pretty)
    return EXIT_OK


def cmd_verify(args) -> int:
    h = load_series(args.spec)
    g = load_series(args.g) if args.g else None
    params = {}
    cid = ClassId(args.class_id)
    # shape parameters not given on the command line are read from the file
    if args.p is None:
        params["p"] = h.p
    if args.m is None:
        params["m"] = h.m
    if args.k is None and cid not in P_SYMMETRIC:
        params["k"] = h.k0
    if args.a is None and cid in USES_A:
        params["a"] = abs(h.lead)
    spec = _spec_from(args, **params)
    if spec.harmonic:
        F = HarmonicMapSpec(h, g if g is not None else h, spec.d)
    elif g is not None:
        raise SpecMismatch(f"{spec.id.value} is analytic; --g is not accepted")
    else:
        F = h
    report = check_inequality(spec, F, args.r)
    _emit(report.to_dict(), args.pretty)
    return _VERDICT_EXIT[report.verdict]


def cmd_sharpness(args) -> int:
    report = sharpness_test(_spec_from(args), args.eps, args.tol)
    _emit(report.to_dict(), args.pretty)
    return EXIT_OK if report.attained and report.violated_above else EXIT_FAILS


def _case_tag(spec: ClassSpec, result) -> str:
    if spec.id is ClassId.Rpmd21 and spec.p >= 2:
        return f"case{regime_case(spec.p, spec.m, spec.d)}"
    if result.root_rule is RootRule.MIN_WITH_CAP:
        return "root" if result.value == result.root else "cap"
    return result.root_rule.value


def cmd_sweep(args) -> int:
    if args.steps < 1:
        raise ParamError("--steps must be >= 1")
    values = np.linspace(args.from_, args.to, args.steps)
    if args.vary in _INT_PARAMS:
        if not all(float(v).is_integer() for v in values):
            raise ParamError(f"sweeping {args.vary} needs integral grid values")
        values = [int(v) for v in values]
    else:
        values = [float(v) for v in values]
    specs = [_spec_from(args, **{args.vary: v}) for v in values]

    def row(spec):
        result = solve_radius(spec, args.tol)
        return result, _case_tag(spec, result)

    workers = _threads()
    if workers > 1 and len(specs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, specs))
    else:
        rows = [row(s) for s in specs]
    try:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow([args.vary, "radius", "residual", "case_tag"])
            for v, (result, tag) in zip(values, rows):
                cell = str(v) if isinstance(v, int) else "%.17g" % v
                writer.writerow([cell, "%.17g" % result.value, "%.17g" % result.residual, tag])
    except OSError as exc:
        print(f"bohr-lab: cannot write {args.csv}: {exc}", file=sys.stderr)
        return EXIT_IO
    _emit({"csv": args.csv, "rows": len(rows), "vary": args.vary, "class": specs[0].id.value},
          args.pretty)
    return EXIT_OK


def cmd_fuzz(args) -> int:
    spec = _spec_from(args)
    cfg = FuzzConfig(seed=args.seed, trials=args.trials, depth=args.depth,
                     truncation=args.truncation, backoff=args.backoff,
                     family=Family(args.family) if args.family else None,
                     include_extremal=args.include_extremal)
    summary = fuzz_class(spec, cfg, workers=_threads())
    _emit(summary, args.pretty)
    return EXIT_OK if summary["fails"] == 0 else EXIT_FAILS


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bohr-lab", description="Bohr radii, inequality checks and fuzzing.")
    parser.add_argument("--pretty", action="store_true", help="indent JSON output")
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub = subs.add_parser("radius", help="solve a characteristic equation")
    _class_args(sub)
    sub.add_argument("--regime", action="store_true",
                     help="Rpmd21: report which regime fires and its radius")
    sub.set_defaults(func=cmd_radius)

    sub = subs.add_parser("verify", help="evaluate a class inequality on coefficient files")
    _class_args(sub, with_tol=False)
    sub.add_argument("--spec", required=True, help="coefficient JSON for f or h")
    sub.add_argument("--g", help="coefficient JSON for the co-analytic part (default: g = h)")
    sub.add_argument("--r", type=float, required=True)
    sub.set_defaults(func=cmd_verify)

    sub = subs.add_parser("sharpness", help="test the extremal witness at the radius")
    _class_args(sub, with_tol=False)
    sub.add_argument("--eps", type=float)
    sub.add_argument("--tol", type=float, default=SHARP_TOL)
    sub.set_defaults(func=cmd_sharpness)

    sub = subs.add_parser("sweep", help="tabulate radii over a parameter range")
    _class_args(sub)
    sub.add_argument("--vary", required=True, choices=["p", "m", "k", "d", "a"])
    sub.add_argument("--from", dest="from_", type=float, required=True)
    sub.add_argument("--to", type=float, required=True)
    sub.add_argument("--steps", type=int, required=True)
    sub.add_argument("--csv", required=True)
    sub.set_defaults(func=cmd_sweep)

    sub = subs.add_parser("fuzz", help="random stress test of a class inequality")
    _class_args(sub, with_tol=False)
    sub.add_argument("--trials", type=int, default=1000)
    sub.add_argument("--seed", type=int, default=42)
    sub.add_argument("--family", choices=[f.value for f in Family])
    sub.add_argument("--backoff", type=float, default=1e-6)
    sub.add_argument("--depth", type=int, default=6)
    sub.add_argument("--truncation", type=int, default=256)
    sub.add_argument("--include-extremal", action="store_true")
    sub.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NoRootFound as exc:
        code, msg = EXIT_NO_ROOT, exc
    except NotSharp as exc:
        code, msg = EXIT_NOT_SHARP, exc
    except (ParamError, DomainError, SpecMismatch, FormatError) as exc:
        code, msg = EXIT_USAGE, exc
    except OSError as exc:
        code, msg = EXIT_IO, exc
    print(f"bohr-lab: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
