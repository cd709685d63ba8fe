"""Command-line entry point: ``limspace verify | degeneracy | dualnorm``.

Exit codes: 0 when every property passes, 1 on a property failure and 2 on
usage errors (bad flags, unreadable or malformed input files).
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
from . import duals as D
from . import serialize as Z
from . import suites as S
from .convex import degeneracy_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_PRIMAL_ALIASES = {"p": "p", "p-composite": "p", "composite": "p", "sum": "sum", "max": "max"}


class UsageError(Exception):
    pass


def _fmt(v) -> str:
    if isinstance(v, float):
        return Z.dumps(v)
    if isinstance(v, (dict, list)):
        return Z.dumps(v, indent=None)
    return str(v)


def _csv(header: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(r.get(h)) for h in header])
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    names = list(S.SUITES) if args.suite == "all" else [args.suite]
    report = S.run_suites(names, args.seed, args.count, inject=args.inject_failure)
    if not args.timings:
        for r in report["suites"]:
            r.pop("seconds")
    if args.format == "csv":
        rows = [dict(p, suite=r["suite"]) for r in report["suites"] for p in r["properties"]]
        text = _csv(["suite", "name", "passed", "max_error", "checked", "tolerance", "witness"], rows)
    else:
        text = Z.dumps(report) + "\n"
    _emit(text, args.out)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_degeneracy(args) -> int:
    if args.n_max < 0:
        raise UsageError("--n-max must be nonnegative")
    rows = S.degeneracy_table(args.n_max)
    ok = all(r["sup_dist_error"] <= 4 * 2.0**-52 and r["witness"] > 0 for r in rows)
    ok = ok and all(a["sup_dist"] > b["sup_dist"] for a, b in zip(rows, rows[1:]))
    if args.format == "csv":
        text = _csv(["n", "sup_dist", "witness", "sup_dist_closed_form", "witness_closed_form"], rows)
    else:
        comparison = degeneracy_check(S.z_reference, np.linspace(0.0, 1000.0, 2001))
        text = Z.dumps({"z": "-1/(1+t)", "rows": rows, "verified": ok, "subdifferential": comparison}) + "\n"
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def _load_dualnorm_spec(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            spec = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    if "functional" not in spec:
        raise UsageError("spec file needs a 'functional' entry")
    primal = str(spec.get("primal", "p")).lower()
    if primal not in _PRIMAL_ALIASES:
        raise UsageError(f"unknown primal norm {spec.get('primal')!r}")
    p = spec.get("p", 1.0)
    return {
        "functional": spec["functional"],
        "primal": _PRIMAL_ALIASES[primal],
        "p": math.inf if p == "inf" else float(p),
        "flavor": spec.get("flavor", "C"),
        "grid": spec.get("grid"),
        "restarts": int(spec.get("restarts", 64)),
        "seed": int(spec.get("seed", 0)),
    }


def cmd_dualnorm(args) -> int:
    spec = _load_dualnorm_spec(args.spec_file)
    try:
        f = Z.functional_from_dict(spec["functional"])
        report = D.dual_norm_formulas(
            f, spec["primal"], spec["p"], grid=spec["grid"], flavor=spec["flavor"],
            restarts=spec["restarts"], seed=spec["seed"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid dual-norm spec: {exc}") from exc
    report["primal"] = {"norm": spec["primal"], "p": spec["p"], "flavor": spec["flavor"]}
    if args.format == "csv":
        rows = [{"key": k, "value": report[k]} for k in sorted(report)]
        text = _csv(["key", "value"], rows)
    else:
        text = Z.dumps(report) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="limspace", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report to this path instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    v = sub.add_parser("verify", parents=[common], help="run property suites")
    v.add_argument("--suite", choices=(*S.SUITES, "all"), default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--count", type=int, default=1000)
    v.add_argument("--inject-failure", action="store_true",
                   help="flip one tolerance so the run must fail (harness self-test)")
    v.add_argument("--timings", action="store_true", help="include wall-clock seconds (breaks byte stability)")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("degeneracy", parents=[common], help="perturbation table for z(t) = -1/(1+t)")
    d.add_argument("--n-max", type=int, default=10)
    d.set_defaults(func=cmd_degeneracy)

    n = sub.add_parser("dualnorm", parents=[common], help="oracle dual norm against closed-form formulas")
    n.add_argument("spec_file")
    n.set_defaults(func=cmd_dualnorm)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "count", 1) < 1:
        parser.error("--count must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"limspace: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
