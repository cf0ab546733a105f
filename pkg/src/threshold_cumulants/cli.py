"""Command-line entry point.

Exact results are printed as JSON with rationals serialized as ``"p/q"``.
Exit codes: 0 success, 1 verification failure, 2 bad flags or inputs.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from threshold_cumulants.cumulants import cumulant_report, cumulant_tree_formula, cumulants_to_moments
from threshold_cumulants.diagrams import YoungDiagram, corner_profile, partitions_up_to
from threshold_cumulants.errors import ThresholdCumulantsError
from threshold_cumulants.graphs import enumerate_nca_trees
from threshold_cumulants.growth import moment_oracle
from threshold_cumulants.rational import format_rational, parse_rational
from threshold_cumulants.rsk import load_tableau, threshold

THREADS_ENV = "THRESHOLD_CUMULANTS_THREADS"


class UsageError(Exception):
    """Input accepted by the parser but rejected on validation."""


def _shape(text: str) -> YoungDiagram:
    try:
        return YoungDiagram.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad shape {text!r}: {exc}") from exc


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {value}")
    return value


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        return _positive(raw)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"{THREADS_ENV}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="threshold-cumulants",
        description="Exact cumulants of the RSK insertion threshold, verification sweeps and sampling.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def exact(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--shape", type=_shape, required=True, help='partition, e.g. "4,2,2,2"')
        p.add_argument("--u0", type=_rational, required=True, help='"p/q" or decimal')
        p.add_argument("--order", type=_positive, required=True)
        return p

    exact("cumulants", "exact cumulants, moments and bounds as JSON")
    p = exact("moments", "exact moments as JSON")
    p.add_argument("--oracle", action="store_true", help="also enumerate growth paths")

    p = sub.add_parser("verify", help="tree formula against the growth-path oracle")
    p.add_argument("--max-boxes", type=_non_negative, required=True)
    p.add_argument("--max-order", type=_positive, required=True)

    p = sub.add_parser("trees", help="non-crossing alternating trees")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--count", action="store_true", help="print only the number of trees")

    def sampling(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--samples", type=_positive, required=True)
        p.add_argument("--seed", type=_non_negative, required=True)
        p.add_argument("--threads", type=_positive, default=None, help=f"defaults to ${THREADS_ENV} or 1")
        p.add_argument("--csv", default=None, help="write one sample per row to this file")
        return p

    p = sampling("sample", "empirical threshold statistics")
    p.add_argument("--shape", type=_shape, required=True)
    p.add_argument("--u0", type=_rational, required=True)

    p = sampling("z-estimate", "Monte Carlo estimate of a cumulant through Z")
    p.add_argument("--shape", type=_shape, required=True)
    p.add_argument("--u0", type=_rational, required=True)
    p.add_argument("--order", type=_positive, required=True)

    p = sampling("rectangle", "scaled last first-row entry of rectangular tableaux")
    p.add_argument("--p", type=_positive, required=True)
    p.add_argument("--q", type=_positive, required=True)

    p = sub.add_parser("threshold", help="exact threshold of a tableau stored as JSON")
    p.add_argument("--tableau", required=True)
    p.add_argument("--u0", type=_rational, required=True)
    return parser


def _emit(obj) -> None:
    print(json.dumps(obj))


def _write_csv(path: str, values) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["value"])
        for v in values:
            writer.writerow([repr(float(v))])


def verify_sweep(max_boxes: int, max_order: int) -> dict:
    """Compare moments from the tree formula with the oracle on a half-integer grid."""
    checked = 0
    mismatches = []
    for lam in partitions_up_to(max_boxes):
        concave = corner_profile(lam).concave
        lo, hi = int(concave[0]) - 1, int(concave[-1])
        for u0 in (Fraction(2 * k + 1, 2) for k in range(lo, hi + 1)):
            kappas = [cumulant_tree_formula(lam, u0, n) for n in range(1, max_order + 1)]
            for n, m in enumerate(cumulants_to_moments(kappas), start=1):
                expected = moment_oracle(lam, u0, n)
                checked += 1
                if m != expected:
                    mismatches.append(
                        {
                            "shape": list(lam.rows),
                            "u0": format_rational(u0),
                            "order": n,
                            "tree": format_rational(m),
                            "oracle": format_rational(expected),
                        }
                    )
    return {"max_boxes": max_boxes, "max_order": max_order, "checked": checked, "mismatches": mismatches}


def _run(args) -> int:
    cmd = args.command
    if cmd in ("cumulants", "moments"):
        report = cumulant_report(args.shape, args.u0, args.order, with_oracle=getattr(args, "oracle", False))
        if cmd == "cumulants":
            _emit(report.to_dict())
        else:
            out = {
                "shape": list(report.shape),
                "u0": format_rational(report.u0),
                "order": report.order,
                "moments": [format_rational(v) for v in report.moments],
            }
            if report.oracle_moments is not None:
                out["oracle_moments"] = [format_rational(v) for v in report.oracle_moments]
            _emit(out)
            if report.oracle_moments is not None and report.oracle_moments != report.moments:
                print("moments disagree with the oracle", file=sys.stderr)
                return 1
        return 0
    if cmd == "verify":
        result = verify_sweep(args.max_boxes, args.max_order)
        _emit(result)
        if result["mismatches"]:
            print(f"{len(result['mismatches'])} mismatches", file=sys.stderr)
            return 1
        return 0
    if cmd == "trees":
        trees = enumerate_nca_trees(args.n)
        if args.count:
            print(len(trees))
        else:
            _emit([t.to_dict() for t in trees])
        return 0
    if cmd == "threshold":
        try:
            tableau = load_tableau(args.tableau)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot read tableau {args.tableau!r}: {exc}") from exc
        _emit({"u0": format_rational(args.u0), "threshold": format_rational(Fraction(threshold(tableau, args.u0)))})
        return 0

    # sampling commands import numpy lazily so exact commands start fast
    from threshold_cumulants import montecarlo as mc

    threads = args.threads if args.threads is not None else _default_threads()
    if cmd in ("sample", "z-estimate") and args.shape.size == 0:
        raise UsageError("shape must be nonempty")
    if cmd == "sample":
        if args.samples < 2:
            raise UsageError("need at least two samples")
        values = mc.sample_thresholds(args.shape, args.u0, args.samples, args.seed, threads)
        out = {"shape": list(args.shape.rows), "u0": format_rational(args.u0), "seed": args.seed}
        out["summary"] = mc.summarize(values).to_dict()
    elif cmd == "z-estimate":
        if args.samples < 2:
            raise UsageError("need at least two samples")
        values = mc.sample_z(args.shape, args.u0, args.order, args.samples, args.seed, threads)
        out = {"shape": list(args.shape.rows), "u0": format_rational(args.u0), "order": args.order, "seed": args.seed}
        out["summary"] = mc.summarize(values).to_dict()
    else:
        if args.samples < 2:
            raise UsageError("need at least two samples")
        result = mc.rectangle_experiment(args.p, args.q, args.samples, args.seed, threads)
        values = result.samples
        out = dict(result.to_dict(), seed=args.seed)
    if args.csv:
        _write_csv(args.csv, values)
    _emit(out)
    return 0


def _attach_negative_values(argv: Sequence[str]) -> list[str]:
    # argparse mistakes "-1/2" for a flag; glue it to its option as "--u0=-1/2"
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok == "--u0":
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt[1:2].isdigit():
                out.append(f"--u0={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(_attach_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args)
    except (UsageError, ThresholdCumulantsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
