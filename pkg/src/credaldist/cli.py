"""Command line front end.

Exit codes: 0 ok/coherent, 1 incoherent but avoiding sure loss, 2 sure loss,
64 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from .bench import MAX_SIZE, MIN_SIZE, format_table, run_benchmark
from .core import EPS_TIGHT, SureLossError
from .extension import check
from .fileformat import AssessmentFileError, load_assessment
from .maxdist import maximal_distance
from .polytope import credal_set

EXIT_OK, EXIT_INCOHERENT, EXIT_SURE_LOSS, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def fmt(x: float) -> str:
    s = f"{float(x):.6f}"
    return "0.000000" if s == "-0.000000" else s


def fmt_vec(v) -> str:
    return " ".join(fmt(x) for x in v)


def _rounded(v) -> list[float]:
    return [float(fmt(x)) for x in np.atleast_1d(v)]


def _emit(record: dict):
    print(json.dumps(record, sort_keys=True))


def cmd_check(args) -> int:
    a = load_assessment(args.path, strict=not args.lenient)
    report = check(a)
    if report.coherent:
        code, status = EXIT_OK, "coherent"
    elif report.avoids_sure_loss:
        code, status = EXIT_INCOHERENT, "incoherent"
    else:
        code, status = EXIT_SURE_LOSS, "sure loss"
    slacks = {label: (None if np.isnan(x) else float(fmt(x))) for label, x in zip(a.labels, report.slack_per_item)}
    if args.format == "records":
        _emit({"command": "check", "status": status, "avoids_sure_loss": report.avoids_sure_loss,
               "coherent": report.coherent, "slack": slacks})
        return code
    print(status)
    print(f"avoids_sure_loss: {str(report.avoids_sure_loss).lower()}")
    print(f"coherent: {str(report.coherent).lower()}")
    if report.avoids_sure_loss:
        for label, x in zip(a.labels, report.slack_per_item):
            print(f"slack {label}: {fmt(x)}")
    return code


def cmd_extremes(args) -> int:
    a = load_assessment(args.path, strict=not args.lenient)
    cs = credal_set(a)
    if cs.is_empty:
        if args.format == "records":
            _emit({"command": "extremes", "empty": True})
        else:
            print("EMPTY")
        return EXIT_SURE_LOSS
    rows = sorted(_rounded(v) for v in cs.vertices)
    for row in rows:
        if args.format == "records":
            _emit({"command": "extremes", "vertex": row})
        else:
            print(fmt_vec(row))
    return EXIT_OK


def cmd_maxdist(args) -> int:
    a = load_assessment(args.path, strict=not args.lenient)
    if args.threads < 1:
        raise UsageError("--threads must be at least 1")
    if args.tolerance < 0:
        raise UsageError("--tolerance must be nonnegative")
    try:
        r = maximal_distance(a, use_filter=not args.no_filter, threads=args.threads, tol=args.tolerance)
    except SureLossError as exc:
        print(f"sure loss: {exc}", file=sys.stderr)
        if args.format == "records":
            _emit({"command": "maxdist", "empty": True})
        else:
            print("EMPTY")
        return EXIT_SURE_LOSS
    cs = r.credal_set
    c = r.counters
    record = {
        "command": "maxdist",
        "max_distance": float(fmt(r.max_distance)),
        "qp_calls": c.qp_calls,
        "distances_needed": c.distances_needed,
        "dominance_skips": c.dominance_skips,
        "corrected": r.corrected,
    }
    if args.witness:
        record["witness_vertex"] = _rounded(cs.vertices[r.witness_vertex])
        record["witness_face"] = cs.constraints.labels[r.witness_face] if r.witness_face is not None else None
        record["witness_far_vertex"] = (
            _rounded(cs.vertices[r.witness_far_vertex]) if r.witness_far_vertex is not None else None
        )
        record["witness_gamble"] = _rounded(r.witness_gamble) if r.witness_gamble is not None else None
    if args.format == "records":
        _emit(record)
    else:
        for key, value in record.items():
            if key == "command":
                continue
            if isinstance(value, float):
                value = fmt(value)
            elif isinstance(value, list):
                value = fmt_vec(value)
            elif isinstance(value, bool):
                value = str(value).lower()
            elif value is None:
                value = "none"
            print(f"{key}: {value}")
    return EXIT_INCOHERENT if r.corrected else EXIT_OK


def _sizes(text: str) -> list[int]:
    try:
        sizes = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad --sizes {text!r}") from None
    if not sizes or any(not MIN_SIZE <= s <= MAX_SIZE for s in sizes):
        raise UsageError(f"sizes must lie in [{MIN_SIZE}, {MAX_SIZE}]")
    return sizes


def cmd_bench(args) -> int:
    sizes = _sizes(args.sizes)
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    if args.threads < 1:
        raise UsageError("--threads must be at least 1")
    stats = run_benchmark(sizes, args.trials, args.seed, m=args.mixtures, threads=args.threads)
    if args.format == "records":
        for st in stats:
            _emit({"command": "bench", **st.as_record()})
    else:
        print(format_table(stats))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="credaldist", description="Credal sets and the maximal distance between coherent extensions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_file(p):
        p.add_argument("path", help="assessment file (JSON)")
        p.add_argument("--lenient", action="store_true", help="ignore unknown keys")
        p.add_argument("--format", choices=["text", "records"], default="text")
        return p

    p = with_file(sub.add_parser("check", help="avoiding sure loss and coherence"))
    p.set_defaults(func=cmd_check)

    p = with_file(sub.add_parser("extremes", help="extreme points of the credal set"))
    p.set_defaults(func=cmd_extremes)

    p = with_file(sub.add_parser("maxdist", help="maximal distance between coherent extensions"))
    p.add_argument("--tolerance", type=float, default=EPS_TIGHT, help="slack in dominance tests")
    p.add_argument("--no-filter", action="store_true", help="disable dominance pruning")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--witness", action="store_true", help="print the witnessing vertex, face and gamble")
    p.set_defaults(func=cmd_maxdist)

    p = sub.add_parser("bench", help="benchmark on random lower probabilities")
    p.add_argument("--sizes", default="3,4,5")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--mixtures", type=int, default=None, help="generating distributions per instance")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--format", choices=["text", "records"], default="text")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AssessmentFileError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
