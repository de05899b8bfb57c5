"""Command-line front end: solve, verify, benchmark, generate, dump boxes."""

from __future__ import annotations

import argparse
import csv
import itertools
import sys
import time

from .backends import generate_knapsack, read_instance, write_knapsack_file
from .dominance import filter_nondominated
from .driver import (
    Algorithm,
    RunConfig,
    SelectionRule,
    VerificationError,
    applicable_bound,
    run,
)
from .scalarize import Method, ScalarizationConfig, Variant
from .validation import InstanceFormatError, UsageError

BENCH_COLUMNS = [
    "instance", "m", "n_outcomes", "n_nondominated", "algorithm", "scalarization",
    "variant", "selection", "subproblems", "bound", "bound_met", "wall_time_ms",
]


def _add_config_flags(parser):
    parser.add_argument("--algorithm", choices=["generic", "vsplit"], default="vsplit")
    parser.add_argument("--scalarization", choices=["ec", "wt"], default="ec")
    parser.add_argument("--variant", choices=["ts", "aug"], default="ts")
    parser.add_argument("--selection", choices=["auto", "first", "minv1"], default="auto")
    parser.add_argument("--objective-index", type=int, default=1,
                        help="1-based component minimized by the epsilon-constraint method")
    parser.add_argument("--delta", type=int, default=1,
                        help="offset above the componentwise maximum for the starting box")
    parser.add_argument("--verify", action="store_true",
                        help="run the internal invariant checks after every iteration")
    parser.add_argument("--dedupe", action="store_true",
                        help="drop duplicate points in explicit-set instances instead of rejecting them")


def _resolve_config(args, verify_override=None):
    scal = ScalarizationConfig(
        method=Method(args.scalarization),
        variant=Variant(args.variant),
        objective_index=args.objective_index,
    )
    selection = args.selection
    if selection == "auto":
        selection = (
            "minv1"
            if args.algorithm == "vsplit" and scal.method is Method.EPSILON_CONSTRAINT and args.objective_index == 1
            else "first"
        )
    return RunConfig(
        algorithm=Algorithm(args.algorithm),
        scalarization=scal,
        selection=SelectionRule(selection),
        delta=args.delta,
        verify_invariants=args.verify if verify_override is None else verify_override,
    )


def _open_out(path):
    return open(path, "w", encoding="utf-8", newline="") if path else sys.stdout


def _write_points_csv(points, m, out_path):
    fh = _open_out(out_path)
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([f"z{i + 1}" for i in range(m)])
        for z in points:
            writer.writerow(list(z))
    finally:
        if fh is not sys.stdout:
            fh.close()


def cmd_solve(args):
    backend = read_instance(args.instance, dedupe=args.dedupe)
    Z = backend.outcome_set()
    cfg = _resolve_config(args)
    cfg.validate(Z.m)
    nondominated, stats = run(backend, cfg)
    _write_points_csv(nondominated.points, Z.m, args.out)
    if args.log:
        with open(args.log, "w", encoding="utf-8") as fh:
            fh.write("\n".join(stats.iteration_log) + "\n")
    bound = stats.bound_value if stats.bound_value is not None else "-"
    print(
        f"solved: |Z|={len(Z)} |N|={len(nondominated)} subproblems={stats.subproblems_solved} bound={bound}",
        file=sys.stderr,
    )
    return 0


def cmd_gen_knapsack(args):
    instance = generate_knapsack(args.n, args.seed)
    write_knapsack_file(args.out, instance)
    print(f"wrote n={args.n} instance to {args.out}", file=sys.stderr)
    return 0


def _bench_rows(args):
    algorithms = args.algorithms.split(",")
    scalarizations = args.scalarizations.split(",")
    variants = args.variants.split(",")
    selections = args.selections.split(",")
    for path in args.instances:
        backend = read_instance(path, dedupe=args.dedupe)
        Z = backend.outcome_set()
        for algo, scal, variant, selection in itertools.product(algorithms, scalarizations, variants, selections):
            row_args = argparse.Namespace(
                algorithm=algo, scalarization=scal, variant=variant, selection=selection,
                objective_index=1, delta=args.delta, verify=False,
            )
            cfg = _resolve_config(row_args)
            try:
                cfg.validate(Z.m)
            except UsageError as exc:
                print(f"skipping {path} [{algo}/{scal}/{variant}/{selection}]: {exc}", file=sys.stderr)
                continue
            start = time.perf_counter()
            nondominated, stats = run(backend, cfg)
            elapsed_ms = (time.perf_counter() - start) * 1000.0
            bound = applicable_bound(len(nondominated), Z.m, cfg)
            yield {
                "instance": path,
                "m": Z.m,
                "n_outcomes": len(Z),
                "n_nondominated": len(nondominated),
                "algorithm": algo,
                "scalarization": scal,
                "variant": variant,
                "selection": cfg.selection.value,
                "subproblems": stats.subproblems_solved,
                "bound": "" if bound is None else bound,
                "bound_met": "" if bound is None else str(stats.subproblems_solved <= bound).lower(),
                "wall_time_ms": "0" if args.no_timing else f"{elapsed_ms:.3f}",
            }


def cmd_bench(args):
    fh = _open_out(args.out)
    try:
        writer = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in _bench_rows(args):
            writer.writerow(row)
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def _assumption_distinct_components(front):
    for c in range(front.m):
        values = [z[c] for z in front.points]
        if len(set(values)) != len(values):
            return False
    return True


def run_verification(backend, corrupt_hook=None, report=print):
    """Full verification battery for one instance; returns the first failure
    message or None. ``corrupt_hook`` is forwarded to the driver (test use)."""
    Z = backend.outcome_set()
    oracle = filter_nondominated(Z)
    configs = [("generic", "ec", "ts", "first"), ("generic", "wt", "ts", "first")]
    if Z.m == 3:
        configs += [
            ("vsplit", "ec", "ts", "minv1"),
            ("vsplit", "ec", "aug", "minv1"),
            ("vsplit", "wt", "ts", "first"),
            ("vsplit", "wt", "aug", "first"),
        ]
    traces = {}
    for algo, scal, variant, selection in configs:
        cfg = RunConfig(
            algorithm=Algorithm(algo),
            scalarization=ScalarizationConfig(method=Method(scal), variant=Variant(variant)),
            selection=SelectionRule(selection),
            verify_invariants=True,
        )
        label = f"{algo}/{scal}/{variant}/{selection}"
        try:
            nondominated, stats = run(
                backend, cfg, capture_box_trace=True, corrupt_hook=corrupt_hook,
                snapshot_iteration="last-insertion",
            )
        except VerificationError as exc:
            return f"{label}: invariant violated: {exc}"
        if set(nondominated.points) != set(oracle.points):
            missing = set(oracle.points) - set(nondominated.points)
            extra = set(nondominated.points) - set(oracle.points)
            return f"{label}: wrong nondominated set (missing={sorted(missing)}, extra={sorted(extra)})"
        bound = stats.bound_value
        if bound is not None and stats.subproblems_solved > bound:
            return f"{label}: solved {stats.subproblems_solved} subproblems, guarantee is {bound}"
        traces[(algo, scal)] = stats.box_trace
        note = ""
        if algo == "vsplit":
            quasi = sum(line.endswith(";1") for line in (stats.snapshot or []))
            if quasi:
                note = f" quasi_boxes={quasi}"
        report(f"ok {label}: |N|={len(nondominated)} subproblems={stats.subproblems_solved} bound={bound or '-'}{note}")
    if Z.m == 3 and _assumption_distinct_components(oracle):
        a, b = traces[("vsplit", "wt")], traces[("generic", "wt")]
        if a != b:
            first = next(i for i in range(min(len(a), len(b)) + 1) if i >= len(a) or i >= len(b) or a[i] != b[i])
            return (
                "vsplit and generic box sets diverge at iteration "
                f"{first + 1}: {a[first] if first < len(a) else 'ended'} vs {b[first] if first < len(b) else 'ended'}"
            )
        report("ok vsplit/generic box traces identical (all front components pairwise distinct)")
    return None


def cmd_verify(args):
    backend = read_instance(args.instance, dedupe=args.dedupe)
    failure = run_verification(backend)
    if failure is not None:
        print(f"FAIL: {failure}", file=sys.stderr)
        return 1
    print("all checks passed", file=sys.stderr)
    return 0


def cmd_dump_boxes(args):
    backend = read_instance(args.instance, dedupe=args.dedupe)
    Z = backend.outcome_set()
    cfg = _resolve_config(args)
    cfg.validate(Z.m)
    snapshot_at = args.iteration if args.iteration is not None else "last-insertion"
    _, stats = run(backend, cfg, snapshot_iteration=snapshot_at)
    lines = stats.snapshot or []
    fh = _open_out(args.out)
    try:
        for line in lines:
            fh.write(line + "\n")
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="boxfront",
        description="Exact nondominated-set enumeration for discrete multi-objective problems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="enumerate the nondominated set of an instance file")
    p.add_argument("instance")
    _add_config_flags(p)
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.add_argument("--log", help="write the per-iteration run log to this path")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen-knapsack", help="generate a random tricriteria knapsack instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen_knapsack)

    p = sub.add_parser("bench", help="run a configuration matrix over instances, emit a CSV report")
    p.add_argument("instances", nargs="*")
    p.add_argument("--algorithms", default="vsplit")
    p.add_argument("--scalarizations", default="ec,wt")
    p.add_argument("--variants", default="ts,aug")
    p.add_argument("--selections", default="auto")
    p.add_argument("--delta", type=int, default=1)
    p.add_argument("--dedupe", action="store_true")
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.add_argument("--no-timing", action="store_true", help="zero the timing column for byte-stable output")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="cross-check all algorithms against the pairwise filter oracle")
    p.add_argument("instance")
    p.add_argument("--dedupe", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dump-boxes", help="dump the decomposition after a given iteration")
    p.add_argument("instance")
    _add_config_flags(p)
    p.add_argument("--iteration", type=int, help="capture after this iteration (default: after the last insertion)")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_dump_boxes)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InstanceFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
