"""Outer enumeration loop: box selection, subproblem dispatch, bookkeeping.

Each iteration selects one box of the current decomposition, solves one
scalarized subproblem over its bounds, and either removes the box (no feasible
outcome below its bounds) or inserts the found nondominated point into the
decomposition. The loop ends when no boxes remain; at that point the inserted
points are exactly the nondominated set of the backend's outcomes.

With the epsilon-constraint scalarization on the first component and the
min-v1 selection rule, the selected box is never split with respect to the
first component: the stage-1 optimum certifies that this child region holds no
feasible outcome. This is what brings the subproblem count down to 2|N|-1.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .dominance import OutcomeSet, ideal_point, weakly_dominates
from .generic_split import global_redundancy_filter, init_starting_box
from .scalarize import Method, ScalarizationConfig, build_epsilon_constraint, build_tchebycheff
from .backends import solve
from .validation import UsageError, check_positive_int
from .vsplit import init_starting_box_vsplit


class Algorithm(str, Enum):
    GENERIC = "generic"
    VSPLIT = "vsplit"


class SelectionRule(str, Enum):
    FIRST_IN_LIST = "first"
    MIN_V1 = "minv1"


class VerificationError(RuntimeError):
    """An enabled runtime invariant check failed; carries the first violation."""


@dataclass
class RunConfig:
    algorithm: Algorithm = Algorithm.VSPLIT
    scalarization: ScalarizationConfig = field(default_factory=ScalarizationConfig)
    selection: SelectionRule = SelectionRule.FIRST_IN_LIST
    delta: int = 1
    verify_invariants: bool = False

    def validate(self, m):
        check_positive_int(self.delta, "delta")
        self.scalarization.validate(m)
        if self.algorithm is Algorithm.VSPLIT and m != 3:
            raise UsageError(f"algorithm 'vsplit' requires m=3, got m={m}")
        if self.selection is SelectionRule.MIN_V1:
            if self.algorithm is not Algorithm.VSPLIT:
                raise UsageError("selection 'minv1' requires the vsplit algorithm")
            if self.scalarization.method is not Method.EPSILON_CONSTRAINT or self.scalarization.objective_index != 1:
                raise UsageError("selection 'minv1' requires the epsilon-constraint scalarization on component 1")


@dataclass
class RunStats:
    subproblems_solved: int = 0
    points_found: int = 0
    boxes_created: int = 0
    boxes_removed: int = 0
    per_iteration_box_counts: list = field(default_factory=list)
    insertion_growths: list = field(default_factory=list)
    bound_value: int | None = None
    iteration_log: list = field(default_factory=list)
    box_trace: list | None = None
    snapshot: list | None = None
    filter_discrepancies: int = 0
    wall_time_ms: float = 0.0


def applicable_bound(n_size, m, cfg):
    """Worst-case subproblem count guaranteed for this configuration, or None.

    Bicriteria full split: exactly 2|N|-1. Tricriteria vsplit: 3|N|-2 for
    |N| >= 3 (3|N|+1 below that), improved to 2|N|-1 with min-v1 selection and
    the epsilon-constraint method on component 1. The generic algorithm for
    m >= 3 carries no guarantee: when points share component values, nested
    boxes across iterations survive its per-component filter.
    """
    if cfg.algorithm is Algorithm.GENERIC:
        return 2 * n_size - 1 if m == 2 else None
    if (
        cfg.selection is SelectionRule.MIN_V1
        and cfg.scalarization.method is Method.EPSILON_CONSTRAINT
        and cfg.scalarization.objective_index == 1
    ):
        return 2 * n_size - 1
    return 3 * n_size - 2 if n_size >= 3 else 3 * n_size + 1


def check_bound(stats, n_size, cfg, m=3):
    """True iff the run respected its guaranteed subproblem bound."""
    bound = applicable_bound(n_size, m, cfg)
    return True if bound is None else stats.subproblems_solved <= bound


def find_correctness_violation(decomposition, inserted, Z):
    """First violation of the decomposition-correctness condition, or None.

    On the outcome set itself, correctness means: a point lies inside some box
    exactly when no inserted point weakly dominates it, and no inserted point
    lies inside any box.
    """
    uppers = decomposition.upper_bounds()
    arr = Z.array
    if uppers:
        U = np.asarray(uppers, dtype=np.int64)
        in_box = (arr[:, None, :] < U[None, :, :]).all(axis=2).any(axis=1)
    else:
        in_box = np.zeros(len(arr), dtype=bool)
    if inserted:
        P = np.asarray(inserted, dtype=np.int64)
        dominated = (P[None, :, :] <= arr[:, None, :]).all(axis=2).any(axis=1)
    else:
        dominated = np.zeros(len(arr), dtype=bool)
    bad = in_box == dominated
    if bad.any():
        z = Z.points[int(np.argmax(bad))]
        if any(weakly_dominates(p, z) for p in inserted):
            return f"point {z} is weakly dominated by an inserted point but still lies inside a box"
        return f"point {z} is not weakly dominated by any inserted point yet lies in no box"
    # Inserted points are weakly dominated by themselves, so the scan above
    # already forces them outside every box; recheck explicitly regardless.
    for p in inserted:
        if uppers and any(all(a < b for a, b in zip(p, u)) for u in uppers):
            return f"inserted point {p} still lies inside a box"
    return None


def verify_correctness(decomposition, inserted, Z):
    """Boolean form of :func:`find_correctness_violation`."""
    return find_correctness_violation(decomposition, inserted, Z) is None


def _select_box(decomposition, cfg):
    if cfg.selection is SelectionRule.MIN_V1:
        return min(decomposition.boxes, key=lambda b: (b.v[0], b.id))
    return min(decomposition.boxes, key=lambda b: b.id)


def _build_subproblem(u, l, scal_cfg):
    if scal_cfg.method is Method.EPSILON_CONSTRAINT:
        return build_epsilon_constraint(u, l, scal_cfg)
    return build_tchebycheff(u, l, scal_cfg)


def _check_vsplit_invariants(decomposition, record, frozen, iteration):
    if record is not None:
        if record.growth > 2:
            raise VerificationError(f"iteration {iteration}: box count grew by {record.growth} (> 2) on insertion")
        if record.boxes_split_two > 3:
            raise VerificationError(f"iteration {iteration}: {record.boxes_split_two} boxes split in exactly two components")
        if record.boxes_split_two == 3 and record.boxes_split_zero < 1:
            raise VerificationError(f"iteration {iteration}: three two-component splits without a zero-split box")
    boxes = decomposition.boxes
    for box in boxes:
        if any(v < lv for v, lv in zip(box.v, decomposition.l)):
            raise VerificationError(f"iteration {iteration}: box {box.id} has v below the global lower bound")
        if any(v > u for v, u in zip(box.v, box.u)):
            raise VerificationError(f"iteration {iteration}: box {box.id} has v above u")
        if not box.quasi and any(v >= u for v, u in zip(box.v, box.u)):
            raise VerificationError(f"iteration {iteration}: box {box.id} has an empty exclusive region but no quasi flag")
        prev = frozen.get(box.id)
        if prev is None:
            frozen[box.id] = (box.u, box.v)
        elif prev != (box.u, box.v):
            raise VerificationError(f"iteration {iteration}: box {box.id} changed bounds after creation")
    if len(boxes) > 1:
        U = np.asarray([b.u for b in boxes], dtype=np.int64)
        nested = (U[:, None, :] <= U[None, :, :]).all(axis=2)
        np.fill_diagonal(nested, False)
        nested[[i for i, b in enumerate(boxes) if b.quasi], :] = False
        if nested.any():
            a_idx, b_idx = map(int, np.argwhere(nested)[0])
            raise VerificationError(
                f"iteration {iteration}: non-quasi box {boxes[a_idx].id} is nested inside box {boxes[b_idx].id}"
            )


def run(backend, cfg, *, snapshot_iteration=None, capture_box_trace=False, corrupt_hook=None):
    """Enumerate the complete nondominated set of the backend's outcomes.

    Returns ``(nondominated_points, stats)`` with points in generation order.
    ``snapshot_iteration`` captures the decomposition dump after a given
    iteration (or after the final insertion when set to ``"last-insertion"``);
    ``corrupt_hook`` is a test hook called with (decomposition, iteration)
    before the invariant checks run.
    """
    start = time.perf_counter()
    Z = backend.outcome_set()
    cfg.validate(Z.m)
    l = ideal_point(Z)
    if cfg.algorithm is Algorithm.VSPLIT:
        decomposition = init_starting_box_vsplit(Z, cfg.delta)
    else:
        decomposition = init_starting_box(Z, cfg.delta)

    stats = RunStats(boxes_created=1)
    if capture_box_trace:
        stats.box_trace = []
    found = []
    frozen = {}
    iteration = 0
    use_skip = (
        cfg.algorithm is Algorithm.VSPLIT
        and cfg.selection is SelectionRule.MIN_V1
        and cfg.scalarization.method is Method.EPSILON_CONSTRAINT
        and cfg.scalarization.objective_index == 1
    )

    while decomposition.boxes:
        iteration += 1
        box = _select_box(decomposition, cfg)
        sub = _build_subproblem(box.u, l, cfg.scalarization)
        z = solve(backend, sub)
        record = None
        if z is None:
            decomposition.boxes.remove(box)
            stats.boxes_removed += 1
            result = "infeasible"
        else:
            found.append(z)
            if cfg.algorithm is Algorithm.VSPLIT:
                record = decomposition.step(z, box.id if use_skip else None)
                created, removed = record.created, record.removed
                stats.insertion_growths.append(record.growth)
            else:
                created, removed = decomposition.step(z)
                stats.insertion_growths.append(created - removed)
            stats.boxes_created += created
            stats.boxes_removed += removed
            result = ",".join(str(c) for c in z)
        stats.subproblems_solved += 1
        stats.per_iteration_box_counts.append(len(decomposition.boxes))
        stats.iteration_log.append(f"{iteration};{box.id};{result};{len(decomposition.boxes)}")
        if capture_box_trace:
            stats.box_trace.append(tuple(sorted(decomposition.upper_bounds())))
        if snapshot_iteration == iteration or (snapshot_iteration == "last-insertion" and z is not None):
            stats.snapshot = decomposition.dump_lines()
        if corrupt_hook is not None:
            corrupt_hook(decomposition, iteration)
        if cfg.verify_invariants:
            violation = find_correctness_violation(decomposition, found, Z)
            if violation is not None:
                raise VerificationError(f"iteration {iteration}: {violation}")
            if cfg.algorithm is Algorithm.VSPLIT:
                _check_vsplit_invariants(decomposition, record, frozen, iteration)
            elif z is not None:
                survivors = global_redundancy_filter(decomposition.upper_bounds())
                stats.filter_discrepancies += len(decomposition.boxes) - len(survivors)

    stats.points_found = len(found)
    stats.bound_value = applicable_bound(len(found), Z.m, cfg)
    stats.wall_time_ms = (time.perf_counter() - start) * 1000.0
    nondominated = OutcomeSet.from_points(found, m=Z.m)
    return nondominated, stats
