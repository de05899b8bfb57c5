"""Subproblem-solving backends and instance file formats.

The explicit-set backend evaluates subproblems directly over a given outcome
set. The knapsack backend covers tricriteria multidimensional 0-1 knapsack
instances at desk scale by enumerating all feasible selections once, negating
profits into minimization outcomes, and then behaving exactly like an
explicit-set backend.

File formats (plain text, whitespace separated):

* explicit set: first line ``m n``, then n lines of m integers;
* knapsack: first line ``n``, lines 2-4 the three profit rows, lines 5-7 the
  three weight rows, line 8 the three capacities.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .dominance import OutcomeSet
from .scalarize import evaluate
from .validation import InstanceFormatError, UsageError, check_positive_int

DEFAULT_ENUMERATION_CAP = 20


@dataclass(frozen=True)
class KnapsackInstance:
    """0-1 knapsack data with three profit rows and three weight constraints."""

    profits: tuple  # 3 rows of n non-negative ints
    weights: tuple  # 3 rows of n non-negative ints
    capacities: tuple  # 3 non-negative ints

    def __post_init__(self):
        if len(self.profits) != 3 or len(self.weights) != 3 or len(self.capacities) != 3:
            raise UsageError("knapsack instances need exactly 3 profit rows, 3 weight rows and 3 capacities")
        n = len(self.profits[0])
        for row in (*self.profits, *self.weights):
            if len(row) != n:
                raise UsageError("all profit and weight rows must have the same length")
            if any(c < 0 for c in row):
                raise UsageError("profits and weights must be non-negative")
        if any(c < 0 for c in self.capacities):
            raise UsageError("capacities must be non-negative")

    @property
    def n(self):
        return len(self.profits[0])


def materialize_outcomes(inst, cap=DEFAULT_ENUMERATION_CAP):
    """Enumerate all feasible selections and map them to minimization outcomes.

    Walks the items once, extending every feasible partial selection by the
    next item and pruning on the weight constraints (weights are non-negative,
    so an infeasible partial selection never becomes feasible again). Profit
    vectors are negated and deduplicated.
    """
    if inst.n > cap:
        raise UsageError(
            f"n={inst.n} exceeds the enumeration cap of {cap}; lower n (the backend materializes all selections)"
        )
    profits = np.asarray(inst.profits, dtype=np.int64).T  # n x 3
    weights = np.asarray(inst.weights, dtype=np.int64).T
    caps = np.asarray(inst.capacities, dtype=np.int64)
    states = np.zeros((1, 6), dtype=np.int64)  # profit triple, weight triple
    for item in range(inst.n):
        extended = states + np.concatenate([profits[item], weights[item]])
        feasible = (extended[:, 3:] <= caps).all(axis=1)
        states = np.unique(np.vstack([states, extended[feasible]]), axis=0)
    outcomes = np.unique(-states[:, :3], axis=0)
    return OutcomeSet.from_points(outcomes.tolist(), m=3)


class ExplicitSetBackend:
    """Backend over an explicitly given outcome set."""

    def __init__(self, outcomes):
        self.outcomes = outcomes

    def outcome_set(self):
        return self.outcomes


class KnapsackBackend:
    """Backend that materializes a knapsack instance's outcome set on demand."""

    def __init__(self, instance, cap=DEFAULT_ENUMERATION_CAP):
        self.instance = instance
        self.cap = cap

    @cached_property
    def _outcomes(self):
        return materialize_outcomes(self.instance, self.cap)

    def outcome_set(self):
        return self._outcomes


def solve(backend, sub):
    """Optimal outcome of the subproblem over the backend's outcomes, or None."""
    return evaluate(sub, backend.outcome_set())


def _read_lines(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read().splitlines()


def _parse_ints(line, lineno, expected=None):
    try:
        values = [int(tok) for tok in line.split()]
    except ValueError:
        raise InstanceFormatError(lineno, f"expected integers, got {line!r}") from None
    if expected is not None and len(values) != expected:
        raise InstanceFormatError(lineno, f"expected {expected} integers, got {len(values)}")
    return values


def read_explicit_file(path, dedupe=False):
    lines = _read_lines(path)
    if not lines or not lines[0].split():
        raise InstanceFormatError(1, "missing header 'm n'")
    m, n = _parse_ints(lines[0], 1, expected=2)
    if m < 2:
        raise InstanceFormatError(1, f"need at least 2 objectives, got m={m}")
    if n < 1:
        raise InstanceFormatError(1, f"need at least one point, got n={n}")
    if len(lines) < 1 + n:
        raise InstanceFormatError(len(lines) + 1, f"expected {n} point lines, file ends early")
    points = [_parse_ints(lines[i], i + 1, expected=m) for i in range(1, 1 + n)]
    try:
        outcomes = OutcomeSet.from_points(points, m=m, dedupe=dedupe)
    except UsageError as exc:
        raise InstanceFormatError(2, str(exc)) from None
    return ExplicitSetBackend(outcomes)


def read_knapsack_file(path, cap=DEFAULT_ENUMERATION_CAP):
    lines = _read_lines(path)
    if not lines or not lines[0].split():
        raise InstanceFormatError(1, "missing item count")
    (n,) = _parse_ints(lines[0], 1, expected=1)
    if n < 1:
        raise InstanceFormatError(1, f"need at least one item, got n={n}")
    if len(lines) < 8:
        raise InstanceFormatError(len(lines) + 1, "expected 8 lines (n, 3 profit rows, 3 weight rows, capacities)")
    profits = tuple(tuple(_parse_ints(lines[i], i + 1, expected=n)) for i in range(1, 4))
    weights = tuple(tuple(_parse_ints(lines[i], i + 1, expected=n)) for i in range(4, 7))
    capacities = tuple(_parse_ints(lines[7], 8, expected=3))
    try:
        instance = KnapsackInstance(profits=profits, weights=weights, capacities=capacities)
    except UsageError as exc:
        raise InstanceFormatError(2, str(exc)) from None
    return KnapsackBackend(instance, cap=cap)


def read_instance(path, dedupe=False, cap=DEFAULT_ENUMERATION_CAP):
    """Load an instance file, detecting the format from its first line."""
    lines = _read_lines(path)
    if not lines or not lines[0].split():
        raise InstanceFormatError(1, "empty instance file")
    header = lines[0].split()
    if len(header) == 1:
        return read_knapsack_file(path, cap=cap)
    if len(header) == 2:
        return read_explicit_file(path, dedupe=dedupe)
    raise InstanceFormatError(1, f"header must be 'n' (knapsack) or 'm n' (explicit set), got {lines[0]!r}")


def write_explicit_file(path, outcomes):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{outcomes.m} {len(outcomes)}\n")
        for z in outcomes.points:
            fh.write(" ".join(str(c) for c in z) + "\n")


def write_knapsack_file(path, instance):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{instance.n}\n")
        for row in instance.profits:
            fh.write(" ".join(str(c) for c in row) + "\n")
        for row in instance.weights:
            fh.write(" ".join(str(c) for c in row) + "\n")
        fh.write(" ".join(str(c) for c in instance.capacities) + "\n")


def generate_knapsack(n, seed):
    """Random instance: profits and weights uniform on [10, 100], capacities
    half the corresponding weight-row sums. Deterministic per seed."""
    check_positive_int(n, "n")
    if n > DEFAULT_ENUMERATION_CAP:
        raise UsageError(f"n must be in 1..{DEFAULT_ENUMERATION_CAP}, got {n}")
    rng = random.Random(seed)
    profits = tuple(tuple(rng.randint(10, 100) for _ in range(n)) for _ in range(3))
    weights = tuple(tuple(rng.randint(10, 100) for _ in range(n)) for _ in range(3))
    capacities = tuple(sum(row) // 2 for row in weights)
    return KnapsackInstance(profits=profits, weights=weights, capacities=capacities)
