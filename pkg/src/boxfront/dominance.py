"""Exact integer outcome vectors, dominance relations and the pairwise front filter.

Everything here works on a discrete integer grid (minimization in every
component). Points are plain tuples of ints, so all comparisons are exact;
there are no tolerances anywhere in the library.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

from .validation import UsageError, check_outcome_array, check_positive_int


class DominanceRelation(Enum):
    """The six mutually exclusive ways two outcome vectors can relate."""

    STRICTLY_DOMINATES = "strictly_dominates"
    DOMINATES = "dominates"
    EQUAL = "equal"
    IS_DOMINATED = "is_dominated"
    IS_STRICTLY_DOMINATED = "is_strictly_dominated"
    INCOMPARABLE = "incomparable"

    def mirror(self):
        """Relation seen from the other point's perspective."""
        return _MIRROR[self]


_MIRROR = {
    DominanceRelation.STRICTLY_DOMINATES: DominanceRelation.IS_STRICTLY_DOMINATED,
    DominanceRelation.DOMINATES: DominanceRelation.IS_DOMINATED,
    DominanceRelation.EQUAL: DominanceRelation.EQUAL,
    DominanceRelation.IS_DOMINATED: DominanceRelation.DOMINATES,
    DominanceRelation.IS_STRICTLY_DOMINATED: DominanceRelation.STRICTLY_DOMINATES,
    DominanceRelation.INCOMPARABLE: DominanceRelation.INCOMPARABLE,
}


def compare(z, zbar):
    """Classify the ordered pair (z, zbar) into exactly one DominanceRelation.

    ``DOMINATES`` means componentwise <= with at least one strict inequality
    and at least one tie; the all-strict case is ``STRICTLY_DOMINATES``.
    """
    if len(z) != len(zbar):
        raise UsageError(f"dimension mismatch: {len(z)} vs {len(zbar)}")
    lt = gt = 0
    for a, b in zip(z, zbar):
        if a < b:
            lt += 1
        elif a > b:
            gt += 1
    m = len(z)
    if lt == 0 and gt == 0:
        return DominanceRelation.EQUAL
    if gt == 0:
        return DominanceRelation.STRICTLY_DOMINATES if lt == m else DominanceRelation.DOMINATES
    if lt == 0:
        return DominanceRelation.IS_STRICTLY_DOMINATED if gt == m else DominanceRelation.IS_DOMINATED
    return DominanceRelation.INCOMPARABLE


def weakly_dominates(z, zbar):
    """True iff z <= zbar in every component (equality allowed everywhere)."""
    return all(a <= b for a, b in zip(z, zbar))


def dominates(z, zbar):
    """True iff z <= zbar componentwise with at least one strict inequality."""
    return weakly_dominates(z, zbar) and z != zbar


@dataclass(frozen=True)
class OutcomeSet:
    """A finite set of distinct integer outcome vectors of common dimension m.

    The point order is preserved; duplicates are rejected at construction
    (use ``from_points(..., dedupe=True)`` to drop them explicitly instead).
    """

    m: int
    points: tuple

    def __post_init__(self):
        if self.m < 2:
            raise UsageError(f"need at least 2 objectives, got m={self.m}")
        if not self.points:
            raise UsageError("outcome set must not be empty")
        for z in self.points:
            if len(z) != self.m:
                raise UsageError(f"point {z} has dimension {len(z)}, expected {self.m}")
        if len(set(self.points)) != len(self.points):
            raise UsageError("outcome set contains duplicate points; pass dedupe=True to drop them")

    @classmethod
    def from_points(cls, points, m=None, dedupe=False):
        pts = [tuple(int(c) for c in z) for z in points]
        if dedupe:
            seen = set()
            unique = []
            for z in pts:
                if z not in seen:
                    seen.add(z)
                    unique.append(z)
            pts = unique
        if m is None:
            if not pts:
                raise UsageError("outcome set must not be empty")
            m = len(pts[0])
        return cls(m=m, points=tuple(pts))

    @classmethod
    def from_array(cls, X, dedupe=False):
        arr = check_outcome_array(X)
        return cls.from_points(arr.tolist(), m=arr.shape[1], dedupe=dedupe)

    def __len__(self):
        return len(self.points)

    @cached_property
    def array(self):
        """The points as an (n, m) int64 array; cached, treat as read-only."""
        return np.asarray(self.points, dtype=np.int64)


def _dominated_mask(arr, against):
    """Mask of rows in ``arr`` dominated by some row of ``against``.

    Pairwise test, vectorized in chunks; a row never dominates itself because
    domination requires a strict inequality somewhere.
    """
    n = len(arr)
    mask = np.zeros(n, dtype=bool)
    chunk = max(64, min(2048, 2**23 // max(len(against), 1)))
    for start in range(0, n, chunk):
        block = arr[start:start + chunk]
        le_all = (against[None, :, :] <= block[:, None, :]).all(axis=2)
        lt_any = (against[None, :, :] < block[:, None, :]).any(axis=2)
        mask[start:start + chunk] = (le_all & lt_any).any(axis=1)
    return mask


def filter_nondominated(Z):
    """Return exactly the points of Z not dominated by another point of Z.

    Pairwise dominance testing; input order is preserved. Large sets (e.g.
    materialized knapsack outcome sets) first drop everything dominated by the
    front of a deterministic sample, which is sound: a dominator of a dropped
    point is itself dominated by the sample front, so it never survives either.
    """
    arr = Z.array
    n = len(arr)
    if n > 2048:
        sample = arr[:: max(1, n // 512)]
        sample_front = sample[~_dominated_mask(sample, sample)]
        survivors = np.flatnonzero(~_dominated_mask(arr, sample_front))
        keep = np.zeros(n, dtype=bool)
        keep[survivors[~_dominated_mask(arr[survivors], arr[survivors])]] = True
    else:
        keep = ~_dominated_mask(arr, arr)
    points = tuple(z for z, k in zip(Z.points, keep) if k)
    return OutcomeSet(m=Z.m, points=points)


def ideal_point(Z):
    """Componentwise minimum over the outcome set."""
    return tuple(int(v) for v in Z.array.min(axis=0))


def upper_bound_point(Z, delta):
    """Componentwise maximum plus delta; strictly above every point of Z."""
    check_positive_int(delta, "delta")
    return tuple(int(v) + delta for v in Z.array.max(axis=0))
