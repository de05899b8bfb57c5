"""Scalarized subproblems derived from a box of the search region.

Two methods are supported, each in a two-stage and an augmented variant:

* epsilon-constraint: minimize one component subject to the box bounds;
* weighted Tchebycheff: minimize the largest range-normalized distance to a
  reference point one grid unit below the global lower bound.

All arithmetic is exact. Rather than a "sufficiently small" augmentation
weight, the augmented variants scale the primary objective by an integer D
chosen so one unit of it always outweighs the whole objective-sum range, which
makes the combined objective exactly lexicographic on the grid. Weighted
Tchebycheff weights 1/(u_i - r_i) are handled by cross-multiplication: each
term (z_i - r_i)/(u_i - r_i) is compared as (z_i - r_i) * prod_{j!=i}(u_j - r_j).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import prod

import numpy as np

from .validation import UsageError, check_positive_int


class Method(str, Enum):
    EPSILON_CONSTRAINT = "ec"
    WEIGHTED_TCHEBYCHEFF = "wt"


class Variant(str, Enum):
    TWO_STAGE = "ts"
    AUGMENTED = "aug"


# Largest scalar score magnitude the int64 fast path may produce.
_INT64_SAFE = 2**62


@dataclass(frozen=True)
class ScalarizationConfig:
    method: Method = Method.EPSILON_CONSTRAINT
    variant: Variant = Variant.TWO_STAGE
    objective_index: int = 1  # 1-based component minimized by epsilon-constraint
    rho_denominator_slack: int = 1

    def validate(self, m):
        if not 1 <= self.objective_index <= m:
            raise UsageError(f"objective_index must be in 1..{m}, got {self.objective_index}")
        check_positive_int(self.rho_denominator_slack, "rho_denominator_slack")


@dataclass(frozen=True)
class Subproblem:
    """A single-objective problem over the outcomes below a box bound.

    Feasible outcomes satisfy z_i <= upper_i - 1 in every component (the
    strict box bounds on the integer grid), which also makes any optimum
    nondominated in the full outcome set: a dominator of an in-box point lies
    in the box itself.
    """

    method: Method
    variant: Variant
    upper: tuple
    objective: int | None = None  # 0-based, epsilon-constraint only
    reference: tuple | None = None  # weighted Tchebycheff only
    weight_products: tuple | None = None  # cross-multiplied weights, per component
    augmentation_scale: int | None = None  # D, augmented variants only


def _augmentation_scale(u, l, cfg):
    return cfg.rho_denominator_slack + sum(ui - li for ui, li in zip(u, l))


def build_epsilon_constraint(u, l, cfg):
    """Stage-1 objective z_k under the box bounds.

    The bound on the objective component itself is kept as a feasibility
    constraint: an optimum at or above it means the box holds no feasible
    point, which the caller treats as an infeasible subproblem.
    """
    cfg.validate(len(u))
    return Subproblem(
        method=Method.EPSILON_CONSTRAINT,
        variant=cfg.variant,
        upper=tuple(u),
        objective=cfg.objective_index - 1,
        augmentation_scale=_augmentation_scale(u, l, cfg) if cfg.variant is Variant.AUGMENTED else None,
    )


def build_tchebycheff(u, l, cfg):
    """Stage-1 objective max_i of the cross-multiplied weighted distances."""
    cfg.validate(len(u))
    if not all(ui > li for ui, li in zip(u, l)):
        raise UsageError(f"box bound {tuple(u)} must exceed the lower bound {tuple(l)} everywhere")
    reference = tuple(li - 1 for li in l)
    spans = [ui - ri for ui, ri in zip(u, reference)]
    weight_products = tuple(prod(spans[j] for j in range(len(u)) if j != i) for i in range(len(u)))
    return Subproblem(
        method=Method.WEIGHTED_TCHEBYCHEFF,
        variant=cfg.variant,
        upper=tuple(u),
        reference=reference,
        weight_products=weight_products,
        augmentation_scale=_augmentation_scale(u, l, cfg) if cfg.variant is Variant.AUGMENTED else None,
    )


def _scalar_bound(sub, lo, hi):
    """Upper bound on |stage-1 score| over candidates within [lo, hi]."""
    if sub.method is Method.EPSILON_CONSTRAINT:
        return max(abs(int(lo[sub.objective])), abs(int(hi[sub.objective])))
    bound = 0
    for i, wp in enumerate(sub.weight_products):
        worst = max(abs(int(lo[i]) - sub.reference[i]), abs(int(hi[i]) - sub.reference[i]))
        bound = max(bound, worst * wp)
    return bound


def _python_scalar(sub, z):
    if sub.method is Method.EPSILON_CONSTRAINT:
        return z[sub.objective]
    return max((zi - ri) * wp for zi, ri, wp in zip(z, sub.reference, sub.weight_products))


def _evaluate_python(sub, cand):
    """Exact fallback on Python ints; tie-breaks match the array path."""
    if sub.variant is Variant.AUGMENTED:
        D = sub.augmentation_scale
        return min(cand, key=lambda z: (_python_scalar(sub, z) * D + sum(z), z))
    zstar = min(cand, key=lambda z: (_python_scalar(sub, z), sum(z), z))
    covered = [z for z in cand if all(a <= b for a, b in zip(z, zstar))]
    return min(covered, key=lambda z: (sum(z), z))


def _lex_first(cand, *keys):
    """Row of cand minimizing (keys..., cand columns lexicographically)."""
    m = cand.shape[1]
    sort_keys = tuple(cand[:, c] for c in range(m - 1, -1, -1)) + tuple(reversed(keys))
    idx = np.lexsort(sort_keys)[0]
    return tuple(int(x) for x in cand[idx])


def _array_scalar(sub, cand):
    if sub.method is Method.EPSILON_CONSTRAINT:
        return cand[:, sub.objective]
    ref = np.asarray(sub.reference, dtype=np.int64)
    wp = np.asarray(sub.weight_products, dtype=np.int64)
    return ((cand - ref) * wp).max(axis=1)


def evaluate(sub, Z):
    """Optimal outcome of the subproblem over Z, or None when no outcome
    satisfies the bound constraints. Infeasibility is a value, not an error.

    Among tied optima the lexicographically smallest outcome is returned, so
    evaluation is deterministic.
    """
    arr = Z.array
    upper = np.asarray(sub.upper, dtype=np.int64)
    mask = (arr < upper).all(axis=1)
    if not mask.any():
        return None
    cand = arr[mask]
    lo = cand.min(axis=0)
    hi = cand.max(axis=0)
    bound = _scalar_bound(sub, lo, hi)
    if sub.variant is Variant.AUGMENTED:
        bound = bound * sub.augmentation_scale + cand.shape[1] * int(np.abs(cand).max())
    if bound >= _INT64_SAFE:
        return _evaluate_python(sub, [tuple(int(c) for c in row) for row in cand])
    sigma = _array_scalar(sub, cand)
    ssum = cand.sum(axis=1)
    if sub.variant is Variant.AUGMENTED:
        return _lex_first(cand, sigma * sub.augmentation_scale + ssum)
    zstar = _lex_first(cand, sigma, ssum)
    covered = cand[(cand <= np.asarray(zstar, dtype=np.int64)).all(axis=1)]
    return _lex_first(covered, covered.sum(axis=1))


def certifies_stage1_optimality(sub, Z, zstar):
    """Check by enumeration that no outcome satisfying the bound constraints
    beats zstar's stage-1 score (used in verification mode)."""
    arr = Z.array
    mask = (arr < np.asarray(sub.upper, dtype=np.int64)).all(axis=1)
    if not mask.any():
        return False
    scores = [_python_scalar(sub, tuple(int(c) for c in row)) for row in arr[mask]]
    return min(scores) == _python_scalar(sub, tuple(zstar))
