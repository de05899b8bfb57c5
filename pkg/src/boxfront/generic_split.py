"""Search-region decomposition by full m-component splits (any m >= 2).

The search region is kept as a set of half-open boxes {z : l <= z < u} that
all share the global lower bound l. Inserting a nondominated point replaces
every box containing it by up to m children, each capped at the point's value
in one component. Children created in the same step for the same component
can nest; those are filtered pairwise before insertion.
"""

from __future__ import annotations

from dataclasses import dataclass

from .validation import DecompositionStateError, UsageError
from .dominance import ideal_point, upper_bound_point


@dataclass
class Box:
    """A half-open region described by its exclusive upper bound u."""

    id: int
    u: tuple


def box_contains(box, z):
    """Membership test; the shared lower bound never needs checking for
    points generated inside the search region."""
    return all(a < b for a, b in zip(z, box.u))


def full_m_split(box, z, l):
    """Children of ``box`` capped at z, one per component where z exceeds l.

    Returns (component, child_upper_bound) pairs. Components where z sits on
    the global lower bound are skipped: their child could not contain any
    feasible point.
    """
    if not box_contains(box, z):
        raise UsageError(f"point {z} is not contained in box {box.u}")
    children = []
    for i, (zi, li) in enumerate(zip(z, l)):
        if zi > li:
            u_child = list(box.u)
            u_child[i] = zi
            children.append((i, tuple(u_child)))
    return children


def remove_redundant(groups):
    """Drop nested children within each same-component group.

    ``groups`` maps a split component to the upper bounds created for it in
    one step. A bound that is componentwise <= another group member is
    redundant; exact duplicates keep only their first occurrence. Bounds from
    different groups are never compared (they cannot nest).
    """
    filtered = {}
    for comp, bounds in groups.items():
        kept = []
        for idx, u in enumerate(bounds):
            redundant = False
            for jdx, other in enumerate(bounds):
                if jdx == idx:
                    continue
                if all(a <= b for a, b in zip(u, other)) and (u != other or jdx < idx):
                    redundant = True
                    break
            if not redundant:
                kept.append(u)
        filtered[comp] = kept
    return filtered


def global_redundancy_filter(bounds):
    """Pairwise filter over arbitrary upper bounds (verification oracle).

    Unlike :func:`remove_redundant` this compares every pair, so it also
    catches nesting across components and across steps, which the in-loop
    filter intentionally does not look for.
    """
    kept = []
    for idx, u in enumerate(bounds):
        redundant = False
        for jdx, other in enumerate(bounds):
            if jdx == idx:
                continue
            if all(a <= b for a, b in zip(u, other)) and (u != other or jdx < idx):
                redundant = True
                break
        if not redundant:
            kept.append(u)
    return kept


class Decomposition:
    """Mutable box set with a shared global lower bound; single writer."""

    def __init__(self, l, u0, m=None):
        self.m = m if m is not None else len(l)
        self.l = tuple(l)
        if not all(a < b for a, b in zip(self.l, u0)):
            raise UsageError(f"starting bound {tuple(u0)} must exceed the lower bound {self.l} everywhere")
        self._next_id = 0
        self.boxes = [self._new_box(tuple(u0))]

    def _new_box(self, u):
        box = Box(id=self._next_id, u=u)
        self._next_id += 1
        return box

    def upper_bounds(self):
        return [box.u for box in self.boxes]

    def boxes_containing(self, z):
        return [box for box in self.boxes if box_contains(box, z)]

    def step(self, z):
        """Insert a nondominated point: split every containing box, filter
        nested children per component, append the survivors.

        Returns (created, removed) counts. Raises if z is in no box, which
        means the caller's state is inconsistent (points must come from a
        subproblem over some current box).
        """
        containing = self.boxes_containing(z)
        if not containing:
            raise DecompositionStateError(f"point {z} lies in no box of the decomposition")
        groups = {}
        for box in containing:
            for comp, u_child in full_m_split(box, z, self.l):
                groups.setdefault(comp, []).append(u_child)
        groups = remove_redundant(groups)
        removed_ids = {box.id for box in containing}
        self.boxes = [box for box in self.boxes if box.id not in removed_ids]
        created = 0
        # Deterministic ids: component groups in ascending order, bounds in
        # lexicographic order within a group.
        for comp in sorted(groups):
            for u_child in sorted(groups[comp]):
                self.boxes.append(self._new_box(u_child))
                created += 1
        return created, len(containing)

    def dump_lines(self):
        """One line per box: ``id;u_1,...,u_m`` (decimal integers)."""
        return [f"{box.id};{','.join(str(c) for c in box.u)}" for box in self.boxes]


def init_starting_box(Z, delta):
    """Decomposition holding the single starting box that encloses Z."""
    return Decomposition(l=ideal_point(Z), u0=upper_bound_point(Z, delta), m=Z.m)
