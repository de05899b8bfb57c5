"""Tricriteria decomposition with redundancy-avoiding splits.

Each box carries, next to its exclusive upper bound u, a lower-bound vector v
marking the part of the box no other box covers (its exclusive subregion
{z : v <= z < u}). A box containing a new point is split only with respect to
components i where z_i >= v_i: splits below v would recreate regions some
sibling already covers. The v vectors are maintained by sorting the children
created for each component and chaining their bounds, so no pairwise
redundancy scan is ever needed.

When nondominated points tie in a component, a child whose region is covered
by other boxes can still be created. Such boxes are kept and flagged as
quasi-redundant (recognizable by v_i = u_i in some component): dropping them
would break the box shape of the other boxes' exclusive subregions. They
split like any other box.
"""

from __future__ import annotations

from dataclasses import dataclass

from .validation import DecompositionStateError, UsageError
from .dominance import ideal_point, upper_bound_point
from .generic_split import box_contains


@dataclass
class VBox:
    """Box with exclusive upper bound u and exclusive-subregion lower bound v."""

    id: int
    u: tuple
    v: tuple
    quasi: bool = False


@dataclass
class StepRecord:
    """Counters from one insertion, used for invariant checks."""

    created: int
    removed: int
    growth: int
    boxes_split_two: int
    boxes_split_zero: int
    boxes_split_three: int


def v_split_components(box, z, l):
    """Components with respect to which ``box`` is split for point z.

    A component qualifies when z_i clears the box's exclusive lower bound
    (z_i >= v_i) and lies above the global lower bound (z_i > l_i). An empty
    result means the box is removed without children (a '0-box').
    """
    if not box_contains(box, z):
        raise UsageError(f"point {z} is not contained in box {box.u}")
    return [i for i in range(len(z)) if z[i] >= box.v[i] and z[i] > l[i]]


class _PendingChild:
    """Child box awaiting its v update; remembers its parent's v."""

    __slots__ = ("u", "v", "seq")

    def __init__(self, u, v, seq):
        self.u = u
        self.v = list(v)
        self.seq = seq


class VSplitDecomposition:
    """Mutable tricriteria box set with per-box exclusive lower bounds."""

    def __init__(self, l, u0):
        if len(l) != 3:
            raise UsageError(f"the v-split decomposition requires exactly 3 objectives, got m={len(l)}")
        self.m = 3
        self.l = tuple(l)
        if not all(a < b for a, b in zip(self.l, u0)):
            raise UsageError(f"starting bound {tuple(u0)} must exceed the lower bound {self.l} everywhere")
        self._next_id = 0
        self.boxes = [self._new_box(tuple(u0), self.l)]
        self.inserted = 0

    def _new_box(self, u, v):
        box = VBox(id=self._next_id, u=u, v=tuple(v), quasi=any(a >= b for a, b in zip(v, u)))
        self._next_id += 1
        return box

    def upper_bounds(self):
        return [box.u for box in self.boxes]

    def boxes_containing(self, z):
        return [box for box in self.boxes if box_contains(box, z)]

    def generate_new_boxes(self, z, skip_first_component_of=None):
        """Remove every box containing z and stage its children per component.

        Children keep their parent's v until :meth:`update_individual_subsets`
        runs. ``skip_first_component_of`` suppresses the component-1 child of
        one box: the driver passes the selected box's id when the subproblem
        objective already certifies that child region holds no feasible point.
        """
        containing = self.boxes_containing(z)
        if not containing:
            raise DecompositionStateError(f"point {z} lies in no box of the decomposition")
        staged = {0: [], 1: [], 2: []}
        counts = {0: 0, 2: 0, 3: 0}
        seq = 0
        for box in containing:
            comps = v_split_components(box, z, self.l)
            if skip_first_component_of is not None and box.id == skip_first_component_of and 0 in comps:
                comps.remove(0)
            if len(comps) == 0:
                counts[0] += 1
            elif len(comps) == 2:
                counts[2] += 1
            elif len(comps) == 3:
                counts[3] += 1
            for i in comps:
                u_child = list(box.u)
                u_child[i] = z[i]
                staged[i].append(_PendingChild(tuple(u_child), box.v, seq))
                seq += 1
        removed_ids = {box.id for box in containing}
        self.boxes = [box for box in self.boxes if box.id not in removed_ids]
        return staged, len(containing), counts

    def update_individual_subsets(self, staged, z):
        """Set the children's v vectors by chaining their sorted bounds.

        For split component i the children are ordered with u_j non-decreasing
        and u_k non-increasing (j < k the other two components); fully equal
        upper-bound pairs are reordered by v instead. The outermost children
        inherit the point's value, interior neighbors inherit each other's
        bounds, and component i keeps the parent's value.
        """
        created = 0
        for i in (0, 1, 2):
            chain = staged[i]
            if not chain:
                continue
            j, k = [c for c in (0, 1, 2) if c != i]
            chain.sort(key=lambda b: (b.u[j], -b.u[k], b.seq))
            self._resort_equal_upper_runs(chain, j, k)
            chain[0].v[j] = z[j]
            chain[-1].v[k] = z[k]
            for q in range(1, len(chain)):
                chain[q].v[j] = chain[q - 1].u[j]
                chain[q - 1].v[k] = chain[q].u[k]
            for child in chain:
                self.boxes.append(self._new_box(child.u, child.v))
                created += 1
        return created

    @staticmethod
    def _resort_equal_upper_runs(chain, j, k):
        # Only runs of fully equal u need the secondary order; they can only
        # appear when inserted points tie in one component.
        start = 0
        while start < len(chain):
            end = start + 1
            while end < len(chain) and chain[end].u == chain[start].u:
                end += 1
            if end - start > 1:
                chain[start:end] = sorted(chain[start:end], key=lambda b: (b.v[j], -b.v[k], b.seq))
            start = end

    def step(self, z, skip_first_component_of=None):
        """Insert a nondominated point; returns counters for invariant checks."""
        before = len(self.boxes)
        staged, removed, counts = self.generate_new_boxes(z, skip_first_component_of)
        created = self.update_individual_subsets(staged, z)
        self.inserted += 1
        return StepRecord(
            created=created,
            removed=removed,
            growth=len(self.boxes) - before,
            boxes_split_two=counts[2],
            boxes_split_zero=counts[0],
            boxes_split_three=counts[3],
        )

    def dump_lines(self):
        """One line per box: ``id;u_1,u_2,u_3;v_1,v_2,v_3;quasi_flag``."""
        return [
            f"{box.id};{','.join(str(c) for c in box.u)};{','.join(str(c) for c in box.v)};{int(box.quasi)}"
            for box in self.boxes
        ]


def init_starting_box_vsplit(Z, delta):
    """VSplitDecomposition holding the single starting box that encloses Z."""
    if Z.m != 3:
        raise UsageError(f"the v-split decomposition requires exactly 3 objectives, got m={Z.m}")
    return VSplitDecomposition(l=ideal_point(Z), u0=upper_bound_point(Z, delta))
