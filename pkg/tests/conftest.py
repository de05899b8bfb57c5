"""Shared independent oracles and instance generators.

The oracles here deliberately avoid the library's own code paths: plain
Python loops over tuples, written from the definitions, so library results
can be cross-checked against them.
"""

from boxfront import OutcomeSet


def naive_front(points):
    """O(n^2) pairwise dominance filter: keep a point unless some other point
    is componentwise <= it with at least one strict inequality."""
    kept = []
    for z in points:
        dominated = False
        for other in points:
            if other == z:
                continue
            if all(a <= b for a, b in zip(other, z)) and any(a < b for a, b in zip(other, z)):
                dominated = True
                break
        if not dominated:
            kept.append(z)
    return kept


def naive_global_box_filter(bounds):
    """Pairwise filter over upper bounds: drop any bound componentwise <=
    another; exact duplicates keep the first occurrence."""
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


class GlobalFilterDecomposition:
    """Reference decomposition: split every containing box with respect to
    every component above the global lower bound, then filter the complete
    box list pairwise. Serves as the oracle for the in-loop per-component
    filter (they agree whenever inserted points never share a component
    value)."""

    def __init__(self, l, u0):
        self.l = tuple(l)
        self.bounds = [tuple(u0)]

    def step(self, z):
        result = []
        for u in self.bounds:
            if all(a < b for a, b in zip(z, u)):
                for i in range(len(u)):
                    if z[i] > self.l[i]:
                        child = list(u)
                        child[i] = z[i]
                        result.append(tuple(child))
            else:
                result.append(u)
        self.bounds = naive_global_box_filter(result)


def random_outcome_set(rng, n, m=3, hi=60):
    """Distinct random points with coordinates in [0, hi)."""
    points = set()
    while len(points) < n:
        points.add(tuple(rng.randrange(hi) for _ in range(m)))
    return OutcomeSet.from_points(sorted(points), m=m)


def distinct_component_instance(rng, n, m=3, hi=1000):
    """Instance whose points are pairwise distinct in every component, so the
    nondominated subset certainly is as well."""
    columns = [rng.sample(range(hi), n) for _ in range(m)]
    points = [tuple(columns[c][i] for c in range(m)) for i in range(n)]
    return OutcomeSet.from_points(points, m=m)
