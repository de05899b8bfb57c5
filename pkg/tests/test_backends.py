import itertools
import random

import pytest

from boxfront import (
    ExplicitSetBackend,
    KnapsackBackend,
    KnapsackInstance,
    OutcomeSet,
    ScalarizationConfig,
    UsageError,
    build_epsilon_constraint,
    filter_nondominated,
    generate_knapsack,
    materialize_outcomes,
    solve,
)
from boxfront.backends import (
    read_explicit_file,
    read_instance,
    read_knapsack_file,
    write_explicit_file,
    write_knapsack_file,
)
from boxfront.validation import InstanceFormatError

from conftest import naive_front


def enumerate_outcomes_naive(inst):
    """Independent enumeration over all 2^n selections."""
    outcomes = set()
    for selection in itertools.product((0, 1), repeat=inst.n):
        weights = [sum(w * x for w, x in zip(row, selection)) for row in inst.weights]
        if all(w <= c for w, c in zip(weights, inst.capacities)):
            outcomes.add(tuple(-sum(p * x for p, x in zip(row, selection)) for row in inst.profits))
    return outcomes


def single_item_instance():
    return KnapsackInstance(profits=((3,), (1,), (4,)), weights=((1,), (1,), (1,)), capacities=(1, 1, 1))


class TestMaterialize:
    def test_single_item(self):
        Z = materialize_outcomes(single_item_instance())
        assert set(Z.points) == {(0, 0, 0), (-3, -1, -4)}

    def test_infeasible_item_contributes_nothing(self):
        inst = KnapsackInstance(
            profits=((3, 9), (1, 9), (4, 9)),
            weights=((1, 5), (1, 5), (1, 5)),
            capacities=(1, 1, 1),
        )
        assert set(materialize_outcomes(inst).points) == {(0, 0, 0), (-3, -1, -4)}

    def test_random_instances_match_naive_enumeration(self):
        for seed in range(5):
            inst = generate_knapsack(10, seed)
            Z = materialize_outcomes(inst)
            assert len(Z) <= 2**10
            assert set(Z.points) == enumerate_outcomes_naive(inst)

    def test_enumeration_cap(self):
        inst = KnapsackInstance(
            profits=tuple(tuple(1 for _ in range(21)) for _ in range(3)),
            weights=tuple(tuple(1 for _ in range(21)) for _ in range(3)),
            capacities=(50, 50, 50),
        )
        with pytest.raises(UsageError):
            materialize_outcomes(inst)

    def test_front_matches_filter_on_enumeration(self):
        inst = generate_knapsack(8, 99)
        Z = materialize_outcomes(inst)
        assert set(filter_nondominated(Z).points) == set(naive_front(sorted(enumerate_outcomes_naive(inst))))


class TestSolve:
    def test_knapsack_backend_equals_explicit_backend(self):
        rng = random.Random(3)
        inst = generate_knapsack(9, 17)
        knap = KnapsackBackend(inst)
        explicit = ExplicitSetBackend(materialize_outcomes(inst))
        lo = tuple(min(z[c] for z in explicit.outcomes.points) for c in range(3))
        for _ in range(30):
            u = tuple(rng.randint(lo[c] + 1, 1) for c in range(3))
            sub = build_epsilon_constraint(u, lo, ScalarizationConfig())
            assert solve(knap, sub) == solve(explicit, sub)

    def test_empty_box_returns_none(self):
        backend = ExplicitSetBackend(OutcomeSet.from_points([(2, 2, 2), (1, 1, 4)]))
        sub = build_epsilon_constraint((1, 1, 1), (0, 0, 0), ScalarizationConfig())
        assert solve(backend, sub) is None


class TestInstanceFiles:
    def test_explicit_roundtrip(self, tmp_path):
        Z = OutcomeSet.from_points([(2, 2, 2), (1, 1, 4), (3, 3, 3)])
        path = tmp_path / "explicit.txt"
        write_explicit_file(path, Z)
        loaded = read_explicit_file(path)
        assert loaded.outcome_set().points == Z.points

    def test_knapsack_roundtrip(self, tmp_path):
        inst = generate_knapsack(6, 5)
        path = tmp_path / "knap.txt"
        write_knapsack_file(path, inst)
        loaded = read_knapsack_file(path)
        assert loaded.instance == inst

    def test_autodetect(self, tmp_path):
        kp = tmp_path / "k.txt"
        write_knapsack_file(kp, single_item_instance())
        assert isinstance(read_instance(kp), KnapsackBackend)
        ep = tmp_path / "e.txt"
        write_explicit_file(ep, OutcomeSet.from_points([(1, 2), (2, 1)]))
        assert isinstance(read_instance(ep), ExplicitSetBackend)

    def test_bad_integer_reports_line(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("3 2\n1 2 3\n4 x 6\n")
        with pytest.raises(InstanceFormatError) as err:
            read_explicit_file(path)
        assert err.value.lineno == 3

    def test_truncated_knapsack_reports_line(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("2\n10 20\n30 40\n")
        with pytest.raises(InstanceFormatError):
            read_knapsack_file(path)

    def test_wrong_point_width_reports_line(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("3 2\n1 2 3\n4 5\n")
        with pytest.raises(InstanceFormatError) as err:
            read_explicit_file(path)
        assert err.value.lineno == 3

    def test_duplicate_points_rejected_without_dedupe(self, tmp_path):
        path = tmp_path / "dup.txt"
        path.write_text("2 2\n1 2\n1 2\n")
        with pytest.raises(InstanceFormatError):
            read_explicit_file(path)
        assert read_explicit_file(path, dedupe=True).outcome_set().points == ((1, 2),)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("")
        with pytest.raises(InstanceFormatError) as err:
            read_instance(path)
        assert err.value.lineno == 1


class TestGenerator:
    def test_deterministic(self):
        assert generate_knapsack(7, 42) == generate_knapsack(7, 42)
        assert generate_knapsack(7, 42) != generate_knapsack(7, 43)

    def test_parameter_ranges(self):
        inst = generate_knapsack(12, 1)
        for row in (*inst.profits, *inst.weights):
            assert all(10 <= c <= 100 for c in row)
        assert inst.capacities == tuple(sum(row) // 2 for row in inst.weights)

    def test_n_out_of_range(self):
        with pytest.raises(UsageError):
            generate_knapsack(0, 1)
        with pytest.raises(UsageError):
            generate_knapsack(21, 1)
