import random

import pytest

from boxfront import OutcomeSet, generate_knapsack, materialize_outcomes
from boxfront.backends import ExplicitSetBackend, write_explicit_file, write_knapsack_file
from boxfront.cli import main, run_verification

from conftest import random_outcome_set


@pytest.fixture
def example_instance(tmp_path):
    Z = OutcomeSet.from_points([(2, 2, 2), (1, 1, 4), (3, 3, 3), (4, 2, 5), (2, 4, 4)])
    path = tmp_path / "example.txt"
    write_explicit_file(path, Z)
    return path


def read_csv_points(path):
    lines = path.read_text().splitlines()
    return lines[0], {tuple(int(c) for c in line.split(",")) for line in lines[1:]}


class TestSolve:
    def test_explicit_instance(self, example_instance, tmp_path):
        out = tmp_path / "front.csv"
        code = main(["solve", str(example_instance), "--out", str(out)])
        assert code == 0
        header, points = read_csv_points(out)
        assert header == "z1,z2,z3"
        assert points == {(2, 2, 2), (1, 1, 4)}

    def test_single_item_knapsack(self, tmp_path):
        from boxfront import KnapsackInstance

        inst = KnapsackInstance(profits=((3,), (1,), (4,)), weights=((1,), (1,), (1,)), capacities=(1, 1, 1))
        path = tmp_path / "k.txt"
        write_knapsack_file(path, inst)
        out = tmp_path / "front.csv"
        assert main(["solve", str(path), "--out", str(out)]) == 0
        _, points = read_csv_points(out)
        assert points == {(-3, -1, -4)}

    def test_vsplit_on_bicriteria_instance_is_usage_error(self, tmp_path, capsys):
        Z = OutcomeSet.from_points([(1, 2), (2, 1)])
        path = tmp_path / "m2.txt"
        write_explicit_file(path, Z)
        assert main(["solve", str(path), "--algorithm", "vsplit"]) == 2
        assert "m=3" in capsys.readouterr().err

    def test_generic_on_bicriteria_instance(self, tmp_path):
        Z = OutcomeSet.from_points([(0, 3), (1, 2), (2, 1), (3, 0), (2, 2)])
        path = tmp_path / "m2.txt"
        write_explicit_file(path, Z)
        out = tmp_path / "front.csv"
        assert main(["solve", str(path), "--algorithm", "generic", "--out", str(out)]) == 0
        _, points = read_csv_points(out)
        assert points == {(0, 3), (1, 2), (2, 1), (3, 0)}

    def test_missing_file_exit_2(self, tmp_path, capsys):
        assert main(["solve", str(tmp_path / "nope.txt")]) == 2
        assert "error" in capsys.readouterr().err

    def test_malformed_file_exit_2_with_line(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("3 2\n1 2 3\n4 oops 6\n")
        assert main(["solve", str(path)]) == 2
        assert "line 3" in capsys.readouterr().err

    def test_run_log(self, example_instance, tmp_path):
        out = tmp_path / "front.csv"
        log = tmp_path / "run.log"
        assert main(["solve", str(example_instance), "--log", str(log), "--out", str(out)]) == 0
        lines = log.read_text().splitlines()
        assert lines
        for line in lines:
            iter_no, box_id, result, after = line.split(";")
            assert iter_no.isdigit() and box_id.isdigit() and after.isdigit()

    def test_csv_stable_across_reruns(self, example_instance, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["solve", str(example_instance), "--out", str(a)])
        main(["solve", str(example_instance), "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_duplicate_points_need_dedupe_flag(self, tmp_path):
        path = tmp_path / "dup.txt"
        path.write_text("3 2\n1 2 3\n1 2 3\n")
        assert main(["solve", str(path)]) == 2
        assert main(["solve", str(path), "--dedupe", "--out", str(tmp_path / "o.csv")]) == 0


class TestGenKnapsack:
    def test_deterministic_output(self, tmp_path):
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        assert main(["gen-knapsack", "--n", "8", "--seed", "5", "--out", str(a)]) == 0
        assert main(["gen-knapsack", "--n", "8", "--seed", "5", "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_materialized_size_cap(self, tmp_path):
        path = tmp_path / "k.txt"
        main(["gen-knapsack", "--n", "10", "--seed", "3", "--out", str(path)])
        Z = materialize_outcomes(generate_knapsack(10, 3))
        assert len(Z) <= 1024

    def test_n_out_of_range(self, tmp_path, capsys):
        assert main(["gen-knapsack", "--n", "25", "--seed", "1", "--out", str(tmp_path / "x.txt")]) == 2


class TestBench:
    def test_empty_instance_list(self, tmp_path):
        out = tmp_path / "report.csv"
        assert main(["bench", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 1 and lines[0].startswith("instance,")

    def test_matrix_rows_and_bounds(self, tmp_path):
        inst = tmp_path / "k.txt"
        main(["gen-knapsack", "--n", "7", "--seed", "11", "--out", str(inst)])
        out = tmp_path / "report.csv"
        assert main([
            "bench", str(inst),
            "--algorithms", "vsplit", "--scalarizations", "ec,wt", "--variants", "ts,aug",
            "--out", str(out), "--no-timing",
        ]) == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 1 + 4
        header = lines[0].split(",")
        for line in lines[1:]:
            row = dict(zip(header, line.split(",")))
            assert row["bound_met"] == "true"
            assert int(row["subproblems"]) <= int(row["bound"])
            if row["scalarization"] == "ec":
                assert row["selection"] == "minv1"
                assert int(row["bound"]) == 2 * int(row["n_nondominated"]) - 1

    def test_byte_stable_with_no_timing(self, tmp_path):
        inst = tmp_path / "k.txt"
        main(["gen-knapsack", "--n", "6", "--seed", "2", "--out", str(inst)])
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["bench", str(inst), "--out", str(a), "--no-timing"])
        main(["bench", str(inst), "--out", str(b), "--no-timing"])
        assert a.read_bytes() == b.read_bytes()

    def test_invalid_combos_skipped(self, tmp_path, capsys):
        Z = OutcomeSet.from_points([(0, 3), (1, 2), (3, 0)])
        inst = tmp_path / "m2.txt"
        write_explicit_file(inst, Z)
        out = tmp_path / "report.csv"
        assert main(["bench", str(inst), "--algorithms", "vsplit,generic", "--scalarizations", "ec",
                     "--variants", "ts", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 2  # vsplit rows skipped on m=2
        assert "skipping" in capsys.readouterr().err


class TestVerify:
    def test_example_instance_passes(self, example_instance, capsys):
        assert main(["verify", str(example_instance)]) == 0
        err = capsys.readouterr().err
        assert "all checks passed" in err

    def test_tied_instance_reports_quasi_boxes(self, tmp_path, capsys):
        Z = OutcomeSet.from_points([(3, 1, 4), (3, 2, 1), (2, 2, 2), (5, 5, 5)])
        path = tmp_path / "tied.txt"
        write_explicit_file(path, Z)
        assert main(["verify", str(path)]) == 0
        out = capsys.readouterr().out
        assert "quasi_boxes=" in out

    def test_corrupt_hook_fails_with_located_violation(self):
        Z = random_outcome_set(random.Random(29), 25, hi=15)

        def corrupt(decomposition, iteration):
            if iteration == 2 and decomposition.boxes:
                del decomposition.boxes[0]

        failure = run_verification(ExplicitSetBackend(Z), corrupt_hook=corrupt, report=lambda *_: None)
        assert failure is not None
        assert "invariant violated" in failure

    def test_distinct_component_instance_checks_trace_equality(self, tmp_path, capsys):
        from conftest import distinct_component_instance

        Z = distinct_component_instance(random.Random(31), 20)
        path = tmp_path / "distinct.txt"
        write_explicit_file(path, Z)
        assert main(["verify", str(path)]) == 0
        assert "box traces identical" in capsys.readouterr().out


class TestDumpBoxes:
    def test_generic_dump_after_two_insertions(self, tmp_path):
        Z = OutcomeSet.from_points([(2, 2, 2), (1, 1, 4), (0, 4, 4), (4, 0, 4), (4, 4, 0)])
        path = tmp_path / "z.txt"
        write_explicit_file(path, Z)
        out = tmp_path / "boxes.txt"
        assert main(["dump-boxes", str(path), "--algorithm", "generic", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines
        for line in lines:
            box_id, u = line.split(";")
            assert box_id.isdigit() and len(u.split(",")) == 3

    def test_vsplit_dump_format(self, tmp_path):
        Z = OutcomeSet.from_points([(3, 1, 4), (3, 2, 1), (2, 2, 2), (5, 5, 5)])
        path = tmp_path / "z.txt"
        write_explicit_file(path, Z)
        out = tmp_path / "boxes.txt"
        assert main(["dump-boxes", str(path), "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines
        for line in lines:
            parts = line.split(";")
            assert len(parts) == 4 and parts[3] in ("0", "1")

    def test_specific_iteration(self, tmp_path):
        Z = OutcomeSet.from_points([(0, 4, 4), (4, 0, 4), (4, 4, 0), (2, 2, 2)])
        path = tmp_path / "z.txt"
        write_explicit_file(path, Z)
        out = tmp_path / "boxes.txt"
        assert main(["dump-boxes", str(path), "--algorithm", "generic", "--iteration", "1", "--out", str(out)]) == 0
        assert len(out.read_text().splitlines()) >= 1
