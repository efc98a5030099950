import csv
import hashlib
import io
import json

import pytest

from decept.cli import main, parse_budgets
from decept.graphio import dataset_path


def run_cli(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def karate_path():
    return dataset_path("karate")


@pytest.fixture
def small_edgelist(tmp_path):
    path = tmp_path / "net.txt"
    path.write_text("0 1\n0 2\n1 2\n3 4\n3 5\n4 5\n2 3\n")
    return str(path)


def test_parse_budgets():
    assert parse_budgets("1,2,3") == [1, 2, 3]
    assert parse_budgets("1..4") == [1, 2, 3, 4]
    assert parse_budgets("1,3..5") == [1, 3, 4, 5]


class TestDetect:
    def test_text_output(self, capsys, small_edgelist):
        code, out, _ = run_cli(
            capsys, "detect", "--graph", small_edgelist, "--algorithm", "louvain",
        )
        assert code == 0
        assert sorted(out.splitlines()) == ["0 1 2", "3 4 5"]

    def test_json_output(self, capsys, karate_path):
        code, out, _ = run_cli(
            capsys, "detect", "--graph", karate_path, "--format", "gml",
            "--algorithm", "greedy", "--emit", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["algorithm"] == "greedy_agglomerative"
        assert len(payload["communities"]) == 3

    def test_deterministic(self, capsys, karate_path):
        args = ("detect", "--graph", karate_path, "--format", "gml", "--seed", "4")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2

    def test_missing_file_exits_1(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "detect", "--graph", str(tmp_path / "nope"))
        assert code == 1
        assert "failed" in err


class TestScore:
    def test_worst_case_scores_zero(self, capsys, tmp_path, small_edgelist):
        partition = tmp_path / "p.txt"
        partition.write_text("0 1 2\n3 4 5\n")
        target = tmp_path / "h.txt"
        target.write_text("0 1 2\n")
        code, out, _ = run_cli(
            capsys, "score", "--graph", small_edgelist,
            "--partition-file", str(partition), "--target-file", str(target),
        )
        assert code == 0
        assert "score: 0" in out

    def test_cross_partition_anchor(self, capsys, tmp_path, small_edgelist):
        (tmp_path / "p.txt").write_text("0 1 3 4\n2 5\n")
        (tmp_path / "h.txt").write_text("0 1 2\n")
        code, out, _ = run_cli(
            capsys, "score", "--graph", small_edgelist,
            "--partition-file", str(tmp_path / "p.txt"),
            "--target-file", str(tmp_path / "h.txt"), "--emit", "json",
        )
        assert code == 0
        assert json.loads(out)["score"] == pytest.approx(5 / 12, abs=1e-9)

    def test_multi_line_target_rejected(self, capsys, tmp_path, small_edgelist):
        (tmp_path / "p.txt").write_text("0 1 2\n3 4 5\n")
        (tmp_path / "h.txt").write_text("0 1\n2\n")
        code, _, err = run_cli(
            capsys, "score", "--graph", small_edgelist,
            "--partition-file", str(tmp_path / "p.txt"),
            "--target-file", str(tmp_path / "h.txt"),
        )
        assert code == 1
        assert "exactly one community" in err


class TestDeceive:
    def test_zero_budget_usage_error(self, capsys, small_edgelist, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main([
                "deceive", "--graph", small_edgelist, "--deceiver", "safgain",
                "--budget", "0", "--worst-case",
            ])
        assert exc.value.code == 2

    def test_worst_case_run_writes_outputs(self, capsys, karate_path, tmp_path):
        out_file = tmp_path / "updated.txt"
        before = hashlib.sha256(open(karate_path, "rb").read()).hexdigest()
        code, out, _ = run_cli(
            capsys, "deceive", "--graph", karate_path, "--format", "gml",
            "--deceiver", "safgain", "--budget", "3", "--worst-case",
            "--output", str(out_file), "--seed", "5",
        )
        assert code == 0
        assert len(out.strip().splitlines()) == 3
        assert out_file.exists()
        # input files are never modified
        after = hashlib.sha256(open(karate_path, "rb").read()).hexdigest()
        assert before == after

    def test_target_file_modmin(self, capsys, karate_path, tmp_path):
        target = tmp_path / "h.txt"
        target.write_text("24 25 26 28 29 32\n")
        out_file = tmp_path / "updated.txt"
        code, out, _ = run_cli(
            capsys, "deceive", "--graph", karate_path, "--format", "gml",
            "--deceiver", "modmin", "--budget", "2",
            "--target-file", str(target), "--output", str(out_file),
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 2
        h = {"24", "25", "26", "28", "29", "32"}
        for line in lines:
            kind, a, b = line.split()
            assert kind in ("add", "del")
            assert a in h or b in h


class TestGenerate:
    def test_writes_edges_and_truth(self, capsys, tmp_path):
        out = tmp_path / "g.txt"
        code, _, _ = run_cli(
            capsys, "generate", "--nodes", "30", "--communities", "3",
            "--p-in", "1.0", "--p-out", "0.0", "--seed", "3",
            "--output", str(out),
        )
        assert code == 0
        assert out.exists()
        truth = (tmp_path / "g.txt.communities").read_text().splitlines()
        assert len(truth) == 3
        assert len(out.read_text().splitlines()) == 135

    def test_deterministic(self, capsys, tmp_path):
        args = lambda p: [
            "generate", "--nodes", "40", "--communities", "4",
            "--p-in", "0.5", "--p-out", "0.02", "--seed", "8", "--output", p,
        ]
        main(args(str(tmp_path / "a.txt")))
        main(args(str(tmp_path / "b.txt")))
        assert (tmp_path / "a.txt").read_bytes() == (tmp_path / "b.txt").read_bytes()

    def test_invalid_probabilities_exit_1(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, "generate", "--nodes", "10", "--communities", "2",
            "--p-in", "0.1", "--p-out", "0.5",
        )
        assert code == 1


class TestEvaluate:
    def test_csv_row_count(self, capsys, karate_path, tmp_path):
        out = tmp_path / "r.csv"
        code, _, _ = run_cli(
            capsys, "evaluate", "--graph", karate_path, "--format", "gml",
            "--detectors", "louvain", "--deceivers", "safgain",
            "--budgets", "1,2,3,4", "--runs", "10", "--seed", "7",
            "--output", str(out),
        )
        assert code == 0
        rows = out.read_text().splitlines()
        assert len(rows) == 1 + 40
        assert rows[0].startswith("dataset,detector,deceiver,budget,run,seed,")

    def test_json_and_multi_config(self, capsys, karate_path):
        code, out, _ = run_cli(
            capsys, "evaluate", "--graph", karate_path, "--format", "gml",
            "--detectors", "louvain,greedy", "--deceivers", "modmin,safgain",
            "--budgets", "1..2", "--runs", "2", "--seed", "3", "--emit", "json",
        )
        assert code == 0
        rows = json.loads(out)
        assert len(rows) == 2 * 2 * 2 * 2
        assert {r["detector"] for r in rows} == {"louvain", "greedy_agglomerative"}

    def test_deterministic_modulo_duration(self, capsys, karate_path):
        args = (
            "evaluate", "--graph", karate_path, "--format", "gml",
            "--detectors", "greedy", "--deceivers", "modmin",
            "--budgets", "1,2", "--runs", "2", "--seed", "9",
        )
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)

        def normalize(text):
            rows = list(csv.reader(io.StringIO(text)))
            for row in rows[1:]:
                row[13] = ""
            return rows

        assert normalize(out1) == normalize(out2)

    def test_bad_runs_usage_error(self, capsys, karate_path):
        with pytest.raises(SystemExit) as exc:
            main([
                "evaluate", "--graph", karate_path, "--format", "gml",
                "--runs", "0",
            ])
        assert exc.value.code == 2

    def test_unknown_detector_usage_error(self, capsys, karate_path):
        with pytest.raises(SystemExit) as exc:
            main([
                "evaluate", "--graph", karate_path, "--format", "gml",
                "--detectors", "walktrap",
            ])
        assert exc.value.code == 2

    def test_summary_flag(self, capsys, karate_path):
        code, _, err = run_cli(
            capsys, "evaluate", "--graph", karate_path, "--format", "gml",
            "--detectors", "greedy", "--deceivers", "safgain",
            "--budgets", "1", "--runs", "2", "--seed", "1", "--summary",
        )
        assert code == 0
        assert "budget=1" in err


def test_usage_error_without_subcommand():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
