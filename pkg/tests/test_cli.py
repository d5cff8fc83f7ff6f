import csv
import io
import json
import subprocess
import sys

import pytest

from gdlines import known_example, parse_graph6, to_graph6, wheel
from gdlines.cli import RunConfig, run


@pytest.fixture
def files(tmp_path):
    paths = {
        "w6": tmp_path / "w6.g6",
        "k7": tmp_path / "k7.g6",
        "p4": tmp_path / "p4.txt",
        "k2": tmp_path / "k2.txt",
        "2k2": tmp_path / "2k2.txt",
    }
    paths["w6"].write_text(to_graph6(wheel(5)) + "\n")
    paths["k7"].write_text(to_graph6(known_example(7)) + "\n")
    paths["p4"].write_text("# path on four vertices\n0 1\n1 2\n2 3\n")
    paths["k2"].write_text("0 1\n")
    paths["2k2"].write_text("0 1\n2 3\n")
    return {k: str(v) for k, v in paths.items()}


def run_json(*argv):
    status, text = run(list(argv))
    return status, json.loads(text) if status != 2 else text


def strip_duration(text):
    report = json.loads(text)
    report.pop("duration_s")
    return json.dumps(report, sort_keys=True)


class TestAnalyze:
    def test_wheel(self, files):
        status, rep = run_json("analyze", files["w6"])
        assert status == 0 and rep["status"] == "ok"
        res = rep["results"]
        c = res["classification"]
        assert c["distinct_line_count"] == 15
        assert c["geometric_dominant"] and not c["strongly_geometric_dominant"]
        assert res["line_size_histogram"] == {"4": 15}
        assert res["complement_edge_count"] == 5
        assert len(res["twin_classes"]) == 6

    def test_path_edge_list(self, files):
        status, rep = run_json("analyze", files["p4"])
        c = rep["results"]["classification"]
        assert status == 0
        assert c["has_universal"] and c["distinct_line_count"] == 1

    def test_disconnected_input(self, files):
        status, text = run(["analyze", files["2k2"]])
        assert status == 2
        assert "disconnected" in text

    def test_missing_file(self, tmp_path):
        status, text = run(["analyze", str(tmp_path / "nope.g6")])
        assert status == 2 and "error" in text

    def test_size_cap(self, files):
        status, text = run(["analyze", files["w6"], "--max-line-n", "5"])
        assert status == 2 and "--max-line-n" in text

    def test_text_format(self, files):
        status, text = run(["analyze", files["w6"], "--format", "text"])
        assert status == 0
        assert "classification.distinct_line_count: 15" in text.splitlines()

    def test_csv_refused_outside_search(self, files):
        status, text = run(["analyze", files["w6"], "--format", "csv"])
        assert status == 2 and "CSV" in text


class TestAudit:
    @pytest.mark.parametrize("key", ["w6", "k7", "p4"])
    def test_passes(self, files, key):
        status, rep = run_json("audit", files[key])
        assert status == 0 and rep["results"]["passed"]
        statuses = {c["status"] for c in rep["results"]["checks"]}
        assert "fail" not in statuses

    def test_injected_fault_exits_one_with_replayable_witness(self, files, monkeypatch):
        import gdlines.cli as cli
        from gdlines import DistanceMatrix, audit, distance_matrix, replay

        g = wheel(5)
        rows = distance_matrix(g).rows()
        rows[0][1] = rows[1][0] = 2
        bad = DistanceMatrix(6, rows)
        monkeypatch.setattr(cli, "audit", lambda graph: audit(graph, distances=bad))
        status, rep = run_json("audit", files["w6"])
        assert status == 1 and rep["status"] == "failed"
        failed = [c for c in rep["results"]["checks"] if c["status"] == "fail"]
        assert failed
        assert all(replay(g, c["name"], c["witness"], distances=bad) is False for c in failed)


class TestSearch:
    def test_order_six(self, files, tmp_path):
        out = tmp_path / "wit.g6"
        status, rep = run_json("search", "--order", "6", "--out", str(out))
        assert status == 0
        assert rep["results"]["witness_count"] == 1 and rep["results"]["g_min"] == 15
        assert parse_graph6(out.read_text().strip()).n == 6

    def test_order_too_large_without_stream(self):
        status, text = run(["search", "--order", "12"])
        assert status == 2 and "--stream" in text

    def test_stream(self, tmp_path):
        p = tmp_path / "s.g6"
        p.write_text("KB]lmZRF_r?{\n" + to_graph6(wheel(11)) + "\n")
        status, rep = run_json("search", "--order", "12", "--stream", str(p))
        assert status == 0
        assert [w["graph6"] for w in rep["results"]["witnesses"]] == ["KB]lmZRF_r?{"]

    def test_csv(self):
        status, text = run(["search", "--order", "7", "--format", "csv"])
        rows = list(csv.DictReader(io.StringIO(text)))
        assert status == 0
        assert rows == [{"order": "7", "graph6": "F@vfw", "lines": "17", "diameter": "2"}]

    def test_sweep_csv(self):
        status, text = run(["search", "--order", "6", "--sweep", "--format", "csv"])
        rows = list(csv.DictReader(io.StringIO(text)))
        assert status == 0
        assert [r["order"] for r in rows] == [str(n) for n in range(1, 7)]
        assert rows[-1]["g_min"] == "15" and rows[-1]["nontrivial_gd_count"] == "1"
        assert all(r["chen_chvatal_counterexamples"] == "0" for r in rows)
        assert rows[0]["g_min"] == ""

    def test_sweep_json(self):
        status, rep = run_json("search", "--order", "5", "--sweep", "--max-n", "6")
        assert status == 0
        assert rep["results"]["sweep"]["max_n"] == 6


class TestExplode:
    def test_k2_counts_match(self, files, tmp_path):
        out = tmp_path / "k33.g6"
        status, rep = run_json("explode", files["k2"], "--t", "3", "--out", str(out))
        res = rep["results"]
        assert status == 0
        assert res["brute_force_lines"] == res["formula_lines"] == 7 and res["counts_match"]
        assert res["structure_check_passed"]
        assert parse_graph6(out.read_text().strip()).edge_count() == 9

    def test_comparison_skipped_for_small_t(self, files):
        status, rep = run_json("explode", files["w6"], "--t", "2")
        assert status == 0 and "skipped" in rep["results"]["comparison"]


class TestSample:
    def test_gnp_deterministic(self):
        a = run(["sample", "gnp", "--n", "100", "--p", "0.5", "--seed", "7"])
        b = run(["sample", "gnp", "--n", "100", "--p", "0.5", "--seed", "7"])
        assert a[0] == b[0] == 0
        assert strip_duration(a[1]) == strip_duration(b[1])
        assert json.loads(a[1])["config"]["seed"] == 7

    def test_gnp_verify(self, tmp_path):
        out = tmp_path / "g.g6"
        status, rep = run_json("sample", "gnp", "--n", "60", "--p", "0.6", "--seed", "1", "--verify", "--out", str(out))
        assert status == 0 and rep["results"]["super"] is True
        assert parse_graph6(out.read_text().strip()).n == 60

    def test_leftclique_report(self):
        status, rep = run_json("sample", "leftclique", "--n", "40", "--t", "8", "--attempts", "4", "--seed", "2")
        res = rep["results"]
        assert status == 0
        assert res["attempts"] == 4 and res["t"] == 8
        assert res["max_missing_edges"] <= res["missing_edge_cap"]

    def test_leftclique_writes_first_accepted(self, tmp_path):
        out = tmp_path / "lc.g6"
        status, rep = run_json("sample", "leftclique", "--n", "100", "--t", "99", "--attempts", "1", "--seed", "1", "--out", str(out))
        assert status == 0 and rep["results"]["first_accepted_attempt"] == 0
        assert "out_skipped" in rep["results"]

    def test_bad_probability(self):
        status, text = run(["sample", "gnp", "--n", "10", "--p", "1.0"])
        assert status == 2


class TestReports:
    def test_self_describing_header(self, files):
        status, rep = run_json("analyze", files["w6"], "--seed", "3", "--threads", "2")
        assert set(rep) == {"command", "config", "version", "status", "results", "duration_s"}
        assert rep["command"] == f"gdlines analyze {files['w6']} --seed 3 --threads 2"
        assert rep["config"]["seed"] == 3 and rep["config"]["worker_count"] == 2

    def test_json_round_trip(self, files):
        _, text = run(["audit", files["w6"]])
        assert json.dumps(json.loads(text), indent=2, sort_keys=True) == text

    def test_reruns_identical_except_duration(self, files):
        for argv in (["analyze", files["w6"]], ["search", "--order", "6"], ["explode", files["k2"], "--t", "3"]):
            assert strip_duration(run(argv)[1]) == strip_duration(run(argv)[1])

    def test_config_validation(self):
        with pytest.raises(ValueError):
            RunConfig(worker_count=0)
        with pytest.raises(ValueError):
            RunConfig(output_format="xml")

    def test_console_entry_point(self, files):
        proc = subprocess.run(
            [sys.executable, "-m", "gdlines.cli", "analyze", files["2k2"]],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 2
        assert "disconnected" in proc.stderr and proc.stdout == ""
        ok = subprocess.run([sys.executable, "-m", "gdlines.cli", "analyze", files["w6"]], capture_output=True, text=True)
        assert ok.returncode == 0 and json.loads(ok.stdout)["status"] == "ok"
