import csv
import json
import hashlib
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from comention.cli import main
from comention.synth import generate_synthetic


def run_cli(*argv) -> int:
    return main(list(argv))


def tree_digest(directory: Path) -> dict[str, str]:
    return {
        str(p.relative_to(directory)): hashlib.sha256(p.read_bytes()).hexdigest()
        for p in sorted(directory.rglob("*"))
        if p.is_file()
    }


@pytest.fixture
def planted(tmp_path):
    spec = {
        "seed": 9,
        "entities": [f"E{k:02d}" for k in range(1, 8)],
        "plants": [
            {"period": "2008Q1", "entities": ["E01", "E02"], "count": 4},
            {"period": "2008Q1", "entities": ["E02", "E03"], "count": 1, "gap": 390},
            {"period": "2008Q3", "entities": ["E03", "E04", "E05"], "count": 2, "gap": 80},
        ],
        "noise": {"periods": ["2008Q1", "2008Q2", "2008Q3"], "per_period": 6, "length": 350},
    }
    return generate_synthetic(spec, tmp_path / "synth")


def read_counts(path: Path):
    with open(path, newline="") as handle:
        return list(csv.DictReader(handle))


class TestExtract:
    def test_counts_match_manifest(self, planted, tmp_path):
        out = tmp_path / "out"
        assert run_cli(
            "extract", "--corpus", str(planted.corpus_path),
            "--patterns", str(planted.patterns_path), "--out", str(out),
        ) == 0
        rows = read_counts(out / "counts.csv")
        got = {
            (r["period"], f"{r['entity_a']}|{r['entity_b']}"): int(r["count"])
            for r in rows
        }
        expected = {
            (period, pair): count
            for period, counts in planted.expected.items()
            for pair, count in counts.items()
        }
        assert got == expected

    def test_empty_corpus_exits_zero(self, tmp_path):
        corpus = tmp_path / "empty.jsonl"
        corpus.write_text("")
        patterns = tmp_path / "p.json"
        patterns.write_text(json.dumps({"entities": [{"label": "X", "patterns": ["\\bX\\b"]}]}))
        out = tmp_path / "out"
        assert run_cli("extract", "--corpus", str(corpus), "--patterns", str(patterns),
                       "--out", str(out)) == 0
        assert (out / "counts.csv").read_text().strip() == "period,entity_a,entity_b,count"

    def test_missing_pattern_file_nonzero_exit(self, planted, tmp_path, capsys):
        code = run_cli(
            "extract", "--corpus", str(planted.corpus_path),
            "--patterns", str(tmp_path / "absent.json"), "--out", str(tmp_path / "o"),
        )
        assert code == 1
        assert "absent.json" in capsys.readouterr().err

    def test_audit_log_rows(self, planted, tmp_path):
        out = tmp_path / "out"
        run_cli("extract", "--corpus", str(planted.corpus_path),
                "--patterns", str(planted.patterns_path), "--out", str(out), "--audit")
        rows = read_counts(out / "audit.csv")
        total = sum(counts.total() for counts in planted.expected.values())
        assert len(rows) == total
        assert {"article_id", "entity_a", "entity_b", "start", "end"} <= set(rows[0])

    def test_workers_match_serial(self, planted, tmp_path):
        serial, parallel = tmp_path / "s", tmp_path / "p"
        run_cli("extract", "--corpus", str(planted.corpus_path),
                "--patterns", str(planted.patterns_path), "--out", str(serial))
        run_cli("extract", "--corpus", str(planted.corpus_path),
                "--patterns", str(planted.patterns_path), "--out", str(parallel),
                "--workers", "2")
        assert (serial / "counts.csv").read_bytes() == (parallel / "counts.csv").read_bytes()


class TestNetwork:
    def test_documents_per_period_and_panel(self, planted, tmp_path):
        out = tmp_path / "net"
        assert run_cli(
            "network", "--corpus", str(planted.corpus_path),
            "--patterns", str(planted.patterns_path), "--out", str(out),
        ) == 0
        docs = sorted(p.name for p in out.glob("network_*.json"))
        assert docs == ["network_2008Q1.json", "network_2008Q2.json", "network_2008Q3.json"]
        panel = json.loads((out / "panel.json").read_text())
        assert panel["periods"] == ["2008Q1", "2008Q2", "2008Q3"]
        assert len(panel["smoothed"][0]) == 7

    def test_gap_quarter_zero_matrix(self, planted, tmp_path):
        out = tmp_path / "net"
        run_cli("network", "--corpus", str(planted.corpus_path),
                "--patterns", str(planted.patterns_path), "--out", str(out))
        gap = json.loads((out / "network_2008Q2.json").read_text())
        assert gap["links"] == []

    def test_rerun_byte_identical(self, planted, tmp_path):
        first, second = tmp_path / "n1", tmp_path / "n2"
        for out in (first, second):
            run_cli("network", "--corpus", str(planted.corpus_path),
                    "--patterns", str(planted.patterns_path), "--out", str(out))
        assert tree_digest(first) == tree_digest(second)

    def test_full_study_span_produces_31_documents(self, tmp_path):
        spec = {
            "seed": 4,
            "entities": ["E01", "E02"],
            "plants": [
                {"period": "2007Q1", "entities": ["E01", "E02"], "count": 1},
                {"period": "2014Q3", "entities": ["E01", "E02"], "count": 1},
            ],
        }
        result = generate_synthetic(spec, tmp_path / "synth")
        out = tmp_path / "net"
        assert run_cli("network", "--corpus", str(result.corpus_path),
                       "--patterns", str(result.patterns_path), "--out", str(out)) == 0
        assert len(list(out.glob("network_*.json"))) == 31

    def test_alpha_zero_vs_one_differ_only_in_centrality(self, tmp_path):
        # every quarter connected, so centrality is defined even unsmoothed
        spec = {
            "seed": 6,
            "entities": ["E01", "E02", "E03"],
            "plants": [
                {"period": period, "entities": pair, "count": count}
                for period in ("2009Q1", "2009Q2")
                for pair, count in [(["E01", "E02"], 3), (["E02", "E03"], 2),
                                    (["E01", "E03"], 1)]
            ],
        }
        result = generate_synthetic(spec, tmp_path / "synth")
        outs = {}
        for alpha in ("0", "1.0"):
            out = tmp_path / f"alpha{alpha}"
            assert run_cli("network", "--corpus", str(result.corpus_path),
                           "--patterns", str(result.patterns_path),
                           "--alpha", alpha, "--out", str(out)) == 0
            outs[alpha] = json.loads((out / "network_2009Q1.json").read_text())
        zero, one = outs["0"], outs["1.0"]
        assert zero["links"] == one["links"]
        assert zero["alpha"] == 0.0 and one["alpha"] == 1.0
        for n0, n1 in zip(zero["nodes"], one["nodes"]):
            assert n0["strength"] == n1["strength"]
            assert n0["info_centrality"] == n1["info_centrality"]
            assert n0["info_centrality"] == n0["info_centrality_smoothed"]
            assert n1["info_centrality_smoothed"] != n1["info_centrality"]

    def test_alpha_changes_only_centrality_fields(self, planted, tmp_path):
        a0, a1 = tmp_path / "a0", tmp_path / "a1"
        run_cli("network", "--corpus", str(planted.corpus_path),
                "--patterns", str(planted.patterns_path), "--out", str(a0), "--alpha", "0.2")
        run_cli("network", "--corpus", str(planted.corpus_path),
                "--patterns", str(planted.patterns_path), "--out", str(a1), "--alpha", "1.0")
        doc0 = json.loads((a0 / "network_2008Q1.json").read_text())
        doc1 = json.loads((a1 / "network_2008Q1.json").read_text())
        assert doc0["links"] == doc1["links"]
        assert doc0["alpha"] != doc1["alpha"]
        for n0, n1 in zip(doc0["nodes"], doc1["nodes"]):
            assert n0["strength"] == n1["strength"]
            assert n0["info_centrality"] == n1["info_centrality"]
            assert n0["info_centrality_smoothed"] != n1["info_centrality_smoothed"]


class TestMetricsCommand:
    def test_metrics_table_and_stats(self, planted, tmp_path):
        out = tmp_path / "m"
        assert run_cli(
            "metrics", "--corpus", str(planted.corpus_path),
            "--patterns", str(planted.patterns_path), "--out", str(out),
        ) == 0
        rows = read_counts(out / "metrics.csv")
        assert len(rows) == 3 * 7  # periods x nodes
        stats = json.loads((out / "stats.json").read_text())
        assert "variance_over_time" in stats


class TestEvaluateCommand:
    def _write_panel(self, path: Path, rows):
        with open(path, "w") as handle:
            handle.write("entity,period,label,score\n")
            for entity, period, label, score in rows:
                handle.write(f"{entity},{period},{label},{score}\n")

    def test_separable_panel_ur_one(self, tmp_path):
        panel = tmp_path / "panel.csv"
        rows = []
        for i in range(20):
            rows.append((f"B{i}", "2008Q1", 1 if i < 5 else 0, 2.0 if i < 5 else -2.0))
        self._write_panel(panel, rows)
        out = tmp_path / "eval"
        assert run_cli("evaluate", "--panel", str(panel), "--model", "m1=score",
                       "--out", str(out)) == 0
        (row,) = read_counts(out / "evaluation.csv")
        assert row["model"] == "m1"
        assert float(row["ur"]) == 1.0
        assert float(row["auc"]) == 1.0

    def test_events_relabeling(self, tmp_path):
        panel = tmp_path / "panel.csv"
        periods = [f"{y}Q{q}" for y in (2007, 2008) for q in (1, 2, 3, 4)]
        rows = [("B1", p, 0, 1.0 + i) for i, p in enumerate(periods)]
        rows += [("B2", p, 0, 0.5) for p in periods]
        self._write_panel(panel, rows)
        events = tmp_path / "events.csv"
        events.write_text("entity,event_date\nB1,2008-07-15\n")
        out = tmp_path / "eval"
        assert run_cli("evaluate", "--panel", str(panel), "--events", str(events),
                       "--horizon", "12", "--model", "m=score", "--out", str(out)) == 0
        (row,) = read_counts(out / "evaluation.csv")
        # B1 loses 2008Q3..Q4 (at/after event), gains labels 2007Q3..2008Q2
        assert int(row["tp"]) + int(row["fn"]) == 4

    def test_permuted_labels_auc_near_half(self, tmp_path):
        rng = np.random.default_rng(8)
        scores = rng.normal(size=400)
        labels = rng.permutation([1] * 80 + [0] * 320)
        rows = [
            (f"B{i}", "2008Q1", int(label), float(score))
            for i, (label, score) in enumerate(zip(labels, scores))
        ]
        panel = tmp_path / "panel.csv"
        self._write_panel(panel, rows)
        out = tmp_path / "eval"
        assert run_cli("evaluate", "--panel", str(panel), "--model", "m=score",
                       "--out", str(out)) == 0
        (row,) = read_counts(out / "evaluation.csv")
        assert abs(float(row["auc"]) - 0.5) < 0.12

    def test_missing_feature_column_named(self, tmp_path, capsys):
        panel = tmp_path / "panel.csv"
        self._write_panel(panel, [("B1", "2008Q1", 1, 0.9), ("B2", "2008Q1", 0, 0.2)])
        code = run_cli("evaluate", "--panel", str(panel), "--model", "m=absent",
                       "--out", str(tmp_path / "e"))
        assert code == 1
        assert "absent" in capsys.readouterr().err


class TestSynthCommand:
    def test_synth_from_spec_file(self, tmp_path):
        spec = {
            "seed": 2,
            "entities": ["E01", "E02"],
            "plants": [{"period": "2009Q2", "entities": ["E01", "E02"], "count": 2}],
        }
        spec_path = tmp_path / "spec.json"
        spec_path.write_text(json.dumps(spec))
        out = tmp_path / "synthout"
        assert run_cli("synth", "--spec", str(spec_path), "--out", str(out)) == 0
        assert (out / "corpus.jsonl").exists()
        assert (out / "manifest.json").exists()


class TestEntryPoint:
    def test_module_invocation(self, planted, tmp_path):
        out = tmp_path / "sub"
        proc = subprocess.run(
            [sys.executable, "-m", "comention.cli", "extract",
             "--corpus", str(planted.corpus_path),
             "--patterns", str(planted.patterns_path), "--out", str(out)],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0, proc.stderr
        assert (out / "counts.csv").exists()
