from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from helpers import FIXTURES, write_tree
from pydefects.cli import main

PLANTED = FIXTURES / "planted"
ROOTS = [str(p) for p in sorted(PLANTED.iterdir()) if p.is_dir()]


def exit_code(argv) -> int:
    """argparse reports usage errors by raising SystemExit; everything else returns."""
    try:
        return main(argv)
    except SystemExit as exc:
        return exc.code


def run_json(tmp_path, *extra) -> dict:
    out = tmp_path / "report.json"
    assert main(["analyze", *ROOTS, "--format", "json", "--output", str(out), *extra]) == 0
    return json.loads(out.read_text())


def test_analyze_table_to_stdout(capsys):
    assert main(["analyze", *ROOTS]) == 0
    out = capsys.readouterr().out
    assert "Long Method" in out and "Pooled density" in out


def test_analyze_json_contains_config_echo(tmp_path):
    doc = run_json(tmp_path)
    assert doc["config"]["thresholds"]["AID_min"] == 4
    assert doc["config"]["lexicons"]["controller"][0] == "manage"
    assert doc["config"]["corpus"]["min_parse_ratio"] == 0.99
    assert len(doc["findings"]) == 8


def test_config_file_overrides_defaults(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"lexicons": {"controller": ["supervisor"]}, "filters": {"factors": {"extreme": 4.0}}}))
    doc = run_json(tmp_path, "--config", str(cfg))
    kinds = {f["kind"] for f in doc["findings"]}
    assert "GodClass" not in kinds
    assert doc["config"]["filters"]["extreme_factor"] == 4.0


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze"],
        ["analyze", "--format", "xml", "."],
        ["frobnicate"],
        ["analyze", "/definitely/not/here"],
        ["analyze", ".", "--jobs", "0"],
    ],
)
def test_usage_errors_exit_1(argv):
    assert exit_code(argv) == 1


@pytest.mark.parametrize(
    "content",
    ["{not json", json.dumps({"nonsense": {}}), json.dumps({"thresholds": {"AID_min": -1}}), json.dumps({"thresholds": {"bogus": 1}})],
)
def test_bad_config_exits_1(tmp_path, content):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(content)
    assert main(["analyze", ROOTS[0], "--config", str(cfg)]) == 1


def test_missing_config_exits_1(tmp_path):
    assert main(["analyze", ROOTS[0], "--config", str(tmp_path / "missing.json")]) == 1


def test_low_parse_ratio_exits_2_after_writing_the_report(tmp_path):
    root = write_tree(tmp_path / "proj", {"a.py": "x = 1\n", "b.py": "def (:\n"})
    out = tmp_path / "r.json"
    assert main(["analyze", str(root), "--format", "json", "--output", str(out)]) == 2
    doc = json.loads(out.read_text())
    assert doc["parse"]["parsed"] == 1 and doc["parse"]["total"] == 2
    assert doc["parse"]["failed"][0][1] == "b.py"
    assert main(["analyze", str(root), "--min-parse-ratio", "0.5", "--output", str(out)]) == 0


def test_unwritable_output_exits_3(tmp_path):
    assert main(["analyze", ROOTS[0], "--output", str(tmp_path / "no" / "such" / "dir" / "r.txt")]) == 3


def test_dump_metrics_and_model(tmp_path):
    metrics = tmp_path / "m.csv"
    model = tmp_path / "model.json"
    assert main(["analyze", ROOTS[0], "--output", str(tmp_path / "t.txt"), "--dump-metrics", str(metrics), "--dump-model", str(model)]) == 0
    rows = list(csv.DictReader(io.StringIO(metrics.read_text())))
    assert {r["metric"] for r in rows} >= {"LOC_method", "NOP", "AID", "ALD", "NRC", "LCOM", "SUP", "MNP"}
    assert all(r["project"] == "pricing" for r in rows)
    doc = json.loads(model.read_text())
    assert doc["projects"][0]["project"] == "pricing"
    assert any(m["path"] == "app/registry.py" for m in doc["projects"][0]["modules"])


def test_explain_prints_evidence_and_formula_check(tmp_path, capsys):
    out = tmp_path / "report.json"
    main(["analyze", *ROOTS, "--format", "json", "--output", str(out)])
    capsys.readouterr()
    assert main(["explain", str(out), "WarehouseManager"]) == 0
    text = capsys.readouterr().out
    assert text.startswith("GodClass at warehouse/app/warehouse_manager.py::WarehouseManager")
    assert "RDC = 3" in text and "LOC_class.fence" in text
    assert "formula check: holds" in text
    assert main(["explain", str(out), "NoSuchThing"]) == 1


def test_explain_flags_a_tampered_finding(tmp_path, capsys):
    out = tmp_path / "report.json"
    main(["analyze", *ROOTS, "--format", "json", "--output", str(out)])
    doc = json.loads(out.read_text())
    for f in doc["findings"]:
        if f["kind"] == "LongParameterList":
            f["evidence"]["NOP"] = 1
    out.write_text(json.dumps(doc))
    capsys.readouterr()
    assert main(["explain", str(out), "shipment_quote"]) == 0
    assert "VIOLATED" in capsys.readouterr().out


def test_corpus_filter_with_manifest(tmp_path):
    manifest = tmp_path / "manifest.json"
    manifest.write_text(json.dumps([{"path": p, "commit_count": 150} for p in ROOTS]))
    out = tmp_path / "decisions.jsonl"
    args = ["corpus", "filter", *ROOTS, "--manifest", str(manifest), "--output", str(out)]
    assert main(args) == 0
    decisions = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(decisions) == 3
    by_name = {d["project"].rsplit("/", 1)[-1]: d for d in decisions}
    # every planted project is a small Python-only tree
    assert all(d["stats"]["python_share"] == 1.0 for d in decisions)
    assert by_name["pricing"]["reasons"] == ["min_classes"]
    assert main([*args, "--min-classes", "5"]) == 0
    assert all(json.loads(line)["accepted"] for line in out.read_text().splitlines())


def test_corpus_filter_without_history_warns(tmp_path, capsys):
    root = write_tree(tmp_path / "repo", {"a.py": "class A:\n    pass\n"})
    assert main(["corpus", "filter", str(root), "--min-classes", "1"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["accepted"] and "commit_count_missing" in d["warnings"]


def test_module_entry_point_and_version():
    done = subprocess.run([sys.executable, "-m", "pydefects", "--version"], capture_output=True, text=True, check=False)
    assert done.returncode == 0 and done.stdout.startswith("pydefects ")
    bad = subprocess.run([sys.executable, "-m", "pydefects", "analyze", "--bogus"], capture_output=True, text=True, check=False)
    assert bad.returncode == 1
