from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction

import pytest

from helpers import FIXTURES, write_tree
from pydefects.detectors import DefectKind
from pydefects.pipeline import analyze
from pydefects.report import (
    KINDS,
    Partition,
    aggregates,
    build_report,
    compute_density,
    display_density,
    emit_report,
    group_means,
    report_to_dict,
    round_half_up,
)

PLANTED_ROOTS = sorted(p for p in (FIXTURES / "planted").iterdir() if p.is_dir())

PUBLISHED_LOC = 32_058_823
PUBLISHED = {
    DefectKind.FeatureEnvy: (5_103, 1.59),
    DefectKind.DataClass: (13_537, 4.22),
    DefectKind.LongMethod: (79_367, 24.76),
    DefectKind.LongParameterList: (10_429, 3.25),
    DefectKind.LargeClass: (16_576, 5.17),
    DefectKind.GodClass: (24, 0.01),
    DefectKind.SwissArmyKnife: (30_011, 9.36),
    DefectKind.FunctionalDecomposition: (0, 0.00),
    DefectKind.SpaghettiCode: (1, 0.00),
}
# the comparison columns: (found, LOC, density)
REFERENCE_COLUMNS = {
    DefectKind.LongMethod: (22, 21_267, 10.34),
    DefectKind.LongParameterList: (43, 21_267, 20.22),
    DefectKind.LargeClass: (13, 21_267, 6.11),
    DefectKind.GodClass: (150, 516_092, 2.91),
    DefectKind.SwissArmyKnife: (441, 516_092, 8.54),
    DefectKind.FunctionalDecomposition: (179, 516_092, 3.47),
    DefectKind.SpaghettiCode: (363, 516_092, 7.03),
}


def published_partition() -> Partition:
    part = Partition(PUBLISHED_LOC)
    for kind, (found, _) in PUBLISHED.items():
        part.counts[kind] = found
    return part


@pytest.mark.parametrize("kind", list(PUBLISHED))
def test_published_densities(kind):
    found, expected = PUBLISHED[kind]
    assert abs(compute_density(found, PUBLISHED_LOC) - expected) <= 0.005
    assert display_density(found, PUBLISHED_LOC) == f"{expected:.2f}"


@pytest.mark.parametrize("kind", list(REFERENCE_COLUMNS))
def test_reference_column_densities(kind):
    found, loc, expected = REFERENCE_COLUMNS[kind]
    assert abs(compute_density(found, loc) - expected) <= 0.005
    assert display_density(found, loc) == f"{expected:.2f}"


def test_group_means():
    means = group_means(published_partition().densities())
    assert abs(means["smells"] - 7.80) <= 0.005
    assert abs(means["antipatterns"] - 2.34) <= 0.005


def truncate2(x: float) -> float:
    return math.floor(x * 100) / 100


def test_published_overall_averages_are_truncated_seven_kind_means():
    # Both headline averages are the unweighted mean over the seven kinds that
    # appear in both columns, cut (not rounded) to two decimals.
    ours = [compute_density(PUBLISHED[k][0], PUBLISHED_LOC) for k in REFERENCE_COLUMNS]
    theirs = [compute_density(f, loc) for f, loc, _ in REFERENCE_COLUMNS.values()]
    assert truncate2(sum(ours) / 7) == 6.07
    assert truncate2(sum(theirs) / 7) == 8.37
    assert round(sum(ours) / 7, 2) == 6.08 and round(sum(theirs) / 7, 2) == 8.38


def test_aggregate_variants():
    agg = aggregates(published_partition().counts, PUBLISHED_LOC)
    assert round(agg["mean_all_kinds"], 2) == 5.37
    assert round(agg["mean_detectable_kinds"], 3) == 6.045
    assert round(agg["pooled"], 2) == 48.36


def test_zero_loc_and_negative_loc(caplog):
    with caplog.at_level("WARNING"):
        assert compute_density(3, 0) == 0.0
    assert "zero LOC" in caplog.text
    with pytest.raises(ValueError):
        compute_density(1, -5)
    assert compute_density(0, 1234) == 0.0


def test_round_half_up_is_not_bankers_rounding():
    assert str(round_half_up(Fraction(1, 8), 2)) == "0.13"
    assert str(round_half_up(Fraction(5, 1000), 2)) == "0.01"
    assert str(round_half_up(2.675)) == "2.67"  # binary 2.675 is below the half
    assert display_density(1, 20_000) == "0.50"


# ---------------------------------------------------------------- reports over a real run


@pytest.fixture(scope="module")
def planted_result():
    return analyze(PLANTED_ROOTS)


def test_table_has_nine_rows_and_footer(planted_result):
    text = emit_report(build_report(planted_result), "table")
    lines = text.splitlines()
    assert lines[0].startswith("Design Defect")
    body = lines[2:11]
    assert [ln.split("  ")[0].strip() for ln in body][0] == "Feature Envy"
    assert len(body) == 9
    assert any(ln.startswith("Smells, mean density") for ln in lines)
    assert any(ln.startswith("Pooled density") for ln in lines)
    assert lines[-1].startswith("Parsed ")


def test_json_round_trip_recomputes_densities(planted_result):
    doc = json.loads(emit_report(build_report(planted_result), "json"))
    loc = doc["loc"]
    for kind, row in doc["kinds"].items():
        assert row["density"] == compute_density(row["found"], loc)
        assert row["density_display"] == display_density(row["found"], loc)
    assert doc["tool"]["name"] == "pydefects"
    assert {"production", "test"} <= set(doc["partitions"])


def test_found_counts_match_findings(planted_result):
    report = build_report(planted_result)
    doc = report_to_dict(report)
    for kind in KINDS:
        assert doc["kinds"][kind.value]["found"] == sum(1 for f in report.selected_findings() if f.kind is kind)
        per_project = sum(p["selected"]["kinds"][kind.value]["found"] for p in doc["projects"].values())
        assert per_project == doc["kinds"][kind.value]["found"]
    assert sum(p["selected"]["loc"] for p in doc["projects"].values()) == doc["loc"]


def test_json_and_csv_agree(planted_result):
    report = build_report(planted_result)
    doc = json.loads(emit_report(report, "json"))
    rows = list(csv.DictReader(io.StringIO(emit_report(report, "csv"))))
    assert len(rows) == len(doc["projects"]) * 9
    for kind in KINDS:
        assert sum(int(r["found"]) for r in rows if r["kind"] == kind.value) == doc["kinds"][kind.value]["found"]
    for r in rows:
        proj = doc["projects"][r["project"]]["selected"]
        assert int(r["loc"]) == proj["loc"]
        assert float(r["density"]) == proj["kinds"][r["kind"]]["density"]


def test_outputs_are_deterministic(planted_result):
    report = build_report(planted_result)
    for fmt in ("table", "json", "csv"):
        assert emit_report(report, fmt) == emit_report(build_report(analyze(PLANTED_ROOTS)), fmt)


def test_unknown_format():
    with pytest.raises(ValueError):
        emit_report(build_report(analyze([])), "xml")


def test_empty_corpus_has_zero_rows_and_a_banner(tmp_path):
    (tmp_path / "nothing").mkdir()
    report = build_report(analyze([tmp_path / "nothing"]))
    text = emit_report(report, "table")
    assert text.startswith("WARNING: empty corpus")
    doc = report_to_dict(report)
    assert all(row["found"] == 0 and row["density"] == 0.0 for row in doc["kinds"].values())


def test_test_code_is_excluded_by_default_and_merged_on_request(tmp_path):
    long_body = "\n".join(f"    v{k} = {k}" for k in range(120))
    short = "".join(f"def s{i}():\n    return {i}\n\n" for i in range(12))
    write_tree(
        tmp_path / "proj",
        {
            "app/core.py": short,
            "tests/test_core.py": short.replace("def s", "def t") + f"def test_everything():\n{long_body}\n",
        },
    )
    result = analyze([tmp_path / "proj"])
    assert any(f.is_test and f.kind is DefectKind.LongMethod for f in result.findings)
    default = report_to_dict(build_report(result))
    merged = report_to_dict(build_report(result, include_tests=True))
    assert default["kinds"]["LongMethod"]["found"] == 0
    assert merged["kinds"]["LongMethod"]["found"] == 1
    assert merged["loc"] == default["partitions"]["production"]["loc"] + default["partitions"]["test"]["loc"]
    assert default["findings"] == []
    assert default["partitions"]["test"]["kinds"]["LongMethod"]["found"] == 1
