"""Density reports in table, JSON and CSV form."""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction

from . import __version__
from .detectors import ANTIPATTERNS, DISPLAY_NAMES, SMELLS, DefectKind, Finding

log = logging.getLogger(__name__)

KINDS = tuple(DefectKind)
# FunctionalDecomposition is excluded from the "detectable" aggregate
DETECTABLE = tuple(k for k in KINDS if k is not DefectKind.FunctionalDecomposition)
PER_LOC = 10_000


def compute_density(found: int, loc: int) -> float:
    """Findings per 10,000 lines of code; 0.0 (with a warning) when ``loc`` is 0."""
    if loc <= 0:
        if loc == 0:
            log.warning("zero LOC: density reported as 0")
            return 0.0
        raise ValueError("LOC cannot be negative")
    return found * PER_LOC / loc


def round_half_up(value: float | Fraction, places: int = 2) -> Decimal:
    if isinstance(value, Fraction):
        exact = Decimal(value.numerator) / Decimal(value.denominator)
    else:
        exact = Decimal(value)
    return exact.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP)


def display_density(found: int, loc: int) -> str:
    if loc <= 0:
        return "0.00"
    return str(round_half_up(Fraction(found * PER_LOC, loc)))


def _mean(values: list[float]) -> float:
    return sum(values) / len(values) if values else 0.0


@dataclass
class Partition:
    loc: int = 0
    counts: dict[DefectKind, int] = field(default_factory=lambda: {k: 0 for k in KINDS})

    def densities(self) -> dict[DefectKind, float]:
        return {k: compute_density(self.counts[k], self.loc) if self.loc else 0.0 for k in KINDS}

    def to_dict(self) -> dict:
        dens = self.densities()
        return {
            "loc": self.loc,
            "kinds": {
                k.value: {
                    "found": self.counts[k],
                    "density": dens[k],
                    "density_display": display_density(self.counts[k], self.loc),
                }
                for k in KINDS
            },
        }


def group_means(densities: dict[DefectKind, float]) -> dict[str, float]:
    return {
        "smells": _mean([densities[k] for k in SMELLS]),
        "antipatterns": _mean([densities[k] for k in ANTIPATTERNS]),
    }


def aggregates(counts: dict[DefectKind, int], loc: int) -> dict[str, float]:
    """Three overall averages; none of them is privileged."""
    dens = {k: compute_density(counts[k], loc) if loc else 0.0 for k in KINDS}
    return {
        "mean_all_kinds": _mean([dens[k] for k in KINDS]),
        "mean_detectable_kinds": _mean([dens[k] for k in DETECTABLE]),
        "pooled": compute_density(sum(counts.values()), loc) if loc else 0.0,
    }


@dataclass
class Report:
    selected: str  # "production" | "all"
    production: Partition
    test: Partition
    projects: dict[str, dict[str, Partition]]
    findings: list[Finding]
    parse: dict
    config: dict = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    @property
    def main(self) -> Partition:
        if self.selected == "production":
            return self.production
        merged = Partition(self.production.loc + self.test.loc)
        for k in KINDS:
            merged.counts[k] = self.production.counts[k] + self.test.counts[k]
        return merged

    def project_partition(self, name: str) -> Partition:
        parts = self.projects[name]
        if self.selected == "production":
            return parts["production"]
        merged = Partition(parts["production"].loc + parts["test"].loc)
        for k in KINDS:
            merged.counts[k] = parts["production"].counts[k] + parts["test"].counts[k]
        return merged

    def selected_findings(self) -> list[Finding]:
        return [f for f in self.findings if self.selected == "all" or not f.is_test]


def build_report(result, include_tests: bool = False, config: dict | None = None) -> Report:
    """Aggregate an :class:`~pydefects.pipeline.AnalysisResult` into a report."""
    production, test = Partition(), Partition()
    projects: dict[str, dict[str, Partition]] = {}
    models = {p.name: p for p in result.projects}
    for inp in result.inputs:
        parts = {"production": Partition(), "test": Partition()}
        projects[inp.name] = parts
        for o in inp.outcomes:
            if o.parsed and o.tree is not None:
                is_test = models[inp.name].modules[o.file.path].is_test
                parts["test" if is_test else "production"].loc += len(o.tree.code_lines)
    for f in result.findings:
        parts = projects[f.project]
        parts["test" if f.is_test else "production"].counts[f.kind] += 1
    for parts in projects.values():
        production.loc += parts["production"].loc
        test.loc += parts["test"].loc
        for k in KINDS:
            production.counts[k] += parts["production"].counts[k]
            test.counts[k] += parts["test"].counts[k]
    parsed, total, ratio = result.parse_stats()
    failed = sorted(
        [inp.name, o.file.path, o.error.line, o.error.message]
        for inp in result.inputs
        for o in inp.outcomes
        if not o.parsed and o.error is not None
    )
    warnings = []
    if total == 0:
        warnings.append("empty corpus: no Python files found")
    report = Report(
        selected="all" if include_tests else "production",
        production=production,
        test=test,
        projects=dict(sorted(projects.items())),
        findings=list(result.findings),
        parse={"parsed": parsed, "total": total, "ratio": ratio, "failed": failed},
        config=config or {},
        warnings=warnings,
    )
    if report.main.loc == 0 and total:
        report.warnings.append("zero LOC in the reported partition: densities reported as 0")
    return report


# ---------------------------------------------------------------------------
# Serialisation
# ---------------------------------------------------------------------------


def report_to_dict(report: Report) -> dict:
    main = report.main
    dens = main.densities()
    return {
        "tool": {"name": "pydefects", "version": __version__},
        "selected_partition": report.selected,
        "loc": main.loc,
        "kinds": main.to_dict()["kinds"],
        "group_means": group_means(dens),
        "aggregates": aggregates(main.counts, main.loc),
        "partitions": {"production": report.production.to_dict(), "test": report.test.to_dict()},
        "projects": {
            name: {
                "selected": report.project_partition(name).to_dict(),
                "production": parts["production"].to_dict(),
                "test": parts["test"].to_dict(),
            }
            for name, parts in report.projects.items()
        },
        "parse": report.parse,
        "config": report.config,
        "warnings": report.warnings,
        "findings": [f.to_dict() for f in report.selected_findings()],
    }


def _format_table(report: Report) -> str:
    main = report.main
    rows = [("Design Defect", "Found", "LOC", "Density")]
    for k in KINDS:
        rows.append((DISPLAY_NAMES[k], f"{main.counts[k]:,}", f"{main.loc:,}", display_density(main.counts[k], main.loc)))
    widths = [max(len(r[i]) for r in rows) for i in range(4)]

    def line(r):
        return "  ".join([r[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(r[1:], widths[1:])])

    out = []
    for w in report.warnings:
        out.append(f"WARNING: {w}")
    out.append(line(rows[0]))
    out.append("  ".join("-" * w for w in widths))
    out.extend(line(r) for r in rows[1:])
    out.append("  ".join("-" * w for w in widths))
    means = group_means(main.densities())
    agg = aggregates(main.counts, main.loc)
    total_width = sum(widths) + 6
    footer = [
        ("Smells, mean density", means["smells"]),
        ("Antipatterns, mean density", means["antipatterns"]),
        ("All kinds, mean density", agg["mean_all_kinds"]),
        ("Detectable kinds, mean density", agg["mean_detectable_kinds"]),
        ("Pooled density", agg["pooled"]),
    ]
    for label, value in footer:
        text = str(round_half_up(value))
        out.append(label + text.rjust(total_width - len(label)))
    p = report.parse
    out.append(f"Parsed {p['parsed']:,} of {p['total']:,} modules ({p['ratio']:.2%}); partition: {report.selected}")
    return "\n".join(out) + "\n"


def _format_csv(report: Report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["project", "kind", "found", "loc", "density"])
    for name in sorted(report.projects):
        part = report.project_partition(name)
        dens = part.densities()
        for k in KINDS:
            writer.writerow([name, k.value, part.counts[k], part.loc, repr(dens[k])])
    return buf.getvalue()


def emit_report(report: Report, fmt: str = "table") -> str:
    if fmt == "table":
        return _format_table(report)
    if fmt == "json":
        return json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        return _format_csv(report)
    raise ValueError(f"unknown report format {fmt!r}")
