"""End-to-end analysis: discover, parse, model, measure, detect."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import enumerate_sources
from .detectors import DetectorConfig, Finding, Register
from .frontend import ParseOutcome, load_and_parse, parse_stats
from .metrics import ProjectMetrics
from .model import Project, assemble_project, build_module, link_references

log = logging.getLogger(__name__)


@dataclass
class ProjectInput:
    name: str
    root: Path
    outcomes: list[ParseOutcome] = field(default_factory=list)


@dataclass
class AnalysisResult:
    projects: list[Project]
    inputs: list[ProjectInput]
    findings: list[Finding]
    metrics: dict[str, ProjectMetrics]
    config: DetectorConfig

    @property
    def outcomes(self) -> list[ParseOutcome]:
        return [o for inp in self.inputs for o in inp.outcomes]

    def parse_stats(self) -> tuple[int, int, float]:
        return parse_stats(self.outcomes)


def project_names(roots: list[Path]) -> list[str]:
    names: list[str] = []
    seen: dict[str, int] = {}
    for root in roots:
        base = root.resolve().name or str(root)
        n = seen.get(base, 0)
        seen[base] = n + 1
        names.append(base if n == 0 else f"{base}~{n}")
    return names


def _parse_job(job: tuple[str, str]) -> ParseOutcome:
    path, rel = job
    return load_and_parse(path, rel)


def parse_roots(roots: list[str | Path], jobs: int = 1) -> list[ProjectInput]:
    root_paths = [Path(r) for r in roots]
    inputs = [ProjectInput(name, root) for name, root in zip(project_names(root_paths), root_paths)]
    work: list[tuple[int, tuple[str, str]]] = []
    for i, inp in enumerate(inputs):
        if not inp.root.is_dir():
            raise FileNotFoundError(f"project root {inp.root} is not a directory")
        for path in enumerate_sources(inp.root):
            work.append((i, (str(path), path.relative_to(inp.root).as_posix())))
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_parse_job, [w for _, w in work], chunksize=max(1, len(work) // (jobs * 4))))
    else:
        results = [_parse_job(w) for _, w in work]
    for (i, _), outcome in zip(work, results):
        inputs[i].outcomes.append(outcome)
    return inputs


def build_projects(inputs: list[ProjectInput]) -> list[Project]:
    projects = []
    for inp in inputs:
        modules = [build_module(o.tree, o.file.path) for o in inp.outcomes if o.parsed and o.tree is not None]
        projects.append(link_references(assemble_project(modules, str(inp.root), inp.name)))
    return projects


def analyze(roots: list[str | Path], config: DetectorConfig = DetectorConfig(), jobs: int = 1) -> AnalysisResult:
    jobs = max(1, min(jobs, 61))
    inputs = parse_roots(roots, jobs)
    for inp in inputs:
        for o in inp.outcomes:
            if not o.parsed:
                log.info("excluded %s/%s: %s", inp.name, o.file.path, o.error.message if o.error else "")
    projects = build_projects(inputs)
    register = Register(config)
    findings = register.run(projects)
    return AnalysisResult(projects, inputs, findings, register.metrics, config)
