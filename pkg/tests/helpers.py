"""Shared builders for the test modules."""

from __future__ import annotations

import textwrap
from pathlib import Path

from pydefects.detectors import Register, is_accessor
from pydefects.frontend import SourceFile, parse_file
from pydefects.metrics import collect_project_metrics
from pydefects.model import Project, build_project

FIXTURES = Path(__file__).parent / "fixtures"


def make_project(sources: dict[str, str], name: str = "proj") -> Project:
    trees = {}
    for path, text in sources.items():
        outcome = parse_file(SourceFile(path, textwrap.dedent(text).lstrip("\n")))
        assert outcome.parsed, outcome.error
        trees[path] = outcome.tree
    return build_project(trees, f"/virtual/{name}", name)


def project_metrics(project: Project):
    return collect_project_metrics(project, is_accessor)


def detect(project: Project, **config):
    return Register(**config).run([project])


def write_tree(root: Path, files: dict[str, str]) -> Path:
    for rel, text in files.items():
        path = root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(textwrap.dedent(text).lstrip("\n"), encoding="utf-8")
    return root
