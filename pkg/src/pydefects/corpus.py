"""Corpus discovery and project inclusion rules."""

from __future__ import annotations

import json
import logging
import os
import subprocess
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .model import is_test_path

log = logging.getLogger(__name__)

# extension -> language class, used for byte shares when no manifest provides them
LANGUAGE_EXTENSIONS = {
    ".py": "python", ".pyx": "python", ".pyi": "python",
    ".c": "c", ".h": "c",
    ".cc": "cpp", ".cpp": "cpp", ".cxx": "cpp", ".hpp": "cpp", ".hh": "cpp",
    ".js": "javascript", ".jsx": "javascript", ".mjs": "javascript",
    ".ts": "typescript", ".tsx": "typescript",
    ".java": "java", ".go": "go", ".rs": "rust", ".rb": "ruby",
    ".php": "php", ".cs": "csharp", ".swift": "swift", ".kt": "kotlin",
    ".scala": "scala", ".m": "objective-c", ".f": "fortran", ".f90": "fortran",
    ".sh": "shell", ".pl": "perl", ".lua": "lua", ".r": "r", ".jl": "julia",
    ".html": "html", ".css": "css",
}  # fmt: skip


@dataclass
class RepoManifest:
    path: str
    commit_count: int | None = None
    language_shares: dict[str, float] | None = None

    def __post_init__(self) -> None:
        if self.language_shares:
            total = sum(self.language_shares.values())
            if abs(total - 1.0) > 0.001:
                raise ValueError(f"language shares of {self.path} sum to {total:.4f}, expected 1")


@dataclass(frozen=True)
class CorpusThresholds:
    min_commits: int = 100
    min_classes: int = 20
    min_parse_ratio: float = 0.99
    min_python_share: float = 0.40


@dataclass
class CorpusDecision:
    project: str
    accepted: bool
    reasons: list[str]
    stats: dict[str, float | int | None]
    warnings: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def enumerate_sources(root: str | Path) -> list[Path]:
    """All ``*.py`` files below ``root``, skipping dot-directories; sorted by relative path."""
    root = Path(root)
    found: list[Path] = []
    visited: set[tuple[int, int]] = set()

    def onerror(exc: OSError) -> None:
        log.warning("skipping unreadable directory %s: %s", exc.filename, exc.strerror)

    for dirpath, dirnames, filenames in os.walk(root, followlinks=True, onerror=onerror):
        try:
            st = os.stat(dirpath)
        except OSError:
            dirnames[:] = []
            continue
        key = (st.st_dev, st.st_ino)
        if key in visited:
            dirnames[:] = []
            continue
        visited.add(key)
        dirnames[:] = sorted(d for d in dirnames if not d.startswith("."))
        for name in filenames:
            if name.endswith(".py"):
                path = Path(dirpath) / name
                if path.is_file():
                    found.append(path)
    found.sort(key=lambda p: p.relative_to(root).as_posix())
    return found


def language_shares(root: str | Path) -> dict[str, float]:
    """Byte share per language class over recognised source files."""
    totals: dict[str, int] = {}
    root = Path(root)
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames[:] = [d for d in dirnames if not d.startswith(".")]
        for name in filenames:
            lang = LANGUAGE_EXTENSIONS.get(os.path.splitext(name)[1].lower())
            if lang is None:
                continue
            try:
                size = os.path.getsize(os.path.join(dirpath, name))
            except OSError:
                continue
            totals[lang] = totals.get(lang, 0) + size
    grand = sum(totals.values())
    if grand == 0:
        return {}
    return {lang: n / grand for lang, n in sorted(totals.items())}


def git_commit_count(root: str | Path) -> int | None:
    if not (Path(root) / ".git").exists():
        return None
    try:
        out = subprocess.run(
            ["git", "-C", str(root), "rev-list", "--count", "HEAD"],
            capture_output=True,
            text=True,
            timeout=60,
            check=True,
        )
        return int(out.stdout.strip())
    except (OSError, subprocess.SubprocessError, ValueError):
        return None


def load_manifest(path: str | Path) -> dict[str, RepoManifest]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, list):
        raise ValueError("manifest must be a JSON array")
    out = {}
    for entry in data:
        m = RepoManifest(
            path=str(entry["path"]),
            commit_count=entry.get("commit_count"),
            language_shares=entry.get("language_shares"),
        )
        out[os.path.normpath(m.path)] = m
    return out


def python_share_ok(shares: dict[str, float], min_share: float) -> bool:
    py = shares.get("python", 0.0)
    if py >= min_share:
        return True
    others = [v for k, v in shares.items() if k != "python"]
    return py > 0 and all(py > v for v in others)


def filter_project(
    manifest: RepoManifest,
    class_count: int,
    parse_ratio: float,
    thresholds: CorpusThresholds = CorpusThresholds(),
    file_count: int | None = None,
) -> CorpusDecision:
    reasons: list[str] = []
    warnings: list[str] = []
    shares = manifest.language_shares or {}
    if not python_share_ok(shares, thresholds.min_python_share):
        reasons.append("python_share")
    if manifest.commit_count is None:
        warnings.append("commit_count_missing")
    elif manifest.commit_count < thresholds.min_commits:
        reasons.append("min_commits")
    if class_count < thresholds.min_classes:
        reasons.append("min_classes")
    if parse_ratio < thresholds.min_parse_ratio:
        reasons.append("parse_ratio")
    return CorpusDecision(
        project=manifest.path,
        accepted=not reasons,
        reasons=reasons,
        stats={
            "files": file_count,
            "classes": class_count,
            "parse_ratio": parse_ratio,
            "python_share": shares.get("python", 0.0),
            "commit_count": manifest.commit_count,
        },
        warnings=warnings,
    )


def split_test_production(paths: list) -> tuple[list, list]:
    production, test = [], []
    for p in paths:
        (test if is_test_path(p) else production).append(p)
    return production, test
