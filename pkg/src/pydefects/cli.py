"""Command-line interface.

Usage:
    pydefects analyze ROOT... [--config FILE] [--format table|json|csv] [--output PATH]
                              [--include-tests] [--jobs N] [--dump-metrics PATH] [--dump-model PATH]
    pydefects corpus filter ROOT... [--manifest FILE] [--min-commits 100] [--min-classes 20]
                                    [--min-parse-ratio 0.99] [--min-python-share 0.40]
    pydefects explain FINDINGS.json ENTITY

Exit codes: 0 success, 1 usage or configuration error, 2 parse ratio below the
configured minimum, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .config import Config, ConfigError, load_config
from .corpus import (
    RepoManifest,
    filter_project,
    git_commit_count,
    language_shares,
    load_manifest,
)
from .detectors import Finding, verify_finding
from .frontend import parse_stats
from .metrics import metrics_csv
from .model import build_module, model_to_dict
from .pipeline import analyze, parse_roots
from .report import build_report, emit_report

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE_RATIO = 2
EXIT_IO = 3

log = logging.getLogger("pydefects")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 by default, which means "parse ratio" here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pydefects", description="Detect design defects in Python projects.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    an = sub.add_parser("analyze", help="analyse project roots and report defect densities")
    an.add_argument("roots", nargs="+")
    an.add_argument("--config")
    an.add_argument("--format", choices=("table", "json", "csv"), default="table")
    an.add_argument("--output")
    an.add_argument("--include-tests", action="store_true")
    an.add_argument("--jobs", type=int, default=1)
    an.add_argument("--dump-metrics", metavar="PATH")
    an.add_argument("--dump-model", metavar="PATH")
    an.add_argument("--min-parse-ratio", type=float)

    corpus = sub.add_parser("corpus", help="corpus inclusion rules")
    corpus_sub = corpus.add_subparsers(dest="corpus_command", required=True, parser_class=_Parser)
    flt = corpus_sub.add_parser("filter", help="decide which project roots enter the corpus")
    flt.add_argument("roots", nargs="+")
    flt.add_argument("--manifest")
    flt.add_argument("--config")
    flt.add_argument("--output")
    flt.add_argument("--jobs", type=int, default=1)
    flt.add_argument("--min-commits", type=int)
    flt.add_argument("--min-classes", type=int)
    flt.add_argument("--min-parse-ratio", type=float)
    flt.add_argument("--min-python-share", type=float)

    ex = sub.add_parser("explain", help="show the evidence behind one finding")
    ex.add_argument("findings")
    ex.add_argument("entity")
    return parser


def _corpus_thresholds(cfg: Config, args: argparse.Namespace):
    overrides = {
        name: value
        for name in ("min_commits", "min_classes", "min_parse_ratio", "min_python_share")
        if (value := getattr(args, name, None)) is not None
    }
    return dataclasses.replace(cfg.corpus, **overrides)


def _check_roots(roots: list[str]) -> None:
    missing = [r for r in roots if not Path(r).is_dir()]
    if missing:
        raise ConfigError(f"not a directory: {', '.join(missing)}")


def cmd_analyze(args: argparse.Namespace) -> int:
    _check_roots(args.roots)
    cfg = load_config(args.config)
    thresholds = _corpus_thresholds(cfg, args)
    if args.jobs < 1:
        raise ConfigError("--jobs must be at least 1")
    result = analyze(args.roots, cfg.detector, jobs=args.jobs)
    echo = cfg.to_dict()
    echo["corpus"] = dataclasses.asdict(thresholds)
    report = build_report(result, include_tests=args.include_tests, config=echo)
    _write(args.output, emit_report(report, args.format))
    if args.dump_metrics:
        _write(args.dump_metrics, metrics_csv(result.metrics[name] for name in sorted(result.metrics)))
    if args.dump_model:
        doc = {"projects": [model_to_dict(p) for p in result.projects]}
        _write(args.dump_model, json.dumps(doc, indent=1, sort_keys=True) + "\n")
    _, total, ratio = result.parse_stats()
    if total and ratio < thresholds.min_parse_ratio:
        log.error("parse ratio %.4f below minimum %.4f", ratio, thresholds.min_parse_ratio)
        return EXIT_PARSE_RATIO
    return EXIT_OK


def cmd_corpus_filter(args: argparse.Namespace) -> int:
    _check_roots(args.roots)
    cfg = load_config(args.config)
    thresholds = _corpus_thresholds(cfg, args)
    manifest = load_manifest(args.manifest) if args.manifest else {}
    inputs = parse_roots(args.roots, max(1, args.jobs))
    lines = []
    for inp in inputs:
        entry = manifest.get(os.path.normpath(str(inp.root)))
        if entry is None:
            entry = RepoManifest(path=str(inp.root))
        if entry.commit_count is None:
            entry.commit_count = git_commit_count(inp.root)
        if entry.language_shares is None:
            entry.language_shares = language_shares(inp.root)
        classes = sum(
            len(list(build_module(o.tree, o.file.path).all_classes()))
            for o in inp.outcomes
            if o.parsed and o.tree is not None
        )
        _, _, ratio = parse_stats(inp.outcomes)
        decision = filter_project(entry, classes, ratio, thresholds, file_count=len(inp.outcomes))
        lines.append(decision.to_json())
    _write(args.output, "".join(line + "\n" for line in lines))
    return EXIT_OK


def find_entity(findings: list[Finding], entity: str) -> list[Finding]:
    exact = [f for f in findings if f.entity_id == entity]
    if exact:
        return exact
    return [
        f
        for f in findings
        if f.entity_id.endswith(entity) or f"{f.module_path}::{f.qualname}" == entity or f.qualname == entity
    ]


def format_explanation(f: Finding) -> str:
    out = [f"{f.kind.value} at {f.entity_id} (line {f.line}{', test code' if f.is_test else ''})"]
    out.append("  evidence:")
    out.extend(f"    {k} = {v}" for k, v in sorted(f.evidence.items()))
    out.append("  thresholds:")
    out.extend(f"    {k} = {v}" for k, v in sorted(f.thresholds.items()))
    violations = verify_finding(f)
    out.append("  formula check: " + ("holds" if not violations else "VIOLATED: " + "; ".join(violations)))
    return "\n".join(out)


def cmd_explain(args: argparse.Namespace) -> int:
    data = json.loads(Path(args.findings).read_text(encoding="utf-8"))
    raw = data["findings"] if isinstance(data, dict) else data
    findings = [Finding.from_dict(d) for d in raw]
    matches = find_entity(findings, args.entity)
    if not matches:
        print(f"no finding for {args.entity!r}", file=sys.stderr)
        return EXIT_USAGE
    print("\n\n".join(format_explanation(f) for f in matches))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s: %(message)s",
    )
    handlers = {"analyze": cmd_analyze, "explain": cmd_explain}
    try:
        if args.command == "corpus":
            return cmd_corpus_filter(args)
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
