"""JSON configuration: thresholds, lexicons, filters and corpus rules."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import CorpusThresholds
from .detectors import DetectorConfig, DetectorThresholds, NameLexicon
from .metrics import FilterSettings


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    detector: DetectorConfig = field(default_factory=DetectorConfig)
    corpus: CorpusThresholds = field(default_factory=CorpusThresholds)

    def to_dict(self) -> dict:
        d = self.detector
        return {
            "thresholds": dataclasses.asdict(d.thresholds),
            "lexicons": {
                "controller": list(d.lexicon.controller_words),
                "procedural": list(d.lexicon.procedural_words),
            },
            "filters": dataclasses.asdict(d.filters),
            "corpus": dataclasses.asdict(self.corpus),
        }


def _build(cls, section: dict, name: str):
    known = {f.name for f in dataclasses.fields(cls)}
    unknown = set(section) - known
    if unknown:
        raise ConfigError(f"unknown keys in [{name}]: {', '.join(sorted(unknown))}")
    try:
        return cls(**section)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid [{name}] section: {exc}") from exc


def config_from_dict(data: dict) -> Config:
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a JSON object")
    unknown = set(data) - {"thresholds", "lexicons", "filters", "corpus"}
    if unknown:
        raise ConfigError(f"unknown configuration sections: {', '.join(sorted(unknown))}")
    thresholds = _build(DetectorThresholds, data.get("thresholds", {}), "thresholds")
    lex = data.get("lexicons", {})
    if set(lex) - {"controller", "procedural"}:
        raise ConfigError("lexicons accepts only 'controller' and 'procedural'")
    base = NameLexicon()
    try:
        lexicon = NameLexicon(
            tuple(lex.get("controller", base.controller_words)),
            tuple(lex.get("procedural", base.procedural_words)),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    filters_section = dict(data.get("filters", {}))
    factors = filters_section.pop("factors", None)
    if factors is not None:
        filters_section.setdefault("mild_factor", factors.get("mild", 1.5))
        filters_section.setdefault("extreme_factor", factors.get("extreme", 3.0))
    filters = _build(FilterSettings, filters_section, "filters")
    corpus = _build(CorpusThresholds, data.get("corpus", {}), "corpus")
    return Config(DetectorConfig(thresholds, lexicon, filters), corpus)


def load_config(path: str | Path | None) -> Config:
    if path is None:
        return Config()
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return config_from_dict(data)
