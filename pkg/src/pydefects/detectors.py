"""The nine design-defect detectors and the register that drives them.

Detection is two-phase. Phase one walks every entity and keeps a
:class:`Candidate` when the observable part of a rule holds (names, base
counts, absolute metric thresholds). Phase two runs after every project's
distributions are final and confirms or rejects each candidate against the
statistical and relative filters.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .metrics import (
    DEFAULT_FILTERS,
    SIZE,
    FilterSettings,
    MetricDistribution,
    MetricId,
    ProjectMetrics,
    compute_class_metrics,
    compute_subroutine_metrics,
    number_of_parameters,
)
from .model import ClassEntity, Project, SubroutineEntity


class DefectKind(str, Enum):
    FeatureEnvy = "FeatureEnvy"
    DataClass = "DataClass"
    LongMethod = "LongMethod"
    LongParameterList = "LongParameterList"
    LargeClass = "LargeClass"
    GodClass = "GodClass"
    SwissArmyKnife = "SwissArmyKnife"
    FunctionalDecomposition = "FunctionalDecomposition"
    SpaghettiCode = "SpaghettiCode"

    def __str__(self) -> str:
        return self.value


SMELLS = (
    DefectKind.FeatureEnvy,
    DefectKind.DataClass,
    DefectKind.LongMethod,
    DefectKind.LongParameterList,
    DefectKind.LargeClass,
)
ANTIPATTERNS = (
    DefectKind.GodClass,
    DefectKind.SwissArmyKnife,
    DefectKind.FunctionalDecomposition,
    DefectKind.SpaghettiCode,
)

DISPLAY_NAMES = {
    DefectKind.FeatureEnvy: "Feature Envy",
    DefectKind.DataClass: "Data Class",
    DefectKind.LongMethod: "Long Method",
    DefectKind.LongParameterList: "Long Parameter List",
    DefectKind.LargeClass: "Large Class",
    DefectKind.GodClass: "God Class",
    DefectKind.SwissArmyKnife: "Swiss Army Knife",
    DefectKind.FunctionalDecomposition: "Functional Decomposition",
    DefectKind.SpaghettiCode: "Spaghetti Code",
}

DEFAULT_CONTROLLER_WORDS = (
    "manage", "manager", "process", "processor", "control",
    "controller", "drive", "driver", "handle", "handler",
)  # fmt: skip
DEFAULT_PROCEDURAL_WORDS = (
    "make", "create", "exec", "execute", "compute",
    "calculate", "build", "init", "run", "do",
)  # fmt: skip


@dataclass(frozen=True)
class NameLexicon:
    controller_words: tuple[str, ...] = DEFAULT_CONTROLLER_WORDS
    procedural_words: tuple[str, ...] = DEFAULT_PROCEDURAL_WORDS

    def __post_init__(self) -> None:
        if not self.controller_words or not self.procedural_words:
            raise ValueError("lexicon word lists must be non-empty")
        object.__setattr__(self, "controller_words", tuple(w.lower() for w in self.controller_words))
        object.__setattr__(self, "procedural_words", tuple(w.lower() for w in self.procedural_words))


@dataclass(frozen=True)
class DetectorThresholds:
    AID_min: int = 4
    ALD_min: int = 3
    NRC_max: int = 3
    envy_top_pct: float = 10
    RDC_min: int = 2
    RCOMPF_min: int = 2
    data_top_pct: float = 15
    long_top_pct: float = 15
    # "gt" applies ALD > ALD_min as printed; "lt" flips it to ALD < ALD_min
    ald_mode: str = "gt"

    def __post_init__(self) -> None:
        for name in ("AID_min", "ALD_min", "NRC_max", "envy_top_pct", "RDC_min", "RCOMPF_min",
                     "data_top_pct", "long_top_pct"):  # fmt: skip
            if not getattr(self, name) > 0:
                raise ValueError(f"threshold {name} must be strictly positive")
        for name in ("envy_top_pct", "data_top_pct", "long_top_pct"):
            if getattr(self, name) > 100:
                raise ValueError(f"{name} is a percentage and cannot exceed 100")
        if self.ald_mode not in ("gt", "lt"):
            raise ValueError("ald_mode must be 'gt' or 'lt'")


@dataclass(frozen=True)
class DetectorConfig:
    thresholds: DetectorThresholds = DetectorThresholds()
    lexicon: NameLexicon = NameLexicon()
    filters: FilterSettings = DEFAULT_FILTERS


@dataclass
class Candidate:
    entity: ClassEntity | SubroutineEntity
    kind: DefectKind
    captured: dict[str, int | bool] = field(default_factory=dict)


@dataclass
class Finding:
    project: str
    entity_id: str
    module_path: str
    qualname: str
    line: int
    kind: DefectKind
    evidence: dict[str, int | bool]
    thresholds: dict[str, float | int | str]
    is_test: bool = False

    def sort_key(self) -> tuple:
        return (self.project, self.entity_id, self.kind.value)

    def to_dict(self) -> dict:
        return {
            "project": self.project,
            "entity": self.entity_id,
            "path": self.module_path,
            "qualname": self.qualname,
            "line": self.line,
            "kind": self.kind.value,
            "evidence": dict(sorted(self.evidence.items())),
            "thresholds": dict(sorted(self.thresholds.items())),
            "is_test": self.is_test,
        }

    @classmethod
    def from_dict(cls, data: dict) -> Finding:
        return cls(
            project=data["project"],
            entity_id=data["entity"],
            module_path=data["path"],
            qualname=data["qualname"],
            line=data["line"],
            kind=DefectKind(data["kind"]),
            evidence=dict(data["evidence"]),
            thresholds=dict(data["thresholds"]),
            is_test=data.get("is_test", False),
        )


# ---------------------------------------------------------------------------
# Named predicates
# ---------------------------------------------------------------------------


def _contains_word(name: str, words: Iterable[str]) -> bool:
    lowered = name.lower()
    return any(w in lowered for w in words)


def is_controller_name(name: str, lexicon: NameLexicon = NameLexicon()) -> bool:
    return _contains_word(name, lexicon.controller_words)


def is_procedural_name(name: str, lexicon: NameLexicon = NameLexicon()) -> bool:
    return _contains_word(name, lexicon.procedural_words)


def has_controller_methods(c: ClassEntity, lexicon: NameLexicon = NameLexicon()) -> bool:
    return any(is_controller_name(m.name, lexicon) for m in c.methods)


def is_controller(c: ClassEntity, lexicon: NameLexicon = NameLexicon()) -> bool:
    return is_controller_name(c.name, lexicon) or has_controller_methods(c, lexicon)


_ACCESSOR_NAME = re.compile(r"^(get|set)(_|[A-Z])")


def _strip_docstring(body: list[ast.stmt]) -> list[ast.stmt]:
    if body and isinstance(body[0], ast.Expr) and isinstance(body[0].value, ast.Constant):
        if isinstance(body[0].value.value, str):
            return body[1:]
    return body


def _receiver_field(expr: ast.expr, receiver: str | None, fields: set[str]) -> bool:
    return (
        receiver is not None
        and isinstance(expr, ast.Attribute)
        and isinstance(expr.value, ast.Name)
        and expr.value.id == receiver
        and expr.attr in fields
    )


def is_accessor(s: SubroutineEntity) -> bool:
    """Getter/setter by name, by property decorator, or by a one-statement body."""
    if _ACCESSOR_NAME.match(s.name) or s.is_property_accessor:
        return True
    if not isinstance(s.parent, ClassEntity):
        return False
    body = _strip_docstring(s.node.body)
    if len(body) != 1:
        return False
    stmt = body[0]
    fields = s.parent.all_field_names()
    if isinstance(stmt, ast.Return) and stmt.value is not None:
        return _receiver_field(stmt.value, s.receiver, fields)
    if isinstance(stmt, ast.Assign) and len(stmt.targets) == 1:
        params = set(s.parameters) - {s.receiver}
        return (
            _receiver_field(stmt.targets[0], s.receiver, fields)
            and isinstance(stmt.value, ast.Name)
            and stmt.value.id in params
        )
    return False


# ---------------------------------------------------------------------------
# Detectors
# ---------------------------------------------------------------------------


@dataclass
class DetectionContext:
    project: Project
    metrics: ProjectMetrics
    config: DetectorConfig

    def dist(self, metric: MetricId | str) -> MetricDistribution:
        return self.metrics.distribution(metric)

    def class_values(self, c: ClassEntity) -> dict[MetricId, int]:
        return self.metrics.classes[c.id]

    def sub_values(self, s: SubroutineEntity) -> dict[MetricId, int]:
        return self.metrics.subroutines[s.id]


def _num(x) -> float | int:
    f = float(x)
    return int(f) if f.is_integer() else f


def _outlier_thresholds(prefix: str, d: MetricDistribution, factor: float, settings: FilterSettings) -> dict:
    return {
        f"{prefix}.median": _num(d.median),
        f"{prefix}.fence": _num(d.outlier_fence(factor, settings)),
    }


def _outlier_ok(v: int, d: MetricDistribution, factor: float, settings: FilterSettings) -> bool:
    return d.n > 0 and v > d.median and v >= d.outlier_fence(factor, settings)


def _finding(entity, kind: DefectKind, evidence: dict, thresholds: dict) -> Finding:
    module = entity.module
    return Finding(
        project=module.project.name,
        entity_id=entity.id,
        module_path=module.path,
        qualname=entity.qualname,
        line=entity.node.lineno,
        kind=kind,
        evidence=evidence,
        thresholds=thresholds,
        is_test=module.is_test,
    )


class Detector:
    kind: DefectKind
    level: str  # "subroutine" | "class"

    def candidate(self, entity, ctx: DetectionContext) -> Candidate | None:
        raise NotImplementedError

    def confirm(self, cand: Candidate, ctx: DetectionContext) -> Finding | None:
        raise NotImplementedError

    def detect(self, entity, ctx: DetectionContext) -> Finding | None:
        cand = self.candidate(entity, ctx)
        return None if cand is None else self.confirm(cand, ctx)


class FeatureEnvyDetector(Detector):
    kind = DefectKind.FeatureEnvy
    level = "subroutine"

    def candidate(self, s, ctx):
        th = ctx.config.thresholds
        v = ctx.sub_values(s)
        aid, ald, nrc = v[MetricId.AID], v[MetricId.ALD], v[MetricId.NRC]
        ald_ok = ald > th.ALD_min if th.ald_mode == "gt" else ald < th.ALD_min
        if aid > th.AID_min and ald_ok and nrc < th.NRC_max:
            return Candidate(s, self.kind, {"AID": aid, "ALD": ald, "NRC": nrc})
        return None

    def confirm(self, cand, ctx):
        th = ctx.config.thresholds
        d = ctx.dist(MetricId.AID)
        top = d.top_threshold(th.envy_top_pct)
        if cand.captured["AID"] < top:
            return None
        return _finding(
            cand.entity,
            self.kind,
            dict(cand.captured),
            {
                "AID_min": th.AID_min,
                "ALD_min": th.ALD_min,
                "ALD_mode": th.ald_mode,
                "NRC_max": th.NRC_max,
                "AID.top_pct": th.envy_top_pct,
                "AID.top_threshold": top,
            },
        )


class _SingleOutlierDetector(Detector):
    metric: MetricId | str
    extreme = True

    def value(self, entity, ctx) -> dict[str, int]:
        raise NotImplementedError

    def candidate(self, entity, ctx):
        return Candidate(entity, self.kind, self.value(entity, ctx))

    def confirm(self, cand, ctx):
        settings = ctx.config.filters
        factor = settings.extreme_factor if self.extreme else settings.mild_factor
        d = ctx.dist(self.metric)
        key = str(self.metric)
        if not _outlier_ok(cand.captured[key], d, factor, settings):
            return None
        return _finding(cand.entity, self.kind, dict(cand.captured), _outlier_thresholds(key, d, factor, settings))


class LongMethodDetector(_SingleOutlierDetector):
    kind = DefectKind.LongMethod
    level = "subroutine"
    metric = MetricId.LOC_method

    def value(self, s, ctx):
        return {"LOC_method": ctx.sub_values(s)[MetricId.LOC_method]}


class LongParameterListDetector(_SingleOutlierDetector):
    kind = DefectKind.LongParameterList
    level = "subroutine"
    metric = MetricId.NOP

    def value(self, s, ctx):
        return {"NOP": ctx.sub_values(s)[MetricId.NOP]}


class LargeClassDetector(_SingleOutlierDetector):
    kind = DefectKind.LargeClass
    level = "class"
    metric = SIZE

    def value(self, c, ctx):
        v = ctx.class_values(c)
        return {"NMD": v[MetricId.NMD], "NAD": v[MetricId.NAD], SIZE: v[MetricId.NMD] + v[MetricId.NAD]}


class SwissArmyKnifeDetector(_SingleOutlierDetector):
    kind = DefectKind.SwissArmyKnife
    level = "class"
    metric = MetricId.SUP

    def value(self, c, ctx):
        return {"SUP": ctx.class_values(c)[MetricId.SUP]}


class DataClassDetector(Detector):
    kind = DefectKind.DataClass
    level = "class"

    def candidate(self, c, ctx):
        v = ctx.class_values(c)
        return Candidate(c, self.kind, {"AOPuF": v[MetricId.AOPuF], "AOA": v[MetricId.AOA]})

    def confirm(self, cand, ctx):
        settings = ctx.config.filters
        factor = settings.extreme_factor
        hits = [
            _outlier_ok(cand.captured[m.value], ctx.dist(m), factor, settings) for m in (MetricId.AOPuF, MetricId.AOA)
        ]
        if not any(hits):
            return None
        thresholds = {}
        for m in (MetricId.AOPuF, MetricId.AOA):
            thresholds.update(_outlier_thresholds(m.value, ctx.dist(m), factor, settings))
        return _finding(cand.entity, self.kind, dict(cand.captured), thresholds)


def related_data_classes(c: ClassEntity, ctx: DetectionContext) -> tuple[int, int]:
    """RDC and the top-X% AOA threshold used to count it."""
    d = ctx.dist(MetricId.AOA)
    if d.n == 0:
        return 0, 0
    top = d.top_threshold(ctx.config.thresholds.data_top_pct)
    count = sum(1 for r in c.referenced_classes if ctx.class_values(r)[MetricId.AOA] >= top)
    return count, top


def related_one_method_private_classes(c: ClassEntity, ctx: DetectionContext) -> int:
    """RCOMPF: related classes with exactly one method and mildly outlying private-field counts."""
    d = ctx.dist(MetricId.AOPrF)
    settings = ctx.config.filters
    count = 0
    for r in c.referenced_classes:
        if len(r.methods) != 1:
            continue
        if _outlier_ok(ctx.class_values(r)[MetricId.AOPrF], d, settings.mild_factor, settings):
            count += 1
    return count


class GodClassDetector(Detector):
    kind = DefectKind.GodClass
    level = "class"

    def candidate(self, c, ctx):
        lex = ctx.config.lexicon
        by_name = is_controller_name(c.name, lex)
        by_methods = has_controller_methods(c, lex)
        if not (by_name or by_methods):
            return None
        v = ctx.class_values(c)
        return Candidate(
            c,
            self.kind,
            {
                "IsController": True,
                "HasControllerName": by_name,
                "HasControllerMethods": by_methods,
                "LOC_class": v[MetricId.LOC_class],
                "LCOM": v[MetricId.LCOM],
            },
        )

    def confirm(self, cand, ctx):
        settings = ctx.config.filters
        th = ctx.config.thresholds
        d_loc = ctx.dist(MetricId.LOC_class)
        d_lcom = ctx.dist(MetricId.LCOM)
        if not _outlier_ok(cand.captured["LOC_class"], d_loc, settings.mild_factor, settings):
            return None
        if not _outlier_ok(cand.captured["LCOM"], d_lcom, settings.mild_factor, settings):
            return None
        rdc, top = related_data_classes(cand.entity, ctx)
        if rdc <= th.RDC_min:
            return None
        thresholds = {"RDC_min": th.RDC_min, "AOA.top_pct": th.data_top_pct, "AOA.top_threshold": top}
        thresholds.update(_outlier_thresholds("LOC_class", d_loc, settings.mild_factor, settings))
        thresholds.update(_outlier_thresholds("LCOM", d_lcom, settings.mild_factor, settings))
        return _finding(cand.entity, self.kind, {**cand.captured, "RDC": rdc}, thresholds)


class FunctionalDecompositionDetector(Detector):
    kind = DefectKind.FunctionalDecomposition
    level = "class"

    def candidate(self, c, ctx):
        sup = ctx.class_values(c)[MetricId.SUP]
        if sup != 0 or not is_procedural_name(c.name, ctx.config.lexicon):
            return None
        return Candidate(c, self.kind, {"HasProceduralName": True, "SUP": sup})

    def confirm(self, cand, ctx):
        th = ctx.config.thresholds
        rcompf = related_one_method_private_classes(cand.entity, ctx)
        if rcompf <= th.RCOMPF_min:
            return None
        return _finding(cand.entity, self.kind, {**cand.captured, "RCOMPF": rcompf}, {"RCOMPF_min": th.RCOMPF_min})


class SpaghettiCodeDetector(Detector):
    kind = DefectKind.SpaghettiCode
    level = "class"

    def candidate(self, c, ctx):
        sup = ctx.class_values(c)[MetricId.SUP]
        if sup != 0 or not c.uses_global or not is_procedural_name(c.name, ctx.config.lexicon):
            return None
        longest = max((ctx.sub_values(m)[MetricId.LOC_method] for m in c.methods), default=0)
        return Candidate(
            c,
            self.kind,
            {
                "HasProceduralName": True,
                "SUP": sup,
                "UsesGlobals": True,
                "LongestMethodLOC": longest,
                "MNP": ctx.class_values(c)[MetricId.MNP],
            },
        )

    def confirm(self, cand, ctx):
        pct = ctx.config.thresholds.long_top_pct
        if not cand.entity.methods:
            return None
        loc_top = ctx.dist(MetricId.LOC_method).top_threshold(pct)
        mnp_top = ctx.dist(MetricId.MNP).top_threshold(pct)
        has_long = cand.captured["LongestMethodLOC"] >= loc_top
        if not has_long or cand.captured["MNP"] < mnp_top:
            return None
        return _finding(
            cand.entity,
            self.kind,
            {**cand.captured, "HasLongMethod": True},
            {"top_pct": pct, "LOC_method.top_threshold": loc_top, "MNP.top_threshold": mnp_top},
        )


def default_detectors() -> list[Detector]:
    return [
        FeatureEnvyDetector(),
        DataClassDetector(),
        LongMethodDetector(),
        LongParameterListDetector(),
        LargeClassDetector(),
        GodClassDetector(),
        SwissArmyKnifeDetector(),
        FunctionalDecompositionDetector(),
        SpaghettiCodeDetector(),
    ]


def _ctx_for(project: Project, metrics: ProjectMetrics | None, config: DetectorConfig) -> DetectionContext:
    if metrics is None:
        from .metrics import collect_project_metrics

        metrics = collect_project_metrics(project, is_accessor)
    return DetectionContext(project, metrics, config)


def _owning_project(entity) -> Project:
    return entity.module.project


def detect_feature_envy(s, metrics=None, config: DetectorConfig = DetectorConfig()):
    return FeatureEnvyDetector().detect(s, _ctx_for(_owning_project(s), metrics, config))


def detect_data_class(c, metrics=None, config: DetectorConfig = DetectorConfig()):
    return DataClassDetector().detect(c, _ctx_for(_owning_project(c), metrics, config))


def detect_long_method(s, metrics=None, config: DetectorConfig = DetectorConfig()):
    return LongMethodDetector().detect(s, _ctx_for(_owning_project(s), metrics, config))


def detect_long_parameter_list(s, metrics=None, config: DetectorConfig = DetectorConfig()):
    return LongParameterListDetector().detect(s, _ctx_for(_owning_project(s), metrics, config))


def detect_large_class(c, metrics=None, config: DetectorConfig = DetectorConfig()):
    return LargeClassDetector().detect(c, _ctx_for(_owning_project(c), metrics, config))


def detect_god_class(c, metrics=None, config: DetectorConfig = DetectorConfig()):
    return GodClassDetector().detect(c, _ctx_for(_owning_project(c), metrics, config))


def detect_swiss_army_knife(c, metrics=None, config: DetectorConfig = DetectorConfig()):
    return SwissArmyKnifeDetector().detect(c, _ctx_for(_owning_project(c), metrics, config))


def detect_functional_decomposition(c, metrics=None, config: DetectorConfig = DetectorConfig()):
    return FunctionalDecompositionDetector().detect(c, _ctx_for(_owning_project(c), metrics, config))


def detect_spaghetti_code(c, metrics=None, config: DetectorConfig = DetectorConfig()):
    return SpaghettiCodeDetector().detect(c, _ctx_for(_owning_project(c), metrics, config))


# ---------------------------------------------------------------------------
# Register
# ---------------------------------------------------------------------------


class Register:
    """Owns the detectors, collects metrics and drives both detection phases."""

    def __init__(self, config: DetectorConfig = DetectorConfig(), detectors: list[Detector] | None = None) -> None:
        self.config = config
        self.detectors = detectors if detectors is not None else default_detectors()
        self.metrics: dict[str, ProjectMetrics] = {}

    def collect(self, project: Project) -> ProjectMetrics:
        pm = ProjectMetrics(project.name)
        for s in project.all_subroutines():
            pm.subroutines[s.id] = compute_subroutine_metrics(s)
        for c in project.all_classes():
            pm.classes[c.id] = compute_class_metrics(c, is_accessor)
        return pm

    def run(self, projects: list[Project]) -> list[Finding]:
        contexts: list[DetectionContext] = []
        candidates: list[tuple[DetectionContext, Detector, Candidate]] = []
        for project in sorted(projects, key=lambda p: p.name):
            if project.name in self.metrics:
                raise ValueError(f"duplicate project name {project.name!r}")
            pm = self.collect(project)
            self.metrics[project.name] = pm
            ctx = DetectionContext(project, pm, self.config)
            contexts.append(ctx)
            subs = project.all_subroutines()
            classes = project.all_classes()
            for det in self.detectors:
                for entity in subs if det.level == "subroutine" else classes:
                    cand = det.candidate(entity, ctx)
                    if cand is not None:
                        candidates.append((ctx, det, cand))
        for ctx in contexts:
            ctx.metrics.finalize()
        findings = [f for ctx, det, cand in candidates if (f := det.confirm(cand, ctx)) is not None]
        findings.sort(key=Finding.sort_key)
        return findings


def run_detection(projects: list[Project], config: DetectorConfig = DetectorConfig()) -> list[Finding]:
    return Register(config).run(projects)


# ---------------------------------------------------------------------------
# Post-hoc audit
# ---------------------------------------------------------------------------


def _fence_ok(f: Finding, key: str) -> bool:
    v = f.evidence[key]
    return v > f.thresholds[f"{key}.median"] and v >= f.thresholds[f"{key}.fence"]


def verify_finding(f: Finding) -> list[str]:
    """Re-evaluate a finding's formula from its recorded evidence; return violated conjuncts."""
    e, t = f.evidence, f.thresholds
    bad: list[str] = []

    def need(ok: bool, label: str) -> None:
        if not ok:
            bad.append(label)

    try:
        k = f.kind
        if k is DefectKind.FeatureEnvy:
            need(e["AID"] > t["AID_min"], "AID > AID_min")
            need(e["AID"] >= t["AID.top_threshold"], "TopX%(AID)")
            if t["ALD_mode"] == "gt":
                need(e["ALD"] > t["ALD_min"], "ALD > ALD_min")
            else:
                need(e["ALD"] < t["ALD_min"], "ALD < ALD_min")
            need(e["NRC"] < t["NRC_max"], "NRC < NRC_max")
        elif k is DefectKind.DataClass:
            need(_fence_ok(f, "AOPuF") or _fence_ok(f, "AOA"), "ExtremeOutlier(AOPuF) or ExtremeOutlier(AOA)")
        elif k is DefectKind.LongMethod:
            need(_fence_ok(f, "LOC_method"), "ExtremeOutlier(LOC)")
        elif k is DefectKind.LongParameterList:
            need(_fence_ok(f, "NOP"), "ExtremeOutlier(NOP)")
        elif k is DefectKind.LargeClass:
            need(e[SIZE] == e["NMD"] + e["NAD"], "NMD+NAD consistent")
            need(_fence_ok(f, SIZE), "ExtremeOutlier(NMD+NAD)")
        elif k is DefectKind.GodClass:
            need(e["IsController"] and (e["HasControllerName"] or e["HasControllerMethods"]), "IsController")
            need(_fence_ok(f, "LOC_class"), "MildOutlier(LOC)")
            need(_fence_ok(f, "LCOM"), "MildOutlier(LCOM)")
            need(e["RDC"] > t["RDC_min"], "RDC > RDC_min")
        elif k is DefectKind.SwissArmyKnife:
            need(_fence_ok(f, "SUP"), "ExtremeOutlier(SUP)")
        elif k is DefectKind.FunctionalDecomposition:
            need(bool(e["HasProceduralName"]), "HasProceduralName")
            need(e["SUP"] == 0, "SUP = 0")
            need(e["RCOMPF"] > t["RCOMPF_min"], "RCOMPF > RCOMPF_min")
        elif k is DefectKind.SpaghettiCode:
            need(bool(e["HasProceduralName"]), "HasProceduralName")
            need(e["SUP"] == 0, "SUP = 0")
            need(bool(e["UsesGlobals"]), "UsesGlobals")
            need(e["LongestMethodLOC"] >= t["LOC_method.top_threshold"], "HasLongMethod")
            need(e["MNP"] >= t["MNP.top_threshold"], "TopX%(MNP)")
    except KeyError as exc:
        bad.append(f"missing evidence {exc.args[0]}")
    return bad


def lexicon_from_names(controller: Iterable[str] | None, procedural: Iterable[str] | None) -> NameLexicon:
    return NameLexicon(
        tuple(controller) if controller is not None else DEFAULT_CONTROLLER_WORDS,
        tuple(procedural) if procedural is not None else DEFAULT_PROCEDURAL_WORDS,
    )


__all__ = [
    "ANTIPATTERNS",
    "Candidate",
    "DefectKind",
    "DetectorConfig",
    "DetectorThresholds",
    "Finding",
    "NameLexicon",
    "Register",
    "SMELLS",
    "is_accessor",
    "is_controller_name",
    "is_procedural_name",
    "number_of_parameters",
    "run_detection",
    "verify_finding",
]
