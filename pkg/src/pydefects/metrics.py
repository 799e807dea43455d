"""Integer metrics, per-project distributions and marginal filters.

Outlier filters are one-sided: a value qualifies when it lies at least
``factor * IQR`` above the fence base (the median by default) and strictly
above the median. Quartiles use Tukey's hinges and are kept as exact
fractions.
"""

from __future__ import annotations

import csv
import io
import math
from bisect import bisect_left
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .model import ClassEntity, Project, SubroutineEntity


class MetricId(str, Enum):
    LOC_method = "LOC_method"
    LOC_class = "LOC_class"
    NOP = "NOP"
    AID = "AID"
    ALD = "ALD"
    NRC = "NRC"
    AOPuF = "AOPuF"
    AOPrF = "AOPrF"
    AOA = "AOA"
    NMD = "NMD"
    NAD = "NAD"
    LCOM = "LCOM"
    SUP = "SUP"
    MNP = "MNP"

    def __str__(self) -> str:
        return self.value


SUBROUTINE_METRICS = (MetricId.LOC_method, MetricId.NOP, MetricId.AID, MetricId.ALD, MetricId.NRC)
CLASS_METRICS = (
    MetricId.LOC_class,
    MetricId.NMD,
    MetricId.NAD,
    MetricId.AOPuF,
    MetricId.AOPrF,
    MetricId.AOA,
    MetricId.LCOM,
    MetricId.SUP,
    MetricId.MNP,
)

# composite populations: the sum is its own distribution
SIZE = "NMD+NAD"
COMPOSITES: dict[str, tuple[MetricId, ...]] = {SIZE: (MetricId.NMD, MetricId.NAD)}


class EmptyDistributionError(ValueError):
    pass


@dataclass(frozen=True)
class MetricSample:
    entity_id: str
    metric: MetricId
    value: int

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError(f"negative metric value {self.value} for {self.entity_id}")


@dataclass(frozen=True)
class FilterSpec:
    kind: str  # MildOutlier | ExtremeOutlier | TopXPercent
    x: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("MildOutlier", "ExtremeOutlier", "TopXPercent"):
            raise ValueError(f"unknown filter kind {self.kind!r}")
        if self.kind == "TopXPercent" and (self.x is None or not 0 < self.x <= 100):
            raise ValueError("TopXPercent needs 0 < X <= 100")


@dataclass(frozen=True)
class FilterSettings:
    fence_base: str = "median"  # or "q3"
    mild_factor: float = 1.5
    extreme_factor: float = 3.0

    def __post_init__(self) -> None:
        if self.fence_base not in ("median", "q3"):
            raise ValueError("fence_base must be 'median' or 'q3'")
        if self.mild_factor <= 0 or self.extreme_factor <= 0:
            raise ValueError("outlier factors must be positive")


DEFAULT_FILTERS = FilterSettings()


def _median(values: Sequence[int]) -> Fraction:
    n = len(values)
    mid = n // 2
    if n % 2:
        return Fraction(values[mid])
    return Fraction(values[mid - 1] + values[mid], 2)


def quartiles(values: Sequence[int]) -> tuple[Fraction, Fraction, Fraction]:
    """Tukey hinges ``(Q1, median, Q3)`` of an ascending sequence."""
    n = len(values)
    if n == 0:
        raise EmptyDistributionError("quartiles of an empty population")
    if n == 1:
        v = Fraction(values[0])
        return v, v, v
    half = n // 2
    lower = values[:half]
    upper = values[half + (n % 2) :]
    return _median(lower), _median(values), _median(upper)


class MetricDistribution:
    """Sorted population of one metric within one project."""

    def __init__(self, project: str, metric: str, values: Iterable[int]) -> None:
        self.project = project
        self.metric = str(metric)
        self.values: list[int] = sorted(values)
        self.n = len(self.values)
        if self.n:
            self.q1, self.median, self.q3 = quartiles(self.values)
        else:
            self.q1 = self.median = self.q3 = Fraction(0)
        self.iqr = self.q3 - self.q1
        self._fences: dict[tuple[float, str], Fraction] = {}
        self._tops: dict[float, int] = {}

    def __repr__(self) -> str:
        return f"MetricDistribution({self.project!r}, {self.metric!r}, n={self.n})"

    def _require(self) -> None:
        if not self.n:
            raise EmptyDistributionError(f"{self.metric} distribution of {self.project!r} is empty")

    def outlier_fence(self, factor: float, settings: FilterSettings = DEFAULT_FILTERS) -> Fraction:
        key = (factor, settings.fence_base)
        fence = self._fences.get(key)
        if fence is None:
            self._require()
            base = self.median if settings.fence_base == "median" else self.q3
            fence = self._fences[key] = base + Fraction(factor) * self.iqr
        return fence

    def top_threshold(self, x: float) -> int:
        """The k-th largest value, k = ceil(n * X / 100)."""
        top = self._tops.get(x)
        if top is None:
            self._require()
            if not 0 < x <= 100:
                raise ValueError("X must satisfy 0 < X <= 100")
            k = math.ceil(Fraction(self.n) * Fraction(x) / 100)
            top = self._tops[x] = self.values[self.n - k]
        return top

    def rank_above(self, v: int) -> int:
        """How many population values are strictly greater than ``v``."""
        return self.n - bisect_left(self.values, v + 1)


def is_outlier(v: int, d: MetricDistribution, factor: float, settings: FilterSettings = DEFAULT_FILTERS) -> bool:
    return v > d.median and v >= d.outlier_fence(factor, settings)


def is_mild_outlier(v: int, d: MetricDistribution, settings: FilterSettings = DEFAULT_FILTERS) -> bool:
    return is_outlier(v, d, settings.mild_factor, settings)


def is_extreme_outlier(v: int, d: MetricDistribution, settings: FilterSettings = DEFAULT_FILTERS) -> bool:
    return is_outlier(v, d, settings.extreme_factor, settings)


def top_x_percent(v: int, d: MetricDistribution, x: float) -> bool:
    return v >= d.top_threshold(x)


def apply_filter(spec: FilterSpec, v: int, d: MetricDistribution, settings: FilterSettings = DEFAULT_FILTERS) -> bool:
    if spec.kind == "MildOutlier":
        return is_mild_outlier(v, d, settings)
    if spec.kind == "ExtremeOutlier":
        return is_extreme_outlier(v, d, settings)
    return top_x_percent(v, d, spec.x)  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# Metric computation
# ---------------------------------------------------------------------------


def number_of_parameters(s: SubroutineEntity) -> int:
    return len(s.parameters) - (1 if s.receiver is not None else 0)


def compute_subroutine_metrics(s: SubroutineEntity) -> dict[MetricId, int]:
    own = {r.name for r in s.referenced_variables if r.resolution == "own_field"}
    foreign = {(r.owner.id, r.name) for r in s.referenced_variables if r.resolution == "foreign_field" and r.owner}
    return {
        MetricId.LOC_method: s.module.tree.loc(*s.span),
        MetricId.NOP: number_of_parameters(s),
        MetricId.AID: len(foreign),
        MetricId.ALD: len(own),
        MetricId.NRC: len({owner for owner, _ in foreign}),
    }


def lcom(c: ClassEntity) -> int:
    """Chidamber-Kemerer LCOM: non-sharing method pairs minus sharing pairs, floored at 0."""
    used = [m.own_fields_used() for m in c.methods]
    p = q = 0
    for i in range(len(used)):
        for j in range(i + 1, len(used)):
            if used[i] & used[j]:
                q += 1
            else:
                p += 1
    return max(0, p - q)


def superclass_count(c: ClassEntity) -> int:
    return sum(1 for b in c.base_names if b.strip() != "object")


def compute_class_metrics(c: ClassEntity, is_accessor: Callable[[SubroutineEntity], bool]) -> dict[MetricId, int]:
    fields = c.fields.values()
    properties = {m.name for m in c.methods if m.is_property}
    return {
        MetricId.LOC_class: c.module.tree.loc(*c.span),
        MetricId.NMD: sum(1 for m in c.methods if m.is_concrete),
        MetricId.NAD: len(set(c.fields) | properties),
        MetricId.AOPuF: sum(1 for f in fields if f.visibility == "public"),
        MetricId.AOPrF: sum(1 for f in fields if f.visibility == "private"),
        MetricId.AOA: sum(1 for m in c.methods if is_accessor(m)),
        MetricId.LCOM: lcom(c),
        MetricId.SUP: superclass_count(c),
        MetricId.MNP: sum(1 for m in c.methods if number_of_parameters(m) == 0),
    }


@dataclass
class ProjectMetrics:
    """All samples of one project and, once finalized, its distributions."""

    project: str
    subroutines: dict[str, dict[MetricId, int]] = field(default_factory=dict)
    classes: dict[str, dict[MetricId, int]] = field(default_factory=dict)
    distributions: dict[str, MetricDistribution] = field(default_factory=dict)
    finalized: bool = False

    def finalize(self) -> None:
        pops: dict[str, list[int]] = defaultdict(list)
        for values in self.subroutines.values():
            for metric, v in values.items():
                pops[metric.value].append(v)
        for values in self.classes.values():
            for metric, v in values.items():
                pops[metric.value].append(v)
            for name, parts in COMPOSITES.items():
                pops[name].append(sum(values[p] for p in parts))
        self.distributions = {name: MetricDistribution(self.project, name, vals) for name, vals in pops.items()}
        self.finalized = True

    def distribution(self, metric: MetricId | str) -> MetricDistribution:
        key = metric.value if isinstance(metric, MetricId) else metric
        if key not in self.distributions:
            return MetricDistribution(self.project, key, [])
        return self.distributions[key]

    def samples(self) -> list[MetricSample]:
        out = [MetricSample(eid, m, v) for eid, vals in self.subroutines.items() for m, v in vals.items()]
        out += [MetricSample(eid, m, v) for eid, vals in self.classes.items() for m, v in vals.items()]
        return out


def collect_project_metrics(project: Project, is_accessor: Callable[[SubroutineEntity], bool]) -> ProjectMetrics:
    pm = ProjectMetrics(project.name)
    for s in project.all_subroutines():
        pm.subroutines[s.id] = compute_subroutine_metrics(s)
    for c in project.all_classes():
        pm.classes[c.id] = compute_class_metrics(c, is_accessor)
    pm.finalize()
    return pm


def metrics_csv(store: Iterable[ProjectMetrics]) -> str:
    rows = []
    for pm in store:
        for eid, vals in pm.subroutines.items():
            rows.extend((pm.project, "subroutine", eid, m.value, str(v)) for m, v in vals.items())
        for eid, vals in pm.classes.items():
            rows.extend((pm.project, "class", eid, m.value, str(v)) for m, v in vals.items())
    rows.sort()
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["project", "entity_kind", "entity_path", "metric", "value"])
    writer.writerows(rows)
    return buf.getvalue()
