"""Severity of detected smells, aggregated into one value per class.

Each satisfied predicate is placed between its threshold and the most
extreme value observed in the release, the placement is mapped onto
[1, 10], and a smell's intensity is the mean over its predicates. A class
takes the maximum over the smells it (or any of its methods) carries, and
0 when it carries none.
"""

from __future__ import annotations

import bisect
import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .detection import GE, LE, GRANULARITY, ThresholdConfig, SmellInstance
from .errors import ConsistencyError, ContractViolation
from .metrics.model import CLASS, EntityMetricVector

LINEAR, RANK = "linear", "rank"
AFFINE, PRINTED = "affine", "printed"


@dataclass(frozen=True)
class IntensityConfig:
    placement: str = LINEAR  # or RANK
    scale: str = AFFINE      # 1 + 9p; PRINTED gives 10p

    def __post_init__(self):
        if self.placement not in (LINEAR, RANK):
            raise ContractViolation(f"unknown placement mode {self.placement!r}")
        if self.scale not in (AFFINE, PRINTED):
            raise ContractViolation(f"unknown scale {self.scale!r}")


@dataclass(frozen=True)
class MetricDistribution:
    metric: str
    values: tuple[float, ...]

    def __post_init__(self):
        if not self.values:
            raise ContractViolation(f"empty distribution for {self.metric}")
        object.__setattr__(self, "values", tuple(sorted(self.values)))

    @property
    def min(self) -> float:
        return self.values[0]

    @property
    def max(self) -> float:
        return self.values[-1]


@dataclass
class ClassIntensity:
    qualified_name: str
    value: float
    kinds: tuple[str, ...] = field(default_factory=tuple)


def _satisfied(actual, threshold, direction) -> bool:
    if direction == GE:
        return actual >= threshold
    if direction == LE:
        return actual <= threshold
    raise ContractViolation(f"unknown direction {direction!r}")


def exceeding_placement(actual: float, threshold: float, direction: str,
                        dist: MetricDistribution, mode: str = LINEAR) -> float:
    """Where `actual` sits between the threshold and the observed extreme, in [0, 1]."""
    if not _satisfied(actual, threshold, direction):
        raise ContractViolation(f"{dist.metric}: {actual} {direction} {threshold} does not hold")
    if mode == RANK:
        vals = dist.values
        if direction == GE:
            lo = bisect.bisect_right(vals, threshold)
            span = len(vals) - lo
            reached = bisect.bisect_right(vals, actual) - lo
        else:
            hi = bisect.bisect_left(vals, threshold)
            span = hi
            reached = hi - bisect.bisect_left(vals, actual)
        if span <= 0:
            return 1.0
        return min(max(reached / span, 0.0), 1.0)
    if direction == GE:
        if dist.max > threshold:
            return min((actual - threshold) / (dist.max - threshold), 1.0)
        return 1.0
    if dist.min < threshold:
        return min((threshold - actual) / (threshold - dist.min), 1.0)
    return 1.0


def normalize_exceed(placement: float, scale: str = AFFINE) -> float:
    if not 0.0 <= placement <= 1.0:
        raise ContractViolation(f"placement {placement} outside [0, 1]")
    if scale == PRINTED:
        return 10.0 * placement
    return 1.0 + 9.0 * placement


def instance_intensity(instance: SmellInstance, dists: Mapping[str, MetricDistribution],
                       config: IntensityConfig = IntensityConfig()) -> float:
    scores = []
    for pred in instance.satisfied_predicates:
        dist = dists.get(pred.metric)
        if dist is None:
            raise ConsistencyError(f"no distribution for metric {pred.metric}")
        p = exceeding_placement(pred.actual, pred.threshold, pred.op, dist, config.placement)
        scores.append(normalize_exceed(p, config.scale))
    return sum(scores) / len(scores)


def class_intensity(instances: Sequence[SmellInstance], dists: Mapping[str, MetricDistribution],
                    cls: str | None = None,
                    config: IntensityConfig = IntensityConfig()) -> ClassIntensity:
    """Max instance intensity of one class; 0 when it carries no smell.

    Sets ``instance.intensity`` on every instance as a side effect.
    """
    owners = {i.owner for i in instances}
    if cls is not None:
        owners.add(cls)
    if len(owners) > 1:
        raise ContractViolation(f"instances span several classes: {sorted(owners)}")
    name = cls if cls is not None else (next(iter(owners)) if owners else "")
    if not instances:
        return ClassIntensity(name, 0.0, ())
    for inst in instances:
        inst.intensity = instance_intensity(inst, dists, config)
    kinds = tuple(sorted({i.kind for i in instances}))
    return ClassIntensity(name, max(i.intensity for i in instances), kinds)


def build_distributions(vectors: Iterable[EntityMetricVector],
                        t: ThresholdConfig | None = None) -> dict[str, MetricDistribution]:
    """Per-metric release distributions for every metric a strategy references."""
    t = t or ThresholdConfig()
    wanted: dict[str, str] = {}
    for (kind, metric) in t.predicates:
        wanted[metric] = GRANULARITY[kind]
    values: dict[str, list[float]] = {m: [] for m in wanted}
    for v in vectors:
        for metric, kind in wanted.items():
            if v.kind == kind and v.get(metric) is not None:
                values[metric].append(v[metric])
    return {m: MetricDistribution(m, tuple(vals)) for m, vals in values.items() if vals}


def release_intensities(vectors: Sequence[EntityMetricVector], smells: Iterable[SmellInstance],
                        dists: Mapping[str, MetricDistribution] | None = None,
                        config: IntensityConfig = IntensityConfig(),
                        t: ThresholdConfig | None = None) -> dict[str, ClassIntensity]:
    """Intensity of every class vector in `vectors` (0 for non-smelly ones)."""
    if dists is None:
        dists = build_distributions(vectors, t)
    by_owner: dict[str, list[SmellInstance]] = {}
    for s in smells:
        by_owner.setdefault(s.owner, []).append(s)
    out = {}
    for v in vectors:
        if v.kind != CLASS:
            continue
        out[v.qualified_name] = class_intensity(by_owner.get(v.qualified_name, []), dists,
                                                cls=v.qualified_name, config=config)
    return out


INTENSITY_HEADER = ("release", "qualified_name", "intensity", "smell_kinds")


def write_intensity_csv(path, rows: Iterable[tuple[str, ClassIntensity]]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(INTENSITY_HEADER)
        for release, ci in rows:
            w.writerow([release, ci.qualified_name, repr(float(ci.value)), ";".join(ci.kinds)])


def read_intensity_csv(path) -> dict[tuple[str, str], ClassIntensity]:
    out = {}
    with Path(path).open(encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            kinds = tuple(k for k in row["smell_kinds"].split(";") if k)
            out[(row["release"], row["qualified_name"])] = ClassIntensity(
                row["qualified_name"], float(row["intensity"]), kinds)
    return out
