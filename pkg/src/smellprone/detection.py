"""Metric-threshold detection strategies for six code smells."""

from __future__ import annotations

import json
import math
import operator
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple

from .errors import ContractViolation, IncompleteVectorError, SchemaError
from .metrics.model import CLASS, METHOD, EntityMetricVector

GOD_CLASS = "GodClass"
DATA_CLASS = "DataClass"
BRAIN_METHOD = "BrainMethod"
SHOTGUN_SURGERY = "ShotgunSurgery"
DISPERSED_COUPLING = "DispersedCoupling"
MESSAGE_CHAINS = "MessageChains"

SMELL_KINDS = (GOD_CLASS, DATA_CLASS, BRAIN_METHOD, SHOTGUN_SURGERY,
               DISPERSED_COUPLING, MESSAGE_CHAINS)

GRANULARITY = {
    GOD_CLASS: CLASS,
    DATA_CLASS: CLASS,
    BRAIN_METHOD: METHOD,
    SHOTGUN_SURGERY: METHOD,
    DISPERSED_COUPLING: METHOD,
    MESSAGE_CHAINS: METHOD,
}

GE, LE = ">=", "<="
_OPS = {GE: operator.ge, LE: operator.le}

# Disjunctive normal form, disjuncts in printed order: kind -> [[(metric, op, value)]]
DEFAULT_STRATEGIES: dict[str, list[list[tuple[str, str, float]]]] = {
    GOD_CLASS: [[("LOCNAMM", GE, 176), ("WMCNAMM", GE, 22), ("NOMNAMM", GE, 18),
                 ("TCC", LE, 0.33), ("ATFD", GE, 6)]],
    DATA_CLASS: [[("WMCNAMM", LE, 14), ("WOC", LE, 0.33), ("NOAM", GE, 4), ("NOPA", GE, 3)]],
    BRAIN_METHOD: [[("LOC", GE, 33), ("CYCLO", GE, 7), ("MAXNESTING", GE, 6)],
                   [("NOLV", GE, 6), ("ATLD", GE, 5)]],
    SHOTGUN_SURGERY: [[("CC", GE, 5), ("CM", GE, 6), ("FANOUT", GE, 3)]],
    DISPERSED_COUPLING: [[("CINT", GE, 8), ("CDISP", GE, 0.66)]],
    MESSAGE_CHAINS: [[("MaMCL", GE, 3)], [("NMCS", GE, 3), ("MeMCL", GE, 2)]],
}

_UNIT_METRICS = frozenset({"TCC", "WOC", "CDISP"})


class Predicate(NamedTuple):
    metric: str
    op: str
    threshold: float


class SatisfiedPredicate(NamedTuple):
    metric: str
    actual: float
    threshold: float
    op: str


@dataclass
class ThresholdConfig:
    """Per-predicate comparison and threshold; defaults are the published ones."""

    predicates: dict[tuple[str, str], Predicate] = field(default_factory=dict)

    def __post_init__(self):
        if not self.predicates:
            self.predicates = {
                (kind, metric): Predicate(metric, op, value)
                for kind, disjuncts in DEFAULT_STRATEGIES.items()
                for conj in disjuncts for metric, op, value in conj
            }
        self.validate()

    def validate(self) -> None:
        expected = {(k, m) for k, d in DEFAULT_STRATEGIES.items() for c in d for m, _, _ in c}
        if set(self.predicates) != expected:
            raise ContractViolation("threshold config must cover exactly the strategy predicates")
        for (kind, metric), p in self.predicates.items():
            if p.op not in _OPS:
                raise ContractViolation(f"{kind}.{metric}: unknown comparison {p.op!r}")
            if not math.isfinite(p.threshold):
                raise ContractViolation(f"{kind}.{metric}: threshold must be finite")
            if metric in _UNIT_METRICS and not 0 <= p.threshold <= 1:
                raise ContractViolation(f"{kind}.{metric}: threshold must lie in [0, 1]")

    def strategy(self, kind: str) -> list[list[Predicate]]:
        return [[self.predicates[(kind, m)] for m, _, _ in conj]
                for conj in DEFAULT_STRATEGIES[kind]]

    def with_overrides(self, overrides: Mapping[str, Mapping]) -> "ThresholdConfig":
        preds = dict(self.predicates)
        for key, spec in overrides.items():
            kind, _, metric = key.partition(".")
            if (kind, metric) not in preds:
                raise SchemaError(f"unknown threshold key {key!r}")
            try:
                op = spec.get("op", preds[(kind, metric)].op)
                value = float(spec["value"])
            except (KeyError, TypeError, ValueError, AttributeError):
                raise SchemaError(f"threshold {key!r} needs a numeric 'value'") from None
            preds[(kind, metric)] = Predicate(metric, op, value)
        return ThresholdConfig(preds)

    @classmethod
    def load(cls, path=None) -> "ThresholdConfig":
        """Defaults overridden by the JSON file at `path` (if given)."""
        base = cls()
        if path is None:
            return base
        with Path(path).open(encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise SchemaError("threshold file must hold a JSON object")
        return base.with_overrides(data)

    def to_json(self) -> dict:
        return {f"{k}.{m}": {"op": p.op, "value": p.threshold}
                for (k, m), p in sorted(self.predicates.items())}


@dataclass
class SmellInstance:
    kind: str
    entity: str
    owner: str
    satisfied_predicates: tuple[SatisfiedPredicate, ...]
    intensity: float | None = None


def evaluate_strategy(kind: str, v: EntityMetricVector,
                      t: ThresholdConfig) -> tuple[SatisfiedPredicate, ...] | None:
    """Satisfied predicates of the first true disjunct, or None."""
    if GRANULARITY[kind] != v.kind:
        raise ContractViolation(f"{kind} applies to {GRANULARITY[kind]} entities, got {v.kind}")
    disjuncts = t.strategy(kind)
    for conj in disjuncts:
        for p in conj:
            if v.get(p.metric) is None:
                raise IncompleteVectorError(p.metric, v.qualified_name)
    for conj in disjuncts:
        hits = []
        for p in conj:
            actual = v[p.metric]
            if not _OPS[p.op](actual, p.threshold):
                break
            hits.append(SatisfiedPredicate(p.metric, actual, p.threshold, p.op))
        else:
            return tuple(hits)
    return None


def detect_smells(release: Iterable[EntityMetricVector],
                  t: ThresholdConfig | None = None) -> list[SmellInstance]:
    """Every (entity, kind) whose strategy holds, in input order."""
    t = t or ThresholdConfig()
    release = list(release)
    if not release:
        raise ContractViolation("release has no metric vectors")
    found = []
    for v in release:
        for kind in SMELL_KINDS:
            if GRANULARITY[kind] != v.kind:
                continue
            hits = evaluate_strategy(kind, v, t)
            if hits is not None:
                found.append(SmellInstance(kind, v.qualified_name, v.owner, hits))
    return found
