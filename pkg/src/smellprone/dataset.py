"""Labeled per-release datasets for each model specification."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping

import numpy as np

from .errors import ContractViolation, EmptyDatasetError, JoinError, SchemaError
from .history.changes import EVOLUTION_FEATURES
from .history.features import ANTIPATTERN_FEATURES, SCATTERING_FEATURES
from .metrics.table import format_number, parse_number

SM, PM, DCBM, COMBINED = "SM", "PM", "DCBM", "COMBINED"
BASES = (SM, PM, DCBM, COMBINED)
NONE, INTENSITY, ANTIPATTERN, BOTH = "none", "intensity", "antipattern", "intensity+antipattern"
AUGMENTATIONS = (NONE, INTENSITY, ANTIPATTERN, BOTH)

SM_FEATURES = ("CBO", "RFC", "DIT", "LCOM", "LOC")
PM_FEATURES = EVOLUTION_FEATURES
DCBM_FEATURES = SCATTERING_FEATURES
INTENSITY_FEATURES = ("intensity",)
# Process metrics kept after collinearity filtering of the process model on
# the original corpus; the combined model starts from these 18 candidates.
PM_RETAINED = ("BOC", "FRCH", "WCD", "TACH", "LCA", "CSB", "CHO")
COMBINED_FEATURES = (SM_FEATURES + PM_RETAINED + DCBM_FEATURES
                     + INTENSITY_FEATURES + ANTIPATTERN_FEATURES)

_BASE_FEATURES = {SM: SM_FEATURES, PM: PM_FEATURES, DCBM: DCBM_FEATURES,
                  COMBINED: COMBINED_FEATURES}
_EXTRA = {NONE: (), INTENSITY: INTENSITY_FEATURES, ANTIPATTERN: ANTIPATTERN_FEATURES,
          BOTH: INTENSITY_FEATURES + ANTIPATTERN_FEATURES}


@dataclass(frozen=True)
class ModelSpec:
    base: str
    augmentation: str = NONE

    def __post_init__(self):
        if self.base not in BASES:
            raise ContractViolation(f"unknown model base {self.base!r}")
        if self.augmentation not in AUGMENTATIONS:
            raise ContractViolation(f"unknown augmentation {self.augmentation!r}")

    @property
    def features(self) -> tuple[str, ...]:
        out = list(_BASE_FEATURES[self.base])
        out += [f for f in _EXTRA[self.augmentation] if f not in out]
        return tuple(out)

    @property
    def label(self) -> str:
        return f"{self.base}+{self.augmentation}"

    @classmethod
    def parse(cls, text: str) -> "ModelSpec":
        base, _, aug = text.strip().partition("+")
        return cls(base, aug or NONE)

    def __str__(self) -> str:
        return self.label


@dataclass
class FeatureRow:
    release: str
    cls: str
    values: dict[str, float | None]
    label: bool
    is_smelly: bool = False

    @property
    def key(self) -> tuple[str, str]:
        return (self.release, self.cls)


@dataclass
class Dataset:
    spec: ModelSpec
    features: list[str]
    rows: list[FeatureRow]
    provenance: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)

    def matrix(self) -> tuple[np.ndarray, np.ndarray]:
        X = np.array([[float(r.values[f]) for f in self.features] for r in self.rows],
                     dtype=float).reshape(len(self.rows), len(self.features))
        y = np.array([r.label for r in self.rows], dtype=bool)
        return X, y

    def releases(self) -> list[str]:
        seen = []
        for r in self.rows:
            if r.release not in seen:
                seen.append(r.release)
        return seen

    def subset(self, rows=None, features=None, note: str | None = None) -> "Dataset":
        feats = list(features) if features is not None else list(self.features)
        new_rows = [FeatureRow(r.release, r.cls, {f: r.values[f] for f in feats}, r.label, r.is_smelly)
                    for r in (rows if rows is not None else self.rows)]
        prov = self.provenance + ([note] if note else [])
        return Dataset(self.spec, feats, new_rows, prov)


def _value(source, name: str):
    if source is None:
        return None
    if hasattr(source, "values") and not isinstance(source, Mapping):
        source = source.values
    v = source.get(name) if isinstance(source, Mapping) else getattr(source, name, None)
    return v


def assemble_dataset(spec: ModelSpec, metrics: Mapping, intensities: Mapping,
                     history_features: Mapping, labels: Mapping) -> Dataset:
    """Join every source on (release, class); one row per key of `labels`.

    `metrics` values may be EntityMetricVector or plain mappings;
    `intensities` values are numbers or objects with a ``value``.
    """
    keys = set(metrics) | set(intensities) | set(history_features) | set(labels)
    orphans = {k for k in keys
               if not (k in metrics and k in intensities and k in history_features and k in labels)}
    if orphans:
        raise JoinError(orphans)
    rows = []
    for key in labels:
        release, cls = key
        inten = intensities[key]
        inten = float(getattr(inten, "value", inten))
        values = {}
        for f in spec.features:
            if f == "intensity":
                values[f] = inten
            elif f in SM_FEATURES:
                values[f] = _value(metrics[key], f)
            else:
                values[f] = _value(history_features[key], f)
        rows.append(FeatureRow(release, cls, values, bool(labels[key]), inten > 0))
    return Dataset(spec, list(spec.features), rows)


def _missing(v) -> bool:
    return v is None or (isinstance(v, float) and math.isnan(v))


def _clean_once(d: Dataset) -> tuple[Dataset, list[str]]:
    notes = []
    rows = []
    for r in d.rows:
        if any(_missing(r.values[f]) for f in d.features):
            notes.append(f"row {r.release}:{r.cls}: missing value")
        else:
            rows.append(r)
    feats = []
    for f in d.features:
        if len({r.values[f] for r in rows}) <= 1:
            notes.append(f"feature {f}: constant")
        else:
            feats.append(f)
    kept, columns = [], {}
    for f in feats:
        col = tuple(r.values[f] for r in rows)
        if col in columns:
            notes.append(f"feature {f}: duplicate of {columns[col]}")
        else:
            columns[col] = f
            kept.append(f)
    feats = kept
    vec = lambda r: tuple(r.values[f] for f in feats)
    labels_of: dict[tuple, set] = {}
    for r in rows:
        labels_of.setdefault(vec(r), set()).add(r.label)
    survivors, seen = [], set()
    for r in rows:
        v = vec(r)
        if len(labels_of[v]) > 1:
            notes.append(f"row {r.release}:{r.cls}: conflicting label")
        elif v in seen:
            notes.append(f"row {r.release}:{r.cls}: duplicate")
        else:
            seen.add(v)
            survivors.append(r)
    if not notes:
        return d, notes
    new_rows = [FeatureRow(r.release, r.cls, {f: r.values[f] for f in feats}, r.label, r.is_smelly)
                for r in survivors]
    return Dataset(d.spec, feats, new_rows, d.provenance + notes), notes


def clean_dataset(d: Dataset) -> Dataset:
    """Remove missing, constant, duplicate and conflicting data until nothing changes."""
    while True:
        d, notes = _clean_once(d)
        if not d.rows:
            raise EmptyDatasetError("cleaning removed every row")
        if not notes:
            return d


def _dumps(d: Dataset) -> str:
    buf = io.StringIO()
    buf.write(f"# spec={d.spec.label}\n")
    for note in d.provenance:
        buf.write(f"# provenance: {note}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["release", "class", *d.features, "is_smelly", "label"])
    for r in d.rows:
        w.writerow([r.release, r.cls, *(format_number(r.values[f]) for f in d.features),
                    int(r.is_smelly), int(r.label)])
    return buf.getvalue()


def write_dataset(d: Dataset, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(_dumps(d), encoding="utf-8")


def read_dataset(path) -> Dataset:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or not any(line.strip() for line in lines):
        raise EmptyDatasetError(f"{path} is empty")
    if not lines[0].startswith("# spec="):
        raise SchemaError("first line must be '# spec=<base>+<augmentation>'", row=1)
    try:
        spec = ModelSpec.parse(lines[0][len("# spec="):])
    except ContractViolation as exc:
        raise SchemaError(str(exc), row=1) from None
    provenance, i = [], 1
    while i < len(lines) and lines[i].startswith("#"):
        provenance.append(lines[i].partition("# provenance: ")[2])
        i += 1
    reader = csv.reader(lines[i:])
    header = next(reader, None)
    if header is None or header[:2] != ["release", "class"] or header[-2:] != ["is_smelly", "label"]:
        raise SchemaError("bad dataset header", row=i + 1)
    features = header[2:-2]
    allowed = set(spec.features)
    for f in features:
        if f not in allowed:
            raise SchemaError(f"unknown feature column {f!r}", row=i + 1, column=f)
    rows = []
    for rowno, cells in enumerate(reader, start=i + 2):
        if not cells:
            continue
        if len(cells) != len(header):
            raise SchemaError(f"expected {len(header)} cells", row=rowno)
        values = {}
        for f, cell in zip(features, cells[2:-2]):
            try:
                values[f] = parse_number(cell)
            except ValueError:
                raise SchemaError(f"non-numeric value {cell!r}", row=rowno, column=f) from None
        flags = cells[-2:]
        if any(c not in ("0", "1") for c in flags):
            raise SchemaError("is_smelly/label must be 0 or 1", row=rowno)
        rows.append(FeatureRow(cells[0], cells[1], values, flags[1] == "1", flags[0] == "1"))
    if not rows:
        raise EmptyDatasetError(f"{path} has no rows")
    return Dataset(spec, features, rows, provenance)
