"""Metrics CSV: one row per entity, one column per metric slot."""

from __future__ import annotations

import csv
import re
import warnings
from pathlib import Path
from typing import Iterable

from ..errors import SchemaError
from .model import CLASS, METHOD, METRIC_NAMES, EntityMetricVector

KEY_COLUMNS = ("release", "entity_kind", "qualified_name", "package")
HEADER = KEY_COLUMNS + METRIC_NAMES

_INT = re.compile(r"^[+-]?\d+$")


def format_number(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def parse_number(cell: str):
    cell = cell.strip()
    if cell == "":
        return None
    if _INT.match(cell):
        return int(cell)
    return float(cell)


def write_metrics_table(vectors: Iterable[EntityMetricVector], path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(HEADER)
        for v in vectors:
            writer.writerow([v.release, v.kind, v.qualified_name, v.package]
                            + [format_number(v.values.get(m)) for m in METRIC_NAMES])


def load_metrics_table(path) -> dict[str, list[EntityMetricVector]]:
    """Read a metrics CSV into release -> vectors (file order preserved).

    Row numbers in errors count the header as row 1.
    """
    path = Path(path)
    out: dict[str, list[EntityMetricVector]] = {}
    with path.open(encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: missing header row", row=1) from None
        unknown = [c for c in header if c not in HEADER]
        if unknown:
            raise SchemaError(f"unknown column {unknown[0]!r}", row=1, column=unknown[0])
        missing = [c for c in HEADER if c not in header]
        if missing:
            raise SchemaError(f"missing column {missing[0]!r}", row=1, column=missing[0])
        col = {name: header.index(name) for name in HEADER}
        for rowno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise SchemaError(f"expected {len(header)} cells, found {len(row)}", row=rowno)
            kind = row[col["entity_kind"]]
            if kind not in (CLASS, METHOD):
                raise SchemaError(f"bad entity kind {kind!r}", row=rowno, column="entity_kind")
            values = {}
            for metric in METRIC_NAMES:
                cell = row[col[metric]]
                try:
                    values[metric] = parse_number(cell)
                except ValueError:
                    raise SchemaError(f"non-numeric value {cell!r}", row=rowno, column=metric) from None
            release = row[col["release"]]
            out.setdefault(release, []).append(EntityMetricVector(
                release, kind, row[col["qualified_name"]], row[col["package"]], values))
    if not out:
        warnings.warn(f"{path}: metrics table has no data rows", stacklevel=2)
    return out
