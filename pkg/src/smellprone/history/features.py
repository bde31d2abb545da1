"""Per-(release, class) history features and change-proneness labels."""

from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from ..errors import SchemaError
from ..metrics.table import format_number, parse_number
from .antipattern import LONGEST, antipattern_metrics
from .changes import (
    EVOLUTION_FEATURES,
    ChangeCounter,
    change_counts,
    compute_evolution_metrics,
    label_change_proneness,
    line_delta_counter,
)
from .ingest import ChangeHistory
from .scattering import ScatteringFeatures, TextualIndex, window_scattering

SCATTERING_FEATURES = ("str_scat_pred", "sem_scat_pred")
ANTIPATTERN_FEATURES = ("ANA", "ACM", "ARL")
HISTORY_FEATURES = EVOLUTION_FEATURES + SCATTERING_FEATURES + ANTIPATTERN_FEATURES
HISTORY_HEADER = ("release", "class") + HISTORY_FEATURES + ("change_count", "label")


@dataclass
class ReleaseSnapshot:
    """What the miner needs to know about one release."""

    release: str
    packages: dict[str, tuple[str, ...]]
    token_bags: dict[str, Counter] = field(default_factory=dict)
    loc: dict[str, int] = field(default_factory=dict)
    smell_counts: dict[str, int] = field(default_factory=dict)

    @property
    def classes(self) -> set[str]:
        return set(self.packages)


def mine_history_features(snapshots: Sequence[ReleaseSnapshot], histories: Sequence[ChangeHistory],
                          counter: ChangeCounter = line_delta_counter,
                          arl_mode: str = LONGEST) -> list[dict]:
    """Feature rows for every release that has a following window to label it.

    ``histories[w - 1]`` is the window ending at release ``w``; the label of
    release ``r`` comes from ``histories[r]``, the window that follows it, so
    features never see the changes they are asked to predict.
    """
    present = [s.classes for s in snapshots]
    rows = []
    for r, snap in enumerate(snapshots, start=1):
        if r >= len(histories):
            break
        past = histories[:r]
        index = TextualIndex(snap.token_bags)
        scat = window_scattering(past[-1], snap.packages, index)
        future = change_counts(histories[r], counter)
        counts = {c: future.get(c, 0) for c in sorted(snap.classes)}
        labels = {lab.cls: lab for lab in label_change_proneness(counts)}
        loc_by_release = {}
        for cls in sorted(snap.classes):
            for w in range(1, r + 1):
                loc_by_release[w] = snapshots[w - 1].loc.get(cls, snap.loc.get(cls, 0))
            evo = compute_evolution_metrics(past, cls, present[:r], dict(loc_by_release), counter)
            timeline = [snapshots[w - 1].smell_counts.get(cls, 0) for w in range(1, r + 1)]
            anti = antipattern_metrics(cls, timeline, past, arl_mode, counter)
            sc = scat.get(cls, ScatteringFeatures())
            row = {"release": snap.release, "class": cls}
            row.update(evo.as_dict())
            row.update(str_scat_pred=sc.str_scat_pred, sem_scat_pred=sc.sem_scat_pred,
                       ANA=anti.ANA, ACM=anti.ACM, ARL=anti.ARL)
            row["change_count"] = labels[cls].change_count
            row["label"] = labels[cls].label
            rows.append(row)
    return rows


def write_history_features(path, rows: Iterable[Mapping]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(HISTORY_HEADER)
        for row in rows:
            out = [row["release"], row["class"]]
            out += [format_number(row[f]) for f in HISTORY_FEATURES]
            out += [format_number(row["change_count"]), "1" if row["label"] else "0"]
            w.writerow(out)


def read_history_features(path) -> list[dict]:
    rows = []
    with Path(path).open(encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != HISTORY_HEADER:
            raise SchemaError(f"{path}: unexpected history feature header", row=1)
        for rowno, cells in enumerate(reader, start=2):
            if not cells:
                continue
            row = {"release": cells[0], "class": cells[1]}
            for name, cell in zip(HISTORY_HEADER[2:], cells[2:]):
                try:
                    row[name] = parse_number(cell)
                except ValueError:
                    raise SchemaError("non-numeric value", row=rowno, column=name) from None
            row["label"] = bool(row["label"])
            rows.append(row)
    return rows
