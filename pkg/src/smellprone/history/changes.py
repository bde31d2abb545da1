"""Change counts, change-proneness labels, change entropy and evolution metrics."""

from __future__ import annotations

import math
import statistics
from collections import Counter
from dataclasses import asdict, dataclass
from typing import Callable, Mapping, Sequence

from ..errors import ContractViolation
from .ingest import ChangeHistory, Commit, Touched

# (commit, touched entry) -> number of changes; lets a finer-grained differ plug in
ChangeCounter = Callable[[Commit, Touched], int]


def line_delta_counter(commit: Commit, touched: Touched) -> int:
    return touched.churn


def count_changes(h: ChangeHistory, cls: str, counter: ChangeCounter = line_delta_counter) -> int:
    return sum(counter(c, t) for c in h.commits for t in c.touched if t.cls == cls)


def change_counts(h: ChangeHistory, counter: ChangeCounter = line_delta_counter) -> Counter:
    counts: Counter = Counter()
    for c in h.commits:
        for t in c.touched:
            counts[t.cls] += counter(c, t)
    return counts


@dataclass(frozen=True)
class ChangePronenessLabel:
    cls: str
    change_count: int
    label: bool


def label_change_proneness(counts: Mapping[str, int]) -> list[ChangePronenessLabel]:
    """A class is change-prone when its count is strictly above the release median."""
    if not counts:
        raise ContractViolation("cannot label an empty release")
    median = statistics.median(counts.values())
    return [ChangePronenessLabel(cls, n, n > median) for cls, n in counts.items()]


def change_entropy(h: ChangeHistory, counter: ChangeCounter = line_delta_counter) -> float:
    """Shannon entropy of changes over classes, normalized by log2 of the class count."""
    counts = [n for n in change_counts(h, counter).values() if n > 0]
    if len(counts) < 2:
        return 0.0
    total = sum(counts)
    h_raw = -sum((n / total) * math.log2(n / total) for n in counts)
    return min(max(h_raw / math.log2(len(counts)), 0.0), 1.0)


EVOLUTION_FEATURES = ("BOC", "FCH", "FRCH", "LCH", "WCD", "WFR", "TACH", "ATAF", "CHD",
                      "LCA", "LCD", "CSB", "CSBS", "ACDF", "CHO")


@dataclass(frozen=True)
class EvolutionFeatures:
    BOC: int
    FCH: int
    FRCH: int
    LCH: int
    WCD: float
    WFR: float
    TACH: int
    ATAF: float
    CHD: float
    LCA: int
    LCD: float
    CSB: int
    CSBS: float
    ACDF: float
    CHO: int

    def as_dict(self) -> dict:
        return asdict(self)


def _ratio(a: float, b: float) -> float:
    return a / b if b else 0.0


def compute_evolution_metrics(histories: Sequence[ChangeHistory], cls: str,
                              present: Sequence[set[str]],
                              loc: float | Mapping[int, float],
                              counter: ChangeCounter = line_delta_counter) -> EvolutionFeatures:
    """Evolution metrics of `cls` at release R = len(histories).

    ``histories[w - 1]`` holds the changes that led to release ``w`` and
    ``present[w - 1]`` the classes existing at release ``w``. `loc` is the
    class size at R, or a per-release mapping used for per-window densities.
    """
    R = len(histories)
    if R == 0 or len(present) < R:
        raise ContractViolation("need one history and one class set per release")
    if cls not in present[R - 1]:
        raise ContractViolation(f"{cls} does not exist at release {R}")
    boc = next(w for w in range(1, R + 1) if cls in present[w - 1])

    def size(w: int) -> float:
        if isinstance(loc, Mapping):
            return float(loc.get(w, loc.get(R, 0)))
        return float(loc)

    tach_w, frch_w, last_amount = [], [], 0
    for h in histories:
        churn, commits = 0, 0
        for c in h.commits:
            amount = sum(counter(c, t) for t in c.touched if t.cls == cls)
            if any(t.cls == cls for t in c.touched):
                commits += 1
                churn += amount
                last_amount = amount
        tach_w.append(churn)
        frch_w.append(commits)

    changed = [w for w in range(1, R + 1) if frch_w[w - 1] > 0]
    frch, tach = frch_w[R - 1], tach_w[R - 1]
    chd_w = [_ratio(tach_w[w - 1], size(w)) for w in range(1, R + 1)]
    csb = sum(tach_w[boc:R])
    frch_total = sum(frch_w)
    cur = size(R)
    return EvolutionFeatures(
        BOC=boc,
        FCH=changed[0] if changed else 0,
        FRCH=frch,
        LCH=changed[-1] if changed else 0,
        WCD=sum(chd_w[w - 1] * 2.0 ** (w - R) for w in range(1, R + 1)),
        WFR=sum(frch_w[w - 1] * 2.0 ** (w - R) for w in range(1, R + 1)),
        TACH=tach,
        ATAF=_ratio(tach, frch),
        CHD=_ratio(tach, cur),
        LCA=last_amount,
        LCD=_ratio(last_amount, cur),
        CSB=csb,
        CSBS=_ratio(csb, cur),
        ACDF=_ratio(sum(chd_w), frch_total),
        CHO=int(frch >= 1),
    )
