"""Historical smell indicators: ANA, ACM and ARL."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import ConsistencyError, ContractViolation
from .changes import ChangeCounter, change_counts, change_entropy, line_delta_counter
from .ingest import ChangeHistory

LONGEST, RECENT = "longest", "recent"


@dataclass(frozen=True)
class AntipatternFeatures:
    ANA: float = 0.0
    ACM: float = 0.0
    ARL: int = 0


def recurrence_length(smelly: Sequence[bool], mode: str = LONGEST) -> int:
    if mode == RECENT:
        run = 0
        for flag in reversed(smelly):
            if not flag:
                break
            run += 1
        return run
    if mode != LONGEST:
        raise ContractViolation(f"unknown recurrence mode {mode!r}")
    best = run = 0
    for flag in smelly:
        run = run + 1 if flag else 0
        best = max(best, run)
    return best


def antipattern_metrics(cls: str, timeline: Sequence[int], histories: Sequence[ChangeHistory],
                        arl_mode: str = LONGEST,
                        counter: ChangeCounter = line_delta_counter) -> AntipatternFeatures:
    """ANA/ACM/ARL of `cls` at release R = len(timeline).

    ``timeline[r - 1]`` is the number of smells the class carried at release
    ``r`` (0 when clean or absent); ``histories[w - 1]`` is the window that
    ends at release ``w``.
    """
    R = len(timeline)
    if R == 0:
        raise ContractViolation("timeline must cover at least the current release")
    if R < len(histories):
        raise ConsistencyError(f"timeline covers {R} releases but {len(histories)} windows were given")
    ana = sum(timeline[:R - 1]) / (R - 1) if R > 1 else 0.0
    acm = 0.0
    for w, h in enumerate(histories[:R], start=1):
        if timeline[w - 1] <= 0:
            continue
        counts = change_counts(h, counter)
        mine, total = counts.get(cls, 0), sum(counts.values())
        if mine > 0 and total > 0:
            acm += change_entropy(h, counter) * mine / total
    arl = recurrence_length([n > 0 for n in timeline], arl_mode)
    return AntipatternFeatures(float(ana), float(acm), arl)
