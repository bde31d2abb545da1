"""Cliff's delta and the Scott-Knott ESD ranking."""

from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np
from scipy.stats import f as f_dist
from scipy.stats import skew

from ..errors import ContractViolation

NEGLIGIBLE = 0.147
ALPHA = 0.05
SKEW_LIMIT = 1.0


def cliffs_delta(a: Sequence[float], b: Sequence[float]) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size == 0 or b.size == 0:
        raise ContractViolation("Cliff's delta needs two non-empty samples")
    diff = a[:, None] - b[None, :]
    return float((np.sum(diff > 0) - np.sum(diff < 0)) / (a.size * b.size))


def _best_split(samples: list[np.ndarray]):
    """Split index maximizing between-group sum of squares, with that SS."""
    allv = np.concatenate(samples)
    grand = allv.mean()
    best, best_ss = None, -1.0
    for i in range(1, len(samples)):
        left, right = np.concatenate(samples[:i]), np.concatenate(samples[i:])
        ss = left.size * (left.mean() - grand) ** 2 + right.size * (right.mean() - grand) ** 2
        if ss > best_ss + 1e-15:
            best, best_ss = i, ss
    return best, best_ss


def _significant(samples: list[np.ndarray], split: int, ssb: float) -> bool:
    allv = np.concatenate(samples)
    n = allv.size
    if n <= 2:
        return False
    left, right = np.concatenate(samples[:split]), np.concatenate(samples[split:])
    ssw = float(np.sum((left - left.mean()) ** 2) + np.sum((right - right.mean()) ** 2))
    if ssw == 0:
        return ssb > 0
    stat = ssb / (ssw / (n - 2))
    return f_dist.sf(stat, 1, n - 2) < ALPHA


def _partition(names: list[str], samples: list[np.ndarray]) -> list[list[str]]:
    if len(names) < 2:
        return [names]
    split, ssb = _best_split(samples)
    if split is None or not _significant(samples, split, ssb):
        return [names]
    return _partition(names[:split], samples[:split]) + _partition(names[split:], samples[split:])


def scott_knott_esd(groups: Mapping[str, Sequence[float]]) -> list[list[str]]:
    """Ranked clusters of group names, best mean first.

    Samples are log1p-transformed when their pooled skewness exceeds 1, then
    split recursively while an F-test accepts the split; finally adjacent
    clusters whose Cliff's delta is negligible are merged.
    """
    if not groups:
        return []
    for name, sample in groups.items():
        if len(sample) < 2:
            raise ContractViolation(f"group {name!r} has fewer than 2 observations")
    data = {n: np.asarray(v, dtype=float) for n, v in groups.items()}
    if len(data) < 2:
        return [list(data)]
    pooled = np.concatenate(list(data.values()))
    if pooled.std() > 0 and skew(pooled) > SKEW_LIMIT and pooled.min() > -1:
        data = {n: np.log1p(v) for n, v in data.items()}
    names = sorted(data, key=lambda n: (-data[n].mean(), n))
    clusters = _partition(names, [data[n] for n in names])
    merged = [clusters[0]]
    for cluster in clusters[1:]:
        prev = np.concatenate([data[n] for n in merged[-1]])
        cur = np.concatenate([data[n] for n in cluster])
        if abs(cliffs_delta(prev, cur)) < NEGLIGIBLE:
            merged[-1] = merged[-1] + cluster
        else:
            merged.append(cluster)
    return merged
