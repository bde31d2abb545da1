"""Entropy-based feature ranking with equal-frequency discretization."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import ContractViolation
from .stats import scott_knott_esd

DEFAULT_BINS = 10


def discretize(x: Sequence[float], bins: int = DEFAULT_BINS) -> np.ndarray:
    """Equal-frequency bin per value; ties share a bin and only ranks matter."""
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        return np.zeros(0, dtype=int)
    order = np.sort(x)
    return np.searchsorted(order, x, side="left") * bins // x.size


def entropy(labels: Sequence) -> float:
    _, counts = np.unique(np.asarray(labels), return_counts=True)
    p = counts / counts.sum()
    return float(-np.sum(p * np.log2(p)))


def info_gain(feature: Sequence, labels: Sequence) -> float:
    """H(labels) - H(labels | feature) for an already discrete feature."""
    f = np.asarray(feature)
    y = np.asarray(labels)
    cond = 0.0
    for v in np.unique(f):
        mask = f == v
        cond += mask.mean() * entropy(y[mask])
    return max(entropy(y) - cond, 0.0)


def gain_ratio(feature: Sequence, labels: Sequence) -> float:
    split = entropy(feature)
    return info_gain(feature, labels) / split if split > 0 else 0.0


@dataclass(frozen=True)
class RankedFeature:
    feature: str
    mean_gain: float
    stddev: float
    top_likelihood: float


@dataclass
class FeatureRank:
    entries: list[RankedFeature]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def order(self) -> list[str]:
        return [e.feature for e in self.entries]

    def to_csv(self) -> str:
        lines = ["feature,mean_gain,stddev,sk_top_likelihood"]
        lines += [f"{e.feature},{e.mean_gain!r},{e.stddev!r},{e.top_likelihood!r}" for e in self.entries]
        return "\n".join(lines) + "\n"


def _gains(X: np.ndarray, y: np.ndarray, bins: int) -> np.ndarray:
    return np.array([gain_ratio(discretize(X[:, j], bins), y) for j in range(X.shape[1])])


def gain_ratio_rank(d, bins: int = DEFAULT_BINS, resamples: int = 20, seed: int = 0) -> FeatureRank:
    """Rank features of a Dataset by gain ratio.

    Each release contributes `resamples` bootstrap gain ratios per feature
    (or its plain gain ratio when `resamples` is 0). Features are ordered by
    mean gain, ties alphabetical; the likelihood is the share of releases in
    which SK-ESD puts the feature in the top cluster.
    """
    if not d.features:
        raise ContractViolation("ranking needs at least one feature")
    X, y = d.matrix()
    releases = [r.release for r in d.rows]
    rng = np.random.default_rng(seed)
    samples: dict[str, list[float]] = {f: [] for f in d.features}
    top_counts = dict.fromkeys(d.features, 0)
    release_ids = list(dict.fromkeys(releases))
    for rel in release_ids:
        idx = np.flatnonzero(np.array(releases) == rel)
        if resamples > 0:
            draws = np.array([_gains(X[s], y[s], bins)
                              for s in (rng.choice(idx, size=idx.size, replace=True)
                                        for _ in range(resamples))])
        else:
            draws = _gains(X[idx], y[idx], bins)[None, :]
        for j, f in enumerate(d.features):
            samples[f].extend(draws[:, j].tolist())
        if draws.shape[0] >= 2:
            clusters = scott_knott_esd({f: draws[:, j] for j, f in enumerate(d.features)})
            top = clusters[0]
        else:
            best = draws[0].max()
            top = [f for j, f in enumerate(d.features) if draws[0, j] == best]
        for f in top:
            top_counts[f] += 1
    entries = [RankedFeature(f, float(np.mean(samples[f])), float(np.std(samples[f])),
                             100.0 * top_counts[f] / len(release_ids))
               for f in d.features]
    entries.sort(key=lambda e: (-e.mean_gain, e.feature))
    return FeatureRank(entries)
