"""Structural and semantic scattering of developers, summed per class."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from ..errors import ConsistencyError
from ..metrics.model import PackageTree
from .ingest import ChangeHistory

SIMILARITY_FLOOR = 0.01


@dataclass(frozen=True)
class ScatteringFeatures:
    str_scat_pred: float = 0.0
    sem_scat_pred: float = 0.0


def package_distance(c1: str, c2: str, packages: Mapping[str, tuple[str, ...]]) -> int:
    """Edges between the packages of two classes in the package tree."""
    for c in (c1, c2):
        if c not in packages:
            raise ConsistencyError(f"class {c} is not in the package tree")
    return PackageTree.distance(tuple(packages[c1]), tuple(packages[c2]))


class TextualIndex:
    """tf-idf vectors over class token bags, idf taken across the release.

    idf uses the smoothed form ``ln((1 + N) / (1 + df)) + 1`` so that terms
    shared by every class keep a positive weight.
    """

    def __init__(self, bags: Mapping[str, Counter], use_idf: bool = True):
        self.bags = {k: Counter(v) for k, v in bags.items()}
        n = len(self.bags)
        df: Counter = Counter()
        for bag in self.bags.values():
            df.update(t for t, c in bag.items() if c > 0)
        self.idf = {t: (math.log((1 + n) / (1 + d)) + 1.0 if use_idf else 1.0)
                    for t, d in df.items()}
        self._vectors: dict[str, tuple[dict, float]] = {}

    def __contains__(self, cls: str) -> bool:
        return cls in self.bags

    def vector(self, cls: str):
        if cls not in self._vectors:
            vec = {t: c * self.idf.get(t, 1.0) for t, c in self.bags[cls].items() if c > 0}
            norm = math.sqrt(sum(w * w for w in vec.values()))
            self._vectors[cls] = (vec, norm)
        return self._vectors[cls]

    def similarity(self, c1: str, c2: str) -> float:
        for c in (c1, c2):
            if c not in self.bags:
                raise ConsistencyError(f"no token bag for class {c}")
        (v1, n1), (v2, n2) = self.vector(c1), self.vector(c2)
        if n1 == 0 or n2 == 0:
            return 0.0
        if len(v1) > len(v2):
            v1, v2 = v2, v1
        dot = sum(w * v2.get(t, 0.0) for t, w in v1.items())
        return min(max(dot / (n1 * n2), 0.0), 1.0)


def textual_similarity(bag1: Counter, bag2: Counter, idf: Mapping[str, float] | None = None) -> float:
    """Cosine similarity of two token bags; raw term frequencies when `idf` is None."""
    index = TextualIndex({"a": bag1, "b": bag2}, use_idf=False)
    if idf is not None:
        index.idf = {t: idf.get(t, 1.0) for t in index.idf}
    return index.similarity("a", "b")


def changed_by(h: ChangeHistory, dev: str) -> set[str]:
    return {t.cls for c in h.commits if c.author == dev for t in c.touched}


def _mean_pairwise(classes, fn) -> float | None:
    pairs = list(combinations(sorted(classes), 2))
    if not pairs:
        return None
    return sum(fn(a, b) for a, b in pairs) / len(pairs)


def structural_scattering(dev: str, h: ChangeHistory,
                          packages: Mapping[str, tuple[str, ...]]) -> float:
    """|CH| times the mean package distance over pairs of classes `dev` changed.

    Classes missing from `packages` (e.g. deleted in the window) are skipped.
    """
    ch = {c for c in changed_by(h, dev) if c in packages}
    mean = _mean_pairwise(ch, lambda a, b: package_distance(a, b, packages))
    return 0.0 if mean is None else len(ch) * mean


def semantic_scattering(dev: str, h: ChangeHistory, index: TextualIndex) -> float:
    """|CH| over the mean pairwise textual similarity, similarity floored at 0.01."""
    ch = {c for c in changed_by(h, dev) if c in index}
    mean = _mean_pairwise(ch, index.similarity)
    if mean is None:
        return 0.0
    return len(ch) / max(mean, SIMILARITY_FLOOR)


def scattering_predictors(cls: str, h: ChangeHistory, packages: Mapping[str, tuple[str, ...]],
                          index: TextualIndex) -> ScatteringFeatures:
    devs = sorted({c.author for c in h.commits if any(t.cls == cls for t in c.touched)})
    return ScatteringFeatures(
        sum(structural_scattering(d, h, packages) for d in devs),
        sum(semantic_scattering(d, h, index) for d in devs),
    )


def window_scattering(h: ChangeHistory, packages: Mapping[str, tuple[str, ...]],
                      index: TextualIndex) -> dict[str, ScatteringFeatures]:
    """Scattering predictors for every class touched in `h` (each developer scored once)."""
    per_dev = {d: (structural_scattering(d, h, packages), semantic_scattering(d, h, index))
               for d in sorted(h.authors())}
    devs_of: dict[str, set[str]] = {}
    for c in h.commits:
        for t in c.touched:
            devs_of.setdefault(t.cls, set()).add(c.author)
    return {cls: ScatteringFeatures(sum(per_dev[d][0] for d in sorted(ds)),
                                    sum(per_dev[d][1] for d in sorted(ds)))
            for cls, ds in devs_of.items()}
