"""Seeded synthetic corpora shared by property and acceptance tests."""

from __future__ import annotations

import numpy as np

from smellprone.dataset import ModelSpec, assemble_dataset, clean_dataset
from smellprone.detection import detect_smells
from smellprone.history.changes import label_change_proneness
from smellprone.intensity import release_intensities
from smellprone.metrics.model import CLASS, CLASS_METRICS, EntityMetricVector

SMELLY_SHARE = 0.2


def _clean_class(rng) -> dict:
    loc = int(rng.lognormal(4.0, 0.6))
    return {
        "ATFD": int(rng.integers(0, 5)), "LOC": loc, "LOCNAMM": int(loc * rng.uniform(0.7, 1.0)),
        "NOAM": int(rng.integers(0, 4)), "NOMNAMM": int(rng.integers(1, 17)),
        "NOPA": int(rng.integers(0, 3)), "TCC": float(rng.uniform(0.34, 1.0)),
        "WMCNAMM": int(rng.integers(1, 21)), "WOC": float(rng.uniform(0.34, 1.0)),
        "CBO": int(rng.integers(0, 12)), "RFC": int(rng.integers(2, 40)),
        "DIT": int(rng.integers(0, 4)), "LCOM": int(rng.integers(0, 60)),
    }


def _god_class(rng) -> dict:
    v = _clean_class(rng)
    v.update(ATFD=int(rng.integers(6, 25)), LOCNAMM=int(rng.integers(176, 900)),
             WMCNAMM=int(rng.integers(22, 120)), NOMNAMM=int(rng.integers(18, 70)),
             TCC=float(rng.uniform(0.0, 0.33)))
    v["LOC"] = v["LOCNAMM"] + int(rng.integers(0, 40))
    return v


def _data_class(rng) -> dict:
    v = _clean_class(rng)
    v.update(WMCNAMM=int(rng.integers(1, 15)), WOC=float(rng.uniform(0.0, 0.33)),
             NOAM=int(rng.integers(4, 30)), NOPA=int(rng.integers(3, 15)))
    return v


def class_vector(release: str, name: str, values: dict) -> EntityMetricVector:
    full = {m: (values[m] if m in CLASS_METRICS else None) for m in values}
    return EntityMetricVector(release, CLASS, name, "pkg", full)


def synthetic_release(rng, release: str, n: int = 300, ratio: float = 2.0,
                      smelly_share: float = SMELLY_SHARE):
    """Class vectors, smelly flags and change counts for one release.

    Change counts are lognormal; smelly classes get a median `ratio` times larger.
    """
    vectors, smelly, counts = [], {}, {}
    for i in range(n):
        name = f"C{i:04d}"
        draw = rng.random()
        if draw < smelly_share / 2:
            values = _god_class(rng)
        elif draw < smelly_share:
            values = _data_class(rng)
        else:
            values = _clean_class(rng)
        vectors.append(class_vector(release, name, values))
        is_smelly = draw < smelly_share
        smelly[name] = is_smelly
        median = 10.0 * (ratio if is_smelly else 1.0)
        counts[name] = int(round(rng.lognormal(np.log(median), 0.8)))
    return vectors, smelly, counts


def synthetic_datasets(seed: int, specs, releases: int = 3, n: int = 300):
    """Per release, cleaned datasets for each spec built through the real detector."""
    rng = np.random.default_rng(seed)
    out = []
    for r in range(releases):
        tag = f"r{r + 1}"
        vectors, _, counts = synthetic_release(rng, tag, n)
        smells = detect_smells(vectors)
        intens = release_intensities(vectors, smells)
        labels = {(tag, lab.cls): lab.label for lab in label_change_proneness(counts)}
        metrics = {(tag, v.qualified_name): v for v in vectors}
        inten = {(tag, c): ci for c, ci in intens.items()}
        hist = {k: {} for k in labels}
        out.append({spec: clean_dataset(assemble_dataset(ModelSpec.parse(spec), metrics, inten,
                                                         hist, labels))
                    for spec in specs})
    return out
