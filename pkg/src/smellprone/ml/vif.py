"""Variance inflation factor filtering."""

from __future__ import annotations

import math

import numpy as np

from ..errors import ContractViolation

VIF_LIMIT = 10.0
_PERFECT = 1 - 1e-10


def variance_inflation(X: np.ndarray) -> np.ndarray:
    """VIF of every column, regressing it by least squares (with intercept) on the rest."""
    X = np.asarray(X, dtype=float)
    n, p = X.shape
    out = np.empty(p)
    for j in range(p):
        target = X[:, j]
        others = np.hstack([np.ones((n, 1)), np.delete(X, j, axis=1)])
        coef, *_ = np.linalg.lstsq(others, target, rcond=None)
        resid = target - others @ coef
        ss_tot = float(np.sum((target - target.mean()) ** 2))
        if ss_tot == 0:
            out[j] = math.inf
            continue
        r2 = 1 - float(resid @ resid) / ss_tot
        out[j] = math.inf if r2 >= _PERFECT else 1 / (1 - r2)
    return out


def vif_filter(d, limit: float = VIF_LIMIT):
    """Drop the worst feature while any VIF exceeds `limit`; returns (dataset, removed).

    Ties (including several infinite VIFs) drop the alphabetically later
    name. The last remaining feature is never dropped.
    """
    if len(d.features) < 2:
        raise ContractViolation("VIF filtering needs at least 2 features")
    if len(d.rows) < len(d.features) + 1:
        raise ContractViolation("VIF filtering needs more rows than features")
    X, _ = d.matrix()
    features = list(d.features)
    cols = list(range(len(features)))
    removed: list[str] = []
    while len(cols) > 1:
        vif = variance_inflation(X[:, cols])
        worst = max(vif)
        if not worst > limit:
            break
        candidates = [features[c] for c, v in zip(cols, vif) if v == worst]
        drop = max(candidates)
        removed.append(drop)
        cols = [c for c in cols if features[c] != drop]
    if not removed:
        return d, removed
    kept = [features[c] for c in cols]
    return d.subset(features=kept, note=f"vif removed {', '.join(removed)}"), removed
