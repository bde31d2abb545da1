"""L2-regularized logistic regression on standardized features.

The fit minimizes ``-loglik(b, w) + lam / 2 * ||w||^2`` (intercept not
penalized) with damped Newton steps until the gradient's max-norm drops
below the tolerance, or until a step no longer lowers the objective in
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from scipy.special import expit

from ..errors import ContractViolation, DegenerateTrainingError


@dataclass(frozen=True)
class LogisticModel:
    features: tuple[str, ...]
    coefficients: np.ndarray
    intercept: float
    lam: float
    mean: np.ndarray
    scale: np.ndarray
    iterations: int = 0

    def decision(self, X: np.ndarray) -> np.ndarray:
        Z = (np.asarray(X, dtype=float) - self.mean) / self.scale
        return self.intercept + Z @ self.coefficients

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        return expit(self.decision(np.atleast_2d(X)))


def _objective(b, w, Z, y, lam):
    s = b + Z @ w
    # log(1 + e^s) - y*s, computed stably
    return float(np.sum(np.logaddexp(0.0, s) - y * s) + 0.5 * lam * w @ w)


def fit_logistic(X: np.ndarray, y: np.ndarray, lam: float = 1.0,
                 features: Sequence[str] | None = None, tol: float = 1e-8,
                 max_iter: int = 10_000) -> LogisticModel:
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if lam < 0:
        raise ContractViolation("regularization strength must be >= 0")
    if X.ndim != 2 or X.shape[0] != y.shape[0]:
        raise ContractViolation("X must be 2-D with one row per label")
    if len(np.unique(y)) < 2:
        raise DegenerateTrainingError("training data carries a single label")
    n, p = X.shape
    mean = X.mean(axis=0) if n else np.zeros(p)
    scale = X.std(axis=0)
    scale = np.where(scale > 0, scale, 1.0)
    Z = (X - mean) / scale
    A = np.hstack([np.ones((n, 1)), Z])
    penalty = np.full(p + 1, lam)
    penalty[0] = 0.0
    beta = np.zeros(p + 1)
    prior = y.mean()
    beta[0] = np.log(prior / (1 - prior))
    f = _objective(beta[0], beta[1:], Z, y, lam)
    it = 0
    for it in range(1, max_iter + 1):
        prob = expit(A @ beta)
        grad = A.T @ (prob - y) + penalty * beta
        if np.max(np.abs(grad)) < tol:
            break
        weights = prob * (1 - prob)
        H = (A * weights[:, None]).T @ A + np.diag(penalty)
        H[np.diag_indices_from(H)] += 1e-12
        try:
            step = np.linalg.solve(H, grad)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(H, grad, rcond=None)[0]
        decrease = float(grad @ step)
        t = 1.0
        while True:
            cand = beta - t * step
            fc = _objective(cand[0], cand[1:], Z, y, lam)
            if fc <= f - 1e-4 * t * decrease or t < 1e-10:
                break
            t *= 0.5
        if fc > f:
            break
        if fc == f:
            # below the objective's rounding; the gradient cannot shrink further
            beta = cand
            break
        beta, f = cand, fc
    names = tuple(features) if features is not None else tuple(f"x{i}" for i in range(p))
    return LogisticModel(names, beta[1:].copy(), float(beta[0]), float(lam), mean, scale, it)


def train_logistic(d, lam: float = 1.0, seed: int | None = None) -> LogisticModel:
    """Fit a model on a Dataset.

    The Newton solver uses no randomness, so `seed` only exists so callers
    can thread one seed through every stage; results never depend on it.
    """
    X, y = d.matrix()
    return fit_logistic(X, y, lam, d.features)


def predict(m: LogisticModel, row: Mapping[str, float]) -> float:
    """Probability of the positive class for one row keyed by feature name."""
    missing = [f for f in m.features if f not in row]
    if missing:
        raise ContractViolation(f"row lacks model features: {missing}")
    x = np.array([[float(row[f]) for f in m.features]])
    return float(m.predict_proba(x)[0])
