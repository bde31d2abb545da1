"""Confusion-based metrics, AUC-ROC and repeated stratified cross-validation."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.stats import rankdata

from ..errors import ContractViolation, StratificationError, UndefinedAUCError
from .logistic import fit_logistic

THRESHOLD = 0.5

# (X_train, y_train, feature names) -> scorer mapping X_test to probabilities
Classifier = Callable[[np.ndarray, np.ndarray, Sequence[str]], Callable[[np.ndarray], np.ndarray]]


def confusion_metrics(tp: int, fp: int, tn: int, fn: int) -> tuple[float, float, float]:
    """Precision, recall and F-measure; any zero denominator yields 0."""
    if min(tp, fp, tn, fn) < 0:
        raise ContractViolation("confusion counts must be non-negative")
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return precision, recall, f


def f_measure(precision: float, recall: float) -> float:
    return 2 * precision * recall / (precision + recall) if precision + recall else 0.0


def auc_roc(scores: Sequence[float], labels: Sequence[bool]) -> float:
    """Probability that a random positive outranks a random negative, ties counting half."""
    s = np.asarray(scores, dtype=float)
    y = np.asarray(labels, dtype=bool)
    if s.shape != y.shape:
        raise ContractViolation("scores and labels differ in length")
    n_pos = int(y.sum())
    n_neg = len(y) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise UndefinedAUCError("AUC needs both labels")
    # midranks make the U statistic exact in half-integers
    ranks = rankdata(s)
    u = ranks[y].sum() - n_pos * (n_pos + 1) / 2
    return float(u / (n_pos * n_neg))


def logistic_classifier(lam: float = 1.0) -> Classifier:
    def train(X, y, features):
        model = fit_logistic(X, y, lam, features)
        return model.predict_proba
    return train


def stratified_folds(labels: Sequence[bool], k: int, seed: int) -> np.ndarray:
    """Fold index per row; each class is shuffled then dealt round-robin."""
    y = np.asarray(labels, dtype=bool)
    if k < 2:
        raise ContractViolation("k must be at least 2")
    n_pos = int(y.sum())
    if n_pos < k or len(y) - n_pos < k:
        raise StratificationError(
            f"each label needs at least {k} members (positives {n_pos}, negatives {len(y) - n_pos})")
    rng = np.random.default_rng(seed)
    folds = np.empty(len(y), dtype=int)
    pos = rng.permutation(np.flatnonzero(y))
    neg = rng.permutation(np.flatnonzero(~y))
    folds[pos] = np.arange(len(pos)) % k
    # negatives continue the deal so fold sizes also stay within one
    folds[neg] = (len(pos) + np.arange(len(neg))) % k
    return folds


@dataclass
class FoldOutcome:
    repeat: int
    fold: int
    tp: int
    fp: int
    tn: int
    fn: int
    auc: float

    @property
    def size(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    def metrics(self) -> tuple[float, float, float]:
        return confusion_metrics(self.tp, self.fp, self.tn, self.fn)


@dataclass
class EvaluationResult:
    spec: str
    features: list[str]
    k: int
    repeats: int
    lam: float
    base_seed: int
    folds: list[FoldOutcome]
    assignments: list[list[int]] = field(default_factory=list)
    # (release, class, label, is_smelly) per dataset row
    rows: list[tuple[str, str, bool, bool]] = field(default_factory=list)
    # predicted label per row, one list per repeat
    predictions: list[list[int]] = field(default_factory=list)

    @property
    def seeds(self) -> list[int]:
        return [self.base_seed + r for r in range(self.repeats)]

    def _mean(self, idx: int) -> float:
        return float(np.mean([f.metrics()[idx] for f in self.folds]))

    @property
    def precision(self) -> float:
        return self._mean(0)

    @property
    def recall(self) -> float:
        return self._mean(1)

    @property
    def f_measure(self) -> float:
        return self._mean(2)

    @property
    def auc(self) -> float:
        return float(np.mean([f.auc for f in self.folds]))

    def per_repeat(self, metric: str = "f_measure") -> list[float]:
        """Metric averaged over the folds of each repeat, in repeat order."""
        out = []
        for r in range(self.repeats):
            fs = [f for f in self.folds if f.repeat == r]
            vals = [f.auc if metric == "auc" else f.metrics()[("precision", "recall", "f_measure").index(metric)]
                    for f in fs]
            out.append(float(np.mean(vals)))
        return out

    def true_positives(self) -> set[tuple[str, str]]:
        """Rows that are positive and predicted positive in most repeats."""
        if not self.predictions:
            return set()
        votes = np.sum(np.asarray(self.predictions, dtype=int), axis=0)
        return {(rel, cls) for (rel, cls, label, _), v in zip(self.rows, votes)
                if label and 2 * v > len(self.predictions)}

    def smelly_change_prone(self) -> set[tuple[str, str]]:
        return {(rel, cls) for rel, cls, label, smelly in self.rows if label and smelly}

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "features": list(self.features),
            "cv": {"k": self.k, "repeats": self.repeats, "lambda": self.lam, "base_seed": self.base_seed},
            "seeds": self.seeds,
            "aggregate": {"precision": self.precision, "recall": self.recall,
                          "f_measure": self.f_measure, "auc_roc": self.auc},
            "folds": [{"repeat": f.repeat, "fold": f.fold, "tp": f.tp, "fp": f.fp,
                       "tn": f.tn, "fn": f.fn, "auc_roc": f.auc} for f in self.folds],
            "assignments": self.assignments,
            "rows": [[rel, cls, int(label), int(smelly)] for rel, cls, label, smelly in self.rows],
            "predictions": self.predictions,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "EvaluationResult":
        cv = data["cv"]
        folds = [FoldOutcome(f["repeat"], f["fold"], f["tp"], f["fp"], f["tn"], f["fn"], f["auc_roc"])
                 for f in data["folds"]]
        rows = [(r[0], r[1], bool(r[2]), bool(r[3])) for r in data.get("rows", [])]
        return cls(data["spec"], list(data["features"]), cv["k"], cv["repeats"], cv["lambda"],
                   cv["base_seed"], folds, data.get("assignments", []), rows,
                   data.get("predictions", []))


def _evaluate_fold(X, y, features, folds, repeat, fold, classifier):
    test = folds == fold
    scorer = classifier(X[~test], y[~test], features)
    probs = np.asarray(scorer(X[test]), dtype=float)
    truth = y[test]
    pred = probs >= THRESHOLD
    tp = int(np.sum(pred & truth))
    fp = int(np.sum(pred & ~truth))
    tn = int(np.sum(~pred & ~truth))
    fn = int(np.sum(~pred & truth))
    return FoldOutcome(repeat, fold, tp, fp, tn, fn, auc_roc(probs, truth)), pred


def cross_validate(d, k: int = 10, repeats: int = 100, lam: float = 1.0, base_seed: int = 0,
                   classifier: Classifier | None = None, threads: int = 1,
                   record_assignments: bool = True) -> EvaluationResult:
    """Repeated stratified k-fold evaluation of a Dataset.

    Repeat ``r`` shuffles with seed ``base_seed + r``. Fold outcomes are
    collected in (repeat, fold) order, so any thread count gives the same result.
    """
    if repeats < 1:
        raise ContractViolation("repeats must be at least 1")
    X, y = d.matrix()
    classifier = classifier or logistic_classifier(lam)
    plans = [stratified_folds(y, k, base_seed + r) for r in range(repeats)]
    jobs = [(r, f) for r in range(repeats) for f in range(k)]

    def run(job):
        r, f = job
        return _evaluate_fold(X, y, d.features, plans[r], r, f, classifier)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(j) for j in jobs]
    outcomes = [o for o, _ in results]
    assignments, predictions, rows = [], [], []
    if record_assignments:
        assignments = [p.tolist() for p in plans]
        for r in range(repeats):
            pred = np.zeros(len(y), dtype=int)
            for (o, fold_pred) in results[r * k:(r + 1) * k]:
                pred[plans[r] == o.fold] = fold_pred
            predictions.append(pred.tolist())
        rows = [(row.release, row.cls, bool(row.label), bool(row.is_smelly)) for row in d.rows]
    return EvaluationResult(d.spec.label, list(d.features), k, repeats, float(lam), base_seed,
                            outcomes, assignments, rows, predictions)
