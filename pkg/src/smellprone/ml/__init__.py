from .evaluation import (
    EvaluationResult,
    FoldOutcome,
    auc_roc,
    confusion_metrics,
    cross_validate,
    f_measure,
    logistic_classifier,
    stratified_folds,
)
from .logistic import LogisticModel, fit_logistic, predict, train_logistic
from .overlap import overlap_analysis
from .ranking import FeatureRank, RankedFeature, discretize, gain_ratio, gain_ratio_rank, info_gain
from .stats import cliffs_delta, scott_knott_esd
from .vif import variance_inflation, vif_filter

__all__ = [
    "EvaluationResult", "FoldOutcome", "auc_roc", "confusion_metrics", "cross_validate",
    "f_measure", "logistic_classifier", "stratified_folds", "LogisticModel", "fit_logistic",
    "predict", "train_logistic", "overlap_analysis", "FeatureRank", "RankedFeature",
    "discretize", "gain_ratio", "gain_ratio_rank", "info_gain", "cliffs_delta",
    "scott_knott_esd", "variance_inflation", "vif_filter",
]
