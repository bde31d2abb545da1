"""Parsing a release and computing structural metrics."""

from .compute import compute_entity_metrics, compute_release_metrics, compute_sm_features
from .java import parse_release, tokenize_text
from .model import (
    CLASS,
    CLASS_METRICS,
    METHOD,
    METHOD_METRICS,
    METRIC_NAMES,
    ClassEntity,
    CodeModel,
    EntityMetricVector,
    MethodEntity,
    PackageTree,
)
from .table import load_metrics_table, write_metrics_table

__all__ = [
    "CLASS", "CLASS_METRICS", "METHOD", "METHOD_METRICS", "METRIC_NAMES",
    "ClassEntity", "CodeModel", "EntityMetricVector", "MethodEntity", "PackageTree",
    "compute_entity_metrics", "compute_release_metrics", "compute_sm_features",
    "load_metrics_table", "parse_release", "tokenize_text", "write_metrics_table",
]
