"""Overlap between the true positives of two models."""

from __future__ import annotations

from typing import AbstractSet

from ..errors import ContractViolation


def overlap_analysis(tp_a: AbstractSet, tp_b: AbstractSet,
                     universe: AbstractSet | None = None) -> tuple[float, float, float]:
    """(both%, only_a%, only_b%) relative to the union of the two sets."""
    a, b = set(tp_a), set(tp_b)
    if universe is not None and not (a <= set(universe) and b <= set(universe)):
        raise ContractViolation("true-positive sets must lie inside the universe")
    union = a | b
    if not union:
        return 0.0, 0.0, 0.0
    n = len(union)
    return len(a & b) / n * 100, len(a - b) / n * 100, len(b - a) / n * 100
