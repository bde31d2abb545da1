"""Exception hierarchy shared by every stage of the pipeline."""

from __future__ import annotations


class SmellProneError(Exception):
    """Base class for all errors raised by this package."""


class InputError(SmellProneError):
    """A required input (directory, file, tag) is missing or unusable."""


class EmptyModelError(SmellProneError):
    """Parsing a release produced no classes."""


class ConsistencyError(SmellProneError):
    """Two inputs disagree, e.g. an entity that does not belong to a model."""


class SchemaError(SmellProneError):
    """A CSV/JSON document does not follow its documented schema."""

    def __init__(self, message: str, row: int | None = None, column: str | None = None):
        location = []
        if row is not None:
            location.append(f"row {row}")
        if column is not None:
            location.append(f"column {column}")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message)
        self.row = row
        self.column = column


class IncompleteVectorError(SmellProneError):
    """A metric required by a detection strategy is not populated."""

    def __init__(self, metric: str, entity: str | None = None):
        where = f" for {entity}" if entity else ""
        super().__init__(f"metric {metric} is not populated{where}")
        self.metric = metric
        self.entity = entity


class ContractViolation(SmellProneError, ValueError):
    """A precondition of an operation was not met."""


class JoinError(SmellProneError):
    """Inputs to dataset assembly do not cover the same keys."""

    def __init__(self, orphans):
        self.orphans = sorted(orphans)
        shown = ", ".join(f"{r}:{c}" for r, c in self.orphans[:20])
        more = "" if len(self.orphans) <= 20 else f" (+{len(self.orphans) - 20} more)"
        super().__init__(f"orphan keys: {shown}{more}")


class EmptyDatasetError(SmellProneError):
    """A dataset has no rows (after reading or cleaning)."""


class DegenerateTrainingError(SmellProneError):
    """Training data carries a single label."""


class StratificationError(SmellProneError):
    """A label class is smaller than the number of folds."""


class UndefinedAUCError(SmellProneError):
    """AUC requested for scores that carry a single label."""


class ConfigError(SmellProneError):
    """An experiment configuration violates one or more field constraints."""

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class StageError(SmellProneError):
    """A pipeline stage failed; carries the stage name and input key."""

    def __init__(self, stage: str, key: str, cause: Exception):
        super().__init__(f"[{stage}] {key}: {cause}")
        self.stage = stage
        self.key = key
        self.cause = cause


class NothingToReportError(SmellProneError):
    """The artifacts directory holds no evaluation results."""
