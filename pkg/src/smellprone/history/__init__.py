"""Mining version history for change counts, labels and history-based predictors."""

from .antipattern import AntipatternFeatures, antipattern_metrics, recurrence_length
from .changes import (
    EVOLUTION_FEATURES,
    ChangePronenessLabel,
    EvolutionFeatures,
    change_counts,
    change_entropy,
    compute_evolution_metrics,
    count_changes,
    label_change_proneness,
    line_delta_counter,
)
from .features import (
    ANTIPATTERN_FEATURES,
    HISTORY_FEATURES,
    SCATTERING_FEATURES,
    ReleaseSnapshot,
    mine_history_features,
    read_history_features,
    write_history_features,
)
from .ingest import (
    ChangeHistory,
    ClassPathMapper,
    Commit,
    Touched,
    history_from_log,
    ingest_history,
    parse_log_records,
    read_log_export,
)
from .scattering import (
    ScatteringFeatures,
    TextualIndex,
    package_distance,
    scattering_predictors,
    semantic_scattering,
    structural_scattering,
    textual_similarity,
    window_scattering,
)
