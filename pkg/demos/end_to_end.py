"""
The whole experiment from one config file
=========================================

Runs extraction, detection, history mining, dataset assembly, repeated
cross-validation, ranking, overlap and the report on the fixture project.
Equivalent to ``smellprone run --config tests/fixtures/project/experiment.json --out <dir>``.
"""

import tempfile
from pathlib import Path

from smellprone.pipeline import ExperimentConfig, configure, run_experiment

config_path = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "project" / "experiment.json"

with tempfile.TemporaryDirectory() as tmp:
    config = configure(ExperimentConfig.load(config_path), out=Path(tmp))
    summary = run_experiment(config)
    print(f"{len(summary.evaluations)} evaluations")
    print((Path(tmp) / "summary.md").read_text())

    # Feature ranking of the combined model on the first release.
    ranks = Path(tmp) / "models" / "v1.0" / "COMBINED_intensity_antipattern" / "ranks.csv"
    print(ranks.read_text())
