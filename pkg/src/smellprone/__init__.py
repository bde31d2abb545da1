"""Smell-aware change-proneness prediction: metrics, smells, history mining and models."""

from .dataset import Dataset, ModelSpec, assemble_dataset, clean_dataset, read_dataset, write_dataset
from .detection import SmellInstance, ThresholdConfig, detect_smells
from .intensity import ClassIntensity, IntensityConfig, class_intensity, release_intensities
from .pipeline import ExperimentConfig, run_experiment
from .report import emit_report

__version__ = "0.1.0"

__all__ = [
    "Dataset", "ModelSpec", "assemble_dataset", "clean_dataset", "read_dataset", "write_dataset",
    "SmellInstance", "ThresholdConfig", "detect_smells", "ClassIntensity", "IntensityConfig",
    "class_intensity", "release_intensities", "ExperimentConfig", "run_experiment", "emit_report",
]
