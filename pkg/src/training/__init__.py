"""Learning phase and hyperparameter sweep."""

from .sweep import SweepGrid, SweepSummary, run_sweep
from .trainer import TrialConfig, TrialResult, run_learning_phase

__all__ = [
    "SweepGrid",
    "SweepSummary",
    "TrialConfig",
    "TrialResult",
    "run_learning_phase",
    "run_sweep",
]
