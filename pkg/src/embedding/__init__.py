"""Register embeddings: feasibility evaluation and initial coordinates."""

from .feasibility import (
    DimensionMismatchError,
    DomainParams,
    Embedding,
    FeasibilityReport,
    adjacency_gap,
    check_embedding,
    objective_value,
)
from .initializers import FrConfig, InitMethod, fr_layout, fruchterman_reingold, initial_embedding, scale_to_disk

__all__ = [
    "DimensionMismatchError",
    "DomainParams",
    "Embedding",
    "FeasibilityReport",
    "FrConfig",
    "InitMethod",
    "adjacency_gap",
    "check_embedding",
    "fr_layout",
    "fruchterman_reingold",
    "initial_embedding",
    "objective_value",
    "scale_to_disk",
]
