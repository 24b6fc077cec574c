"""Graph instances: representation, pair indexing and random generation."""

from .core import Graph, InvalidPairError, iter_pairs, pair_count, pair_index
from .generator import (
    ConditionReport,
    GenerationError,
    GeneratorConfig,
    check_necessary_conditions,
    generate_instance,
)

__all__ = [
    "ConditionReport",
    "GenerationError",
    "GeneratorConfig",
    "Graph",
    "InvalidPairError",
    "check_necessary_conditions",
    "generate_instance",
    "iter_pairs",
    "pair_count",
    "pair_index",
]
