"""Distance Encoder Network and its Embedding Loss Function."""

from .elf import ContractViolation, ElfState, build_targets, den_loss_and_gradients, elf, update_alpha
from .model import (
    DenModel,
    DenPass,
    build,
    den_backward,
    den_forward,
    flatten_coords,
    squared_distances,
    unflatten_coords,
)

__all__ = [
    "ContractViolation",
    "DenModel",
    "DenPass",
    "ElfState",
    "build",
    "build_targets",
    "den_backward",
    "den_forward",
    "den_loss_and_gradients",
    "elf",
    "flatten_coords",
    "squared_distances",
    "unflatten_coords",
    "update_alpha",
]
