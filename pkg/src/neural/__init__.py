"""Minimal dense-network machinery with exact reverse-mode gradients."""

from .gradcheck import GradCheckReport, fd_gradient_check
from .layers import (
    Activation,
    DenseLayer,
    DropoutSpec,
    ForwardCache,
    LayerGradient,
    Mode,
    ShapeError,
    StaleCacheError,
    backward,
    forward,
    init_dense,
    restore_layers,
    snapshot_layers,
)
from .losses import margin_ranking_loss
from .optim import AdamWState, adamw_step

__all__ = [
    "Activation",
    "AdamWState",
    "DenseLayer",
    "DropoutSpec",
    "ForwardCache",
    "GradCheckReport",
    "LayerGradient",
    "Mode",
    "ShapeError",
    "StaleCacheError",
    "adamw_step",
    "backward",
    "fd_gradient_check",
    "forward",
    "init_dense",
    "margin_ranking_loss",
    "restore_layers",
    "snapshot_layers",
]
