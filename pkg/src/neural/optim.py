"""AdamW with decoupled weight decay for dense layer stacks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .layers import DenseLayer, LayerGradient, ShapeError


ParamKey = Tuple[int, str]


@dataclass
class AdamWState:
    """Moment accumulators keyed by ``(layer index, parameter name)``."""

    lr: float
    betas: Tuple[float, float] = (0.9, 0.999)
    eps: float = 1e-8
    weight_decay: float = 0.01
    step: int = 0
    first_moment: Dict[ParamKey, np.ndarray] = field(default_factory=dict, repr=False)
    second_moment: Dict[ParamKey, np.ndarray] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.lr < 0:
            raise ValueError("lr must not be negative")
        beta1, beta2 = self.betas
        if not (0.0 <= beta1 < 1.0 and 0.0 <= beta2 < 1.0):
            raise ValueError("betas must lie in [0, 1)")


def adamw_step(
    state: AdamWState,
    layers: Sequence[DenseLayer],
    grads: Sequence[Optional[LayerGradient]],
) -> Sequence[DenseLayer]:
    """Apply one bias-corrected AdamW update in place and return ``layers``.

    Fixed layers are skipped even when a gradient is supplied for them.
    """

    if len(grads) != len(layers):
        raise ShapeError(f"{len(grads)} gradients for {len(layers)} layers")

    state.step += 1
    beta1, beta2 = state.betas
    correction1 = 1.0 - beta1**state.step
    correction2 = 1.0 - beta2**state.step

    for index, (layer, grad) in enumerate(zip(layers, grads)):
        if not layer.trainable or grad is None:
            continue
        grad_arrays = grad.as_dict()
        for name, param in layer.parameters().items():
            g = grad_arrays.get(name)
            if g is None:
                continue
            if g.shape != param.shape:
                raise ShapeError(f"Gradient {name} von Layer {index} hat Form {g.shape}, erwartet {param.shape}")
            key = (index, name)
            m = state.first_moment.setdefault(key, np.zeros_like(param))
            v = state.second_moment.setdefault(key, np.zeros_like(param))

            param *= 1.0 - state.lr * state.weight_decay
            m *= beta1
            m += (1.0 - beta1) * g
            v *= beta2
            v += (1.0 - beta2) * g * g
            denom = np.sqrt(v) / np.sqrt(correction2) + state.eps
            param -= (state.lr / correction1) * m / denom
        layer.version += 1

    return layers


__all__ = ["AdamWState", "adamw_step"]
