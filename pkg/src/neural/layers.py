"""Dense layers with cached forward passes and exact reverse-mode gradients.

Vectors are 1-D float64 arrays; a layer maps ``x`` (length ``in``) to
``act(W x + b)`` (length ``out``). Dropout is inverted: kept units are scaled
by ``1/(1 - p_drop)`` during training so inference needs no rescaling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import sparse


class ShapeError(ValueError):
    """Raised when array shapes do not fit the layer stack."""


class StaleCacheError(RuntimeError):
    """Raised when a forward cache no longer matches the layer parameters."""


class Activation(str, Enum):
    RELU = "relu"
    SCALED_TANH = "scaled_tanh"
    SQUARE = "square"
    IDENTITY = "identity"


class Mode(str, Enum):
    TRAINING = "training"
    INFERENCE = "inference"


@dataclass(frozen=True)
class DropoutSpec:
    p_drop: float = 0.0
    mode: Mode = Mode.INFERENCE

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_drop < 1.0:
            raise ValueError("p_drop must lie in [0, 1)")
        object.__setattr__(self, "mode", Mode(self.mode))

    @property
    def active(self) -> bool:
        return self.mode is Mode.TRAINING and self.p_drop > 0.0


INFERENCE = DropoutSpec()


@dataclass(eq=False)
class DenseLayer:
    """Fully connected layer ``act(W x + b)``.

    ``scale`` is the output range of ``scaled_tanh``; ``dropout`` marks hidden
    layers whose outputs are dropped during training. ``version`` increases
    with every parameter update and invalidates older forward caches. Fixed
    layers may hold a ``scipy.sparse`` weight matrix.
    """

    weights: Union[np.ndarray, sparse.spmatrix]
    bias: Optional[np.ndarray] = None
    activation: Activation = Activation.IDENTITY
    trainable: bool = True
    scale: float = 1.0
    dropout: bool = False
    version: int = field(default=0, repr=False)

    def __post_init__(self) -> None:
        if sparse.issparse(self.weights):
            if self.trainable:
                raise ValueError("sparse weights are only supported for fixed layers")
            self.weights = sparse.csr_matrix(self.weights, dtype=np.float64)
        else:
            self.weights = np.array(self.weights, dtype=np.float64)
            if self.weights.ndim != 2:
                raise ShapeError("weights must be a 2-D (out × in) matrix")
        if self.bias is not None:
            self.bias = np.array(self.bias, dtype=np.float64)
            if self.bias.shape != (self.weights.shape[0],):
                raise ShapeError(f"bias shape {self.bias.shape} does not match {self.weights.shape[0]} outputs")
        self.activation = Activation(self.activation)

    @property
    def in_features(self) -> int:
        return int(self.weights.shape[1])

    @property
    def out_features(self) -> int:
        return int(self.weights.shape[0])

    def parameters(self) -> Dict[str, np.ndarray]:
        """Named parameter arrays; empty for fixed layers."""

        if not self.trainable:
            return {}
        params = {"weights": self.weights}
        if self.bias is not None:
            params["bias"] = self.bias
        return params

    def activate(self, z: np.ndarray) -> np.ndarray:
        if self.activation is Activation.RELU:
            return np.maximum(z, 0.0)
        if self.activation is Activation.SCALED_TANH:
            return self.scale * np.tanh(z)
        if self.activation is Activation.SQUARE:
            return z * z
        return z

    def activation_derivative(self, z: np.ndarray, a: np.ndarray) -> np.ndarray:
        if self.activation is Activation.RELU:
            return (z > 0.0).astype(np.float64)
        if self.activation is Activation.SCALED_TANH:
            return self.scale - a * a / self.scale
        if self.activation is Activation.SQUARE:
            return 2.0 * z
        return np.ones_like(z)


@dataclass(frozen=True)
class LayerCache:
    x: np.ndarray
    z: np.ndarray
    a: np.ndarray
    mask: Optional[np.ndarray]
    version: int


@dataclass(frozen=True)
class ForwardCache:
    layer_ids: Tuple[int, ...]
    entries: Tuple[LayerCache, ...]

    def outputs(self, index: int) -> np.ndarray:
        """Output of layer ``index`` after activation and dropout."""

        entry = self.entries[index]
        return entry.a if entry.mask is None else entry.a * entry.mask


@dataclass
class LayerGradient:
    weights: np.ndarray
    bias: Optional[np.ndarray] = None

    def as_dict(self) -> Dict[str, np.ndarray]:
        grads = {"weights": self.weights}
        if self.bias is not None:
            grads["bias"] = self.bias
        return grads


def forward(
    stack: Sequence[DenseLayer],
    x: np.ndarray,
    dropout: DropoutSpec = INFERENCE,
    rng: Optional[np.random.Generator] = None,
) -> Tuple[np.ndarray, ForwardCache]:
    """Run ``x`` through ``stack`` and keep what :func:`backward` needs.

    In training mode every layer flagged ``dropout`` samples a fresh mask.
    """

    current = np.asarray(x, dtype=np.float64)
    if current.ndim != 1:
        raise ShapeError("input must be a 1-D vector")
    if dropout.active and rng is None:
        raise ValueError("training-mode dropout needs a random generator")

    entries: List[LayerCache] = []
    for index, layer in enumerate(stack):
        if current.shape[0] != layer.in_features:
            raise ShapeError(
                f"Layer {index} erwartet {layer.in_features} Eingänge, erhalten {current.shape[0]}"
            )
        z = layer.weights @ current
        if layer.bias is not None:
            z = z + layer.bias
        a = layer.activate(z)
        mask = None
        if layer.dropout and dropout.active:
            keep = rng.random(a.shape[0]) >= dropout.p_drop  # type: ignore[union-attr]
            mask = keep / (1.0 - dropout.p_drop)
        entries.append(LayerCache(x=current, z=z, a=a, mask=mask, version=layer.version))
        current = a if mask is None else a * mask

    cache = ForwardCache(layer_ids=tuple(id(layer) for layer in stack), entries=tuple(entries))
    return current, cache


def backward(
    stack: Sequence[DenseLayer],
    cache: ForwardCache,
    grad_output: np.ndarray,
) -> Tuple[List[Optional[LayerGradient]], np.ndarray]:
    """Propagate ``∂loss/∂output`` back through ``stack``.

    Returns one gradient per layer (``None`` for fixed layers) and the
    gradient with respect to the stack input.
    """

    if cache.layer_ids != tuple(id(layer) for layer in stack):
        raise StaleCacheError("cache belongs to a different layer stack")
    for layer, entry in zip(stack, cache.entries):
        if layer.version != entry.version:
            raise StaleCacheError("layer parameters changed since the forward pass")

    grad = np.asarray(grad_output, dtype=np.float64)
    if stack and grad.shape != (stack[-1].out_features,):
        raise ShapeError(f"gradient shape {grad.shape} does not match the stack output")

    grads: List[Optional[LayerGradient]] = [None] * len(stack)
    for index in range(len(stack) - 1, -1, -1):
        layer = stack[index]
        entry = cache.entries[index]
        if entry.mask is not None:
            grad = grad * entry.mask
        grad_z = grad * layer.activation_derivative(entry.z, entry.a)
        if layer.trainable:
            grads[index] = LayerGradient(
                weights=np.outer(grad_z, entry.x),
                bias=grad_z.copy() if layer.bias is not None else None,
            )
        grad = layer.weights.T @ grad_z

    return grads, grad


def init_dense(
    in_features: int,
    out_features: int,
    activation: Activation,
    rng: np.random.Generator,
    *,
    scale: float = 1.0,
    dropout: bool = False,
) -> DenseLayer:
    """Trainable layer with weights and bias uniform in ``±1/√in_features``."""

    bound = 1.0 / np.sqrt(in_features)
    return DenseLayer(
        weights=rng.uniform(-bound, bound, size=(out_features, in_features)),
        bias=rng.uniform(-bound, bound, size=out_features),
        activation=activation,
        trainable=True,
        scale=scale,
        dropout=dropout,
    )


def dense_weights(layer: DenseLayer) -> np.ndarray:
    """Weight matrix of ``layer`` as a dense array."""

    weights = layer.weights
    return weights.toarray() if sparse.issparse(weights) else weights


def snapshot_layers(stack: Sequence[DenseLayer]) -> Dict[str, Any]:
    """Flat JSON-friendly description of ``stack`` (row-major weights)."""

    return {
        "layers": [
            {
                "shape": [layer.out_features, layer.in_features],
                "activation": layer.activation.value,
                "scale": layer.scale,
                "trainable": layer.trainable,
                "dropout": layer.dropout,
                "weights": dense_weights(layer).ravel().tolist(),
                "bias": None if layer.bias is None else layer.bias.tolist(),
            }
            for layer in stack
        ]
    }


def restore_layers(snapshot: Dict[str, Any]) -> List[DenseLayer]:
    layers = []
    for entry in snapshot["layers"]:
        rows, cols = entry["shape"]
        layers.append(
            DenseLayer(
                weights=np.asarray(entry["weights"], dtype=np.float64).reshape(rows, cols),
                bias=None if entry.get("bias") is None else np.asarray(entry["bias"], dtype=np.float64),
                activation=Activation(entry["activation"]),
                trainable=bool(entry["trainable"]),
                scale=float(entry.get("scale", 1.0)),
                dropout=bool(entry.get("dropout", False)),
            )
        )
    return layers


__all__ = [
    "Activation",
    "DenseLayer",
    "DropoutSpec",
    "ForwardCache",
    "INFERENCE",
    "LayerGradient",
    "Mode",
    "ShapeError",
    "StaleCacheError",
    "backward",
    "dense_weights",
    "forward",
    "init_dense",
    "restore_layers",
    "snapshot_layers",
]
