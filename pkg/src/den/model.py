"""Distance Encoder Network: trainable autoencoder plus fixed distance calculator.

The autoencoder maps the flattened initial coordinates through
``n·N → 64 → 36 → 18 → 9 → 18 → 36 → 64 → n·N`` (ReLU hidden layers, bias in
every layer, ``L·tanh`` on the output) to new coordinates. The calculator
turns those coordinates into squared pair distances with two fixed layers:
a difference layer (weights in {-1, 0, +1}, square activation) and a sum
layer (weights in {0, +1}).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy import sparse

from ..embedding.feasibility import DimensionMismatchError
from ..graphs.core import pair_arrays, pair_count, pair_index
from ..neural.layers import (
    INFERENCE,
    Activation,
    DenseLayer,
    DropoutSpec,
    ForwardCache,
    LayerGradient,
    Mode,
    backward,
    forward,
    init_dense,
)


AUTOENCODER_WIDTHS: Tuple[int, ...] = (64, 36, 18, 9, 18, 36, 64)


@dataclass
class DenModel:
    n: int
    dim: int
    L: float
    p_drop: float
    autoencoder: List[DenseLayer]
    distance_calculator: List[DenseLayer]

    @property
    def layers(self) -> List[DenseLayer]:
        return [*self.autoencoder, *self.distance_calculator]

    @property
    def input_size(self) -> int:
        return self.n * self.dim


@dataclass(frozen=True)
class DenPass:
    """Result of one forward pass: coordinates' layer and squared distances."""

    coords: np.ndarray
    v: np.ndarray
    autoencoder_cache: ForwardCache
    calculator_cache: ForwardCache


def difference_slot(i: int, j: int, axis: int, n: int) -> int:
    """Row of the difference layer holding ``p_i[axis] - p_j[axis]``."""

    return axis * pair_count(n) + pair_index(i, j, n)


def difference_layer(n: int, dim: int) -> DenseLayer:
    pairs = pair_count(n)
    rows, cols = pair_arrays(n)
    slots = np.arange(pairs)
    out_rows = np.concatenate([axis * pairs + np.concatenate([slots, slots]) for axis in range(dim)])
    in_cols = np.concatenate([np.concatenate([axis * n + rows, axis * n + cols]) for axis in range(dim)])
    values = np.tile(np.concatenate([np.ones(pairs), -np.ones(pairs)]), dim)
    weights = sparse.csr_matrix((values, (out_rows, in_cols)), shape=(dim * pairs, dim * n))
    return DenseLayer(weights=weights, bias=None, activation=Activation.SQUARE, trainable=False)


def sum_layer(n: int, dim: int) -> DenseLayer:
    pairs = pair_count(n)
    slots = np.arange(pairs)
    out_rows = np.tile(slots, dim)
    in_cols = np.concatenate([axis * pairs + slots for axis in range(dim)])
    weights = sparse.csr_matrix((np.ones(dim * pairs), (out_rows, in_cols)), shape=(pairs, dim * pairs))
    return DenseLayer(weights=weights, bias=None, activation=Activation.IDENTITY, trainable=False)


def build(n: int, dim: int, L: float, p_drop: float, rng: Optional[np.random.Generator] = None) -> DenModel:
    """Assemble a freshly initialized model for ``n`` vertices in ``dim`` dimensions."""

    if n < 2:
        raise ValueError("the network needs at least two vertices")
    if dim not in (2, 3):
        raise ValueError("dim must be 2 or 3")
    DropoutSpec(p_drop)  # validates the range
    rng = rng or np.random.default_rng()

    widths = (n * dim, *AUTOENCODER_WIDTHS, n * dim)
    autoencoder: List[DenseLayer] = []
    for index, (fan_in, fan_out) in enumerate(zip(widths[:-1], widths[1:])):
        last = index == len(widths) - 2
        autoencoder.append(
            init_dense(
                fan_in,
                fan_out,
                Activation.SCALED_TANH if last else Activation.RELU,
                rng,
                scale=L if last else 1.0,
                dropout=not last,
            )
        )

    return DenModel(
        n=n,
        dim=dim,
        L=L,
        p_drop=p_drop,
        autoencoder=autoencoder,
        distance_calculator=[difference_layer(n, dim), sum_layer(n, dim)],
    )


def flatten_coords(coords: np.ndarray) -> np.ndarray:
    """Axis-major layout: all x components, then all y, then all z."""

    coords = np.asarray(coords, dtype=np.float64)
    if coords.ndim != 2 or coords.shape[1] not in (2, 3):
        raise DimensionMismatchError(f"Koordinaten der Form (n, 2|3) erwartet, nicht {coords.shape}")
    return coords.T.reshape(-1).copy()


def unflatten_coords(vector: np.ndarray, n: int, dim: int) -> np.ndarray:
    vector = np.asarray(vector, dtype=np.float64)
    if vector.shape != (n * dim,):
        raise DimensionMismatchError(f"Vektor der Länge {n * dim} erwartet, nicht {vector.shape}")
    return vector.reshape(dim, n).T.copy()


def squared_distances(model: DenModel, coords: np.ndarray) -> np.ndarray:
    """Feed coordinates straight into the distance calculator."""

    v, _ = forward(model.distance_calculator, flatten_coords(coords), INFERENCE)
    return v


def den_forward(
    model: DenModel,
    inputs: np.ndarray,
    mode: Mode = Mode.INFERENCE,
    rng: Optional[np.random.Generator] = None,
) -> DenPass:
    """Run the autoencoder and the calculator; inference is deterministic."""

    inputs = np.asarray(inputs, dtype=np.float64)
    if inputs.shape != (model.input_size,):
        raise DimensionMismatchError(f"Eingabe der Länge {model.input_size} erwartet, nicht {inputs.shape}")
    spec = DropoutSpec(model.p_drop, Mode(mode))
    output, encoder_cache = forward(model.autoencoder, inputs, spec, rng)
    v, calculator_cache = forward(model.distance_calculator, output, INFERENCE)
    return DenPass(
        coords=unflatten_coords(output, model.n, model.dim),
        v=v,
        autoencoder_cache=encoder_cache,
        calculator_cache=calculator_cache,
    )


def den_backward(model: DenModel, den_pass: DenPass, grad_v: np.ndarray) -> List[Optional[LayerGradient]]:
    """Gradients of the autoencoder parameters given ``∂loss/∂v``."""

    _, grad_output = backward(model.distance_calculator, den_pass.calculator_cache, grad_v)
    grads, _ = backward(model.autoencoder, den_pass.autoencoder_cache, grad_output)
    return grads


__all__ = [
    "AUTOENCODER_WIDTHS",
    "DenModel",
    "DenPass",
    "build",
    "den_backward",
    "den_forward",
    "difference_layer",
    "difference_slot",
    "flatten_coords",
    "squared_distances",
    "sum_layer",
    "unflatten_coords",
]
