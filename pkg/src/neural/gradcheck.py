"""Central finite-difference oracle for the analytic layer gradients."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .layers import INFERENCE, Activation, DenseLayer, ForwardCache, LayerGradient, backward, forward


LossFn = Callable[[np.ndarray], Tuple[float, np.ndarray]]


@dataclass(frozen=True)
class GradCheckReport:
    passed: bool
    worst_rel_error: float
    worst_param: Optional[Tuple[int, str, int]]
    checked: int
    skipped: int
    tolerance: float


def _kink_signature(stack: Sequence[DenseLayer], cache: ForwardCache, grad_output: np.ndarray) -> Tuple[bytes, ...]:
    # ReLU sign patterns plus the active loss components
    parts = [
        np.packbits(entry.z > 0.0).tobytes()
        for layer, entry in zip(stack, cache.entries)
        if layer.activation is Activation.RELU
    ]
    parts.append(np.packbits(grad_output != 0.0).tobytes())
    return tuple(parts)


def _evaluate(stack: Sequence[DenseLayer], loss_fn: LossFn, x: np.ndarray) -> Tuple[float, Tuple[bytes, ...]]:
    output, cache = forward(stack, x, INFERENCE)
    loss, grad_output = loss_fn(output)
    return loss, _kink_signature(stack, cache, grad_output)


def _iter_parameters(stack: Sequence[DenseLayer]) -> Iterator[Tuple[int, str, np.ndarray]]:
    for index, layer in enumerate(stack):
        for name, param in layer.parameters().items():
            yield index, name, param


def analytic_gradients(
    stack: Sequence[DenseLayer], loss_fn: LossFn, x: np.ndarray
) -> List[Optional[LayerGradient]]:
    output, cache = forward(stack, x, INFERENCE)
    _, grad_output = loss_fn(output)
    grads, _ = backward(stack, cache, grad_output)
    return grads


def fd_gradient_check(
    stack: Sequence[DenseLayer],
    loss_fn: LossFn,
    x: np.ndarray,
    step: float = 1e-4,
    tolerance: float = 1e-4,
    *,
    analytic: Optional[Sequence[Optional[LayerGradient]]] = None,
    floor_ratio: float = 1e-3,
) -> GradCheckReport:
    """Compare analytic parameter gradients with central differences.

    Dropout is never applied. The relative error of a parameter is
    ``|a - f| / max(|a|, |f|, floor_ratio · max|f|)``. Parameters whose ±step
    evaluations land on different sides of a ReLU or hinge kink are counted
    as ``skipped``: a finite difference across a kink does not estimate the
    derivative.
    """

    x = np.asarray(x, dtype=np.float64)
    if analytic is None:
        analytic = analytic_gradients(stack, loss_fn, x)
    _, base_signature = _evaluate(stack, loss_fn, x)

    records: List[Tuple[int, str, int, float, float]] = []
    skipped = 0
    for index, name, param in _iter_parameters(stack):
        grad = analytic[index]
        grad_array = None if grad is None else grad.as_dict().get(name)
        flat = param.reshape(-1)
        for position in range(flat.size):
            original = flat[position]
            flat[position] = original + step
            loss_plus, sig_plus = _evaluate(stack, loss_fn, x)
            flat[position] = original - step
            loss_minus, sig_minus = _evaluate(stack, loss_fn, x)
            flat[position] = original
            if sig_plus != base_signature or sig_minus != base_signature:
                skipped += 1
                continue
            numeric = (loss_plus - loss_minus) / (2.0 * step)
            value = 0.0 if grad_array is None else float(grad_array.reshape(-1)[position])
            records.append((index, name, position, value, numeric))

    if not records:
        return GradCheckReport(True, 0.0, None, 0, skipped, tolerance)

    scale = max(abs(numeric) for *_, numeric in records)
    floor = max(floor_ratio * scale, np.finfo(np.float64).tiny)
    worst = 0.0
    worst_param: Optional[Tuple[int, str, int]] = None
    for index, name, position, value, numeric in records:
        error = abs(value - numeric) / max(abs(value), abs(numeric), floor)
        if error > worst or worst_param is None:
            worst = error
            worst_param = (index, name, position)

    return GradCheckReport(
        passed=worst <= tolerance,
        worst_rel_error=worst,
        worst_param=worst_param,
        checked=len(records),
        skipped=skipped,
        tolerance=tolerance,
    )


__all__ = ["GradCheckReport", "analytic_gradients", "fd_gradient_check"]
