"""Embedding Loss Function on squared pair distances.

``ELF = ELF_min + ELF_max``: the lower bounds (``D_min²`` for adjacent pairs,
``(D_adj + α)²`` otherwise) and the upper bounds (``D_adj²`` for adjacent
pairs, ``4L²`` otherwise) are each penalized with a margin ranking loss.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

import numpy as np

from ..embedding.feasibility import DomainParams, FeasibilityReport
from ..graphs.core import Graph
from ..neural.layers import LayerGradient, Mode, ShapeError
from ..neural.losses import margin_ranking_loss
from .model import DenModel, DenPass, den_backward, den_forward


class ContractViolation(RuntimeError):
    """Raised when an operation is called outside its precondition."""


@dataclass(frozen=True)
class ElfState:
    vt_min: np.ndarray
    vt_max: np.ndarray
    alpha: float
    adjacent: np.ndarray


def build_targets(g: Graph, params: DomainParams, alpha: float) -> ElfState:
    """Per-pair target vectors for the current clearance parameter ``alpha``."""

    if alpha < params.epsilon:
        raise ValueError(f"alpha={alpha} liegt unter epsilon={params.epsilon}")
    adjacent = g.pair_adjacency()
    vt_min = np.where(adjacent, params.d_min**2, (params.d_adj + alpha) ** 2)
    vt_max = np.where(adjacent, params.d_adj**2, 4.0 * params.L**2)
    return ElfState(vt_min=vt_min, vt_max=vt_max, alpha=float(alpha), adjacent=adjacent)


def elf(v: np.ndarray, state: ElfState) -> Tuple[float, np.ndarray]:
    """Loss value and exact subgradient with respect to ``v``."""

    v = np.asarray(v, dtype=np.float64)
    if v.shape != state.vt_min.shape:
        raise ShapeError(f"{state.vt_min.shape[0]} quadrierte Abstände erwartet, erhalten {v.shape}")
    ones = np.ones_like(v)
    loss_min, grad_min = margin_ranking_loss(v, state.vt_min, ones)
    loss_max, grad_max = margin_ranking_loss(v, state.vt_max, -ones)
    return loss_min + loss_max, grad_min + grad_max


def update_alpha(state: ElfState, report: FeasibilityReport, params: DomainParams) -> Tuple[ElfState, bool]:
    """Raise ``alpha`` to the clearance ``d_nadj - D_adj`` of a feasible embedding.

    ``alpha`` only grows; the returned flag tells whether it changed.
    """

    if not report.feasible:
        raise ContractViolation("update_alpha erwartet einen zulässigen Bericht")
    candidate = max(report.d_nadj - params.d_adj, params.epsilon)
    if candidate <= state.alpha:
        return state, False
    vt_min = np.where(state.adjacent, params.d_min**2, (params.d_adj + candidate) ** 2)
    return replace(state, vt_min=vt_min, alpha=float(candidate)), True


def den_loss_and_gradients(
    model: DenModel,
    inputs: np.ndarray,
    state: ElfState,
    mode: Mode = Mode.INFERENCE,
    rng: Optional[np.random.Generator] = None,
) -> Tuple[float, List[Optional[LayerGradient]], DenPass]:
    """Forward pass, ELF and autoencoder gradients in one call."""

    den_pass = den_forward(model, inputs, mode, rng)
    loss, grad_v = elf(den_pass.v, state)
    return loss, den_backward(model, den_pass, grad_v), den_pass


__all__ = [
    "ContractViolation",
    "ElfState",
    "build_targets",
    "den_loss_and_gradients",
    "elf",
    "update_alpha",
]
