"""Initial coordinates for the learning phase: scaling and Fruchterman–Reingold."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from ..graphs.core import Graph
from .feasibility import DimensionMismatchError, Embedding


MIN_PAIR_DISTANCE = 1e-9


class InitMethod(str, Enum):
    """Available initializers."""

    SCALING = "scaling"
    FR = "fr"


@dataclass(frozen=True)
class FrConfig:
    """Fruchterman–Reingold settings; ``k`` is the equilibrium distance (μm)."""

    k: float = 7.0
    iterations: int = 1000
    dim: int = 2
    seed: int = 0

    def __post_init__(self) -> None:
        if self.k <= 0:
            raise ValueError("k must be positive")
        if self.iterations < 0:
            raise ValueError("iterations must not be negative")
        if self.dim not in (2, 3):
            raise ValueError("dim must be 2 or 3")


def scale_to_disk(coords: np.ndarray, L: float, dim: int) -> Embedding:
    """Center ``coords`` on their centroid and scale the farthest point to radius ``L``.

    2D input requested in 3D gets a zero z column. A single point (or a set of
    identical points) maps to the origin.
    """

    points = np.asarray(coords, dtype=np.float64)
    if points.ndim != 2 or points.shape[0] == 0:
        raise DimensionMismatchError("mindestens ein Punkt mit 2 oder 3 Koordinaten erwartet")
    if dim not in (2, 3):
        raise DimensionMismatchError(f"Dimension {dim} wird nicht unterstützt")
    if points.shape[1] > dim:
        raise DimensionMismatchError(f"{points.shape[1]}D-Koordinaten lassen sich nicht auf {dim}D abbilden")
    if points.shape[1] < dim:
        points = np.hstack([points, np.zeros((points.shape[0], dim - points.shape[1]))])

    centered = points - points.mean(axis=0)
    radius = float(np.linalg.norm(centered, axis=1).max())
    if radius == 0.0:
        return Embedding(np.zeros_like(centered))
    scaled = centered * (L / radius)
    # rounding may push the farthest point a hair beyond L
    np.clip(scaled, -L, L, out=scaled)
    return Embedding(scaled)


def fr_layout(g: Graph, cfg: FrConfig, initial: Optional[np.ndarray] = None) -> np.ndarray:
    """Run the force iterations and return the raw (unscaled) layout.

    The displacement of vertex i is ``Σ_j (p_i − p_j)(k²/d_ij² − A_ij·d_ij/k)``:
    repulsion of module ``k²/d²`` on every pair, attraction of module ``d/k``
    on adjacent pairs, balancing at ``d = k``. The step length is capped by a
    temperature that decays linearly to zero.
    """

    rng = np.random.default_rng(cfg.seed)
    n = g.n
    if initial is None:
        pos = rng.uniform(0.0, 1.0, size=(n, cfg.dim))
    else:
        pos = np.array(initial, dtype=np.float64)
        if pos.shape != (n, cfg.dim):
            raise DimensionMismatchError(f"Startpositionen haben die Form {pos.shape}, erwartet {(n, cfg.dim)}")
    if n <= 1 or cfg.iterations == 0:
        return pos

    adjacency = g.adjacency.astype(np.float64)
    k = cfg.k
    span = float((pos.max(axis=0) - pos.min(axis=0)).max())
    temperature = 0.1 * max(span, k * math.sqrt(n))
    cooling = temperature / (cfg.iterations + 1)

    for _ in range(cfg.iterations):
        delta = pos[:, np.newaxis, :] - pos[np.newaxis, :, :]
        distance = np.linalg.norm(delta, axis=-1)
        np.fill_diagonal(distance, 1.0)
        close = distance < MIN_PAIR_DISTANCE
        if close.any():
            # coincident vertices get pushed apart along a random direction
            i_idx, j_idx = np.nonzero(np.triu(close, k=1))
            for i, j in zip(i_idx.tolist(), j_idx.tolist()):
                direction = rng.normal(size=cfg.dim)
                direction *= MIN_PAIR_DISTANCE / np.linalg.norm(direction)
                delta[i, j] = direction
                delta[j, i] = -direction
            distance = np.where(close, MIN_PAIR_DISTANCE, distance)
        coefficient = k * k / distance**2 - adjacency * distance / k
        np.fill_diagonal(coefficient, 0.0)
        displacement = np.einsum("ijk,ij->ik", delta, coefficient)
        length = np.linalg.norm(displacement, axis=-1)
        length = np.where(length < 1e-12, 1e-12, length)
        pos += displacement * (np.minimum(length, temperature) / length)[:, np.newaxis]
        temperature -= cooling

    return pos


def fruchterman_reingold(
    g: Graph,
    cfg: FrConfig,
    L: float,
    initial: Optional[np.ndarray] = None,
) -> Embedding:
    """Force-directed layout rescaled into the register disk of radius ``L``."""

    return scale_to_disk(fr_layout(g, cfg, initial=initial), L, cfg.dim)


def initial_embedding(
    method: InitMethod | str,
    g: Graph,
    L: float,
    dim: int,
    coords: Optional[np.ndarray] = None,
    fr_config: Optional[FrConfig] = None,
) -> Embedding:
    """Dispatch to the chosen initializer; scaling needs the dataset coordinates."""

    method = InitMethod(method)
    if method is InitMethod.SCALING:
        if coords is None:
            raise ValueError("Die Skalierungs-Initialisierung benötigt die Koordinaten des Datensatzes")
        return scale_to_disk(coords, L, dim)
    cfg = fr_config or FrConfig(dim=dim)
    if cfg.dim != dim:
        cfg = FrConfig(k=cfg.k, iterations=cfg.iterations, dim=dim, seed=cfg.seed)
    return fruchterman_reingold(g, cfg, L)


__all__ = [
    "FrConfig",
    "InitMethod",
    "fr_layout",
    "fruchterman_reingold",
    "initial_embedding",
    "scale_to_disk",
]
