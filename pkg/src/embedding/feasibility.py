"""Feasibility check and objective of a register embedding.

An adjacent pair is feasible when its distance lies in ``[D_min, D_adj]``, a
non-adjacent pair when it lies in ``[D_adj + ε, 2L]``. Every comparison is
made on squared distances without extra tolerance: the hardware accepts no
approximately feasible positions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..graphs.core import Graph, Pair, pair_arrays


class DimensionMismatchError(ValueError):
    """Raised when coordinates do not fit the graph or the dimensionality."""


@dataclass(frozen=True)
class DomainParams:
    """Hardware feasibility domain, lengths in μm."""

    d_min: float = 4.0
    d_adj: float = 10.26
    L: float = 50.0
    epsilon: float = 0.1
    iota: float = 1.0

    def __post_init__(self) -> None:
        if not 0 < self.d_min < self.d_adj < 2 * self.L:
            raise ValueError("expected 0 < D_min < D_adj < 2L")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.iota <= 0:
            raise ValueError("iota must be positive")

    @property
    def penalty(self) -> float:
        """Objective weight of a single violated pair, ``2L - D_min + ι``."""

        return 2 * self.L - self.d_min + self.iota

    def to_dict(self) -> Dict[str, float]:
        return {
            "d_min": self.d_min,
            "d_adj": self.d_adj,
            "L": self.L,
            "epsilon": self.epsilon,
            "iota": self.iota,
        }


@dataclass(frozen=True)
class Embedding:
    """Coordinates of the ``n`` vertices in ``N`` dimensions (μm)."""

    coords: np.ndarray

    def __post_init__(self) -> None:
        coords = np.array(self.coords, dtype=np.float64)
        if coords.ndim != 2 or coords.shape[1] not in (2, 3):
            raise DimensionMismatchError(f"Koordinaten müssen die Form (n, 2) oder (n, 3) haben, nicht {coords.shape}")
        if not np.all(np.isfinite(coords)):
            raise ValueError("coordinates must be finite")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    @property
    def n(self) -> int:
        return int(self.coords.shape[0])

    @property
    def dim(self) -> int:
        return int(self.coords.shape[1])

    def to_list(self) -> List[List[float]]:
        return self.coords.tolist()


@dataclass(frozen=True)
class FeasibilityReport:
    """Evaluation of one embedding against the programming model."""

    delta: np.ndarray = field(repr=False)
    d_adj: float
    d_nadj: float
    gap: float
    objective: float
    coord_domain_ok: bool
    violations: Tuple[Pair, ...] = ()

    @property
    def feasible(self) -> bool:
        return not bool(self.delta.any()) and self.coord_domain_ok

    @property
    def violation_count(self) -> int:
        return int(self.delta.sum())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "feasible": self.feasible,
            "gap": self.gap,
            "d_adj": self.d_adj,
            "d_nadj": self.d_nadj,
            "objective": self.objective,
            "coord_domain_ok": self.coord_domain_ok,
            "violations": [[i, j] for i, j in self.violations],
        }


def squared_pair_distances(coords: np.ndarray) -> np.ndarray:
    """Squared Euclidean distance of every pair, in lexicographic pair order."""

    coords = np.asarray(coords, dtype=np.float64)
    rows, cols = pair_arrays(coords.shape[0])
    diff = coords[rows] - coords[cols]
    return np.einsum("ij,ij->i", diff, diff)


def adjacency_gap(
    d_adj: Optional[float],
    d_nadj: Optional[float],
    params: DomainParams,
) -> Tuple[float, float, float]:
    """Return ``(d_adj, d_nadj, gap)`` with the domain bounds for empty pair sets.

    ``d_adj`` falls back to ``D_min`` when the graph has no edges and
    ``d_nadj`` to ``2L`` when every pair is adjacent.
    """

    resolved_adj = params.d_min if d_adj is None else float(d_adj)
    resolved_nadj = 2 * params.L if d_nadj is None else float(d_nadj)
    return resolved_adj, resolved_nadj, resolved_nadj - resolved_adj


def objective_value(report: FeasibilityReport, params: DomainParams) -> float:
    """``(2L - D_min + ι)·Σδ + d_adj - d_nadj``; lower is better."""

    return params.penalty * report.violation_count + report.d_adj - report.d_nadj


def check_embedding(g: Graph, emb: Embedding, params: DomainParams) -> FeasibilityReport:
    """Classify every vertex pair and compute the distance statistics."""

    if emb.n != g.n:
        raise DimensionMismatchError(f"Graph hat {g.n} Knoten, die Einbettung aber {emb.n} Zeilen")

    sq = squared_pair_distances(emb.coords)
    adjacent = g.pair_adjacency()

    adj_ok = (sq >= params.d_min**2) & (sq <= params.d_adj**2)
    nadj_ok = (sq >= (params.d_adj + params.epsilon) ** 2) & (sq <= (2 * params.L) ** 2)
    delta = np.where(adjacent, ~adj_ok, ~nadj_ok).astype(np.int8)

    d_adj = math.sqrt(float(sq[adjacent].max())) if adjacent.any() else None
    d_nadj = math.sqrt(float(sq[~adjacent].min())) if (~adjacent).any() else None
    d_adj, d_nadj, gap = adjacency_gap(d_adj, d_nadj, params)

    coord_domain_ok = bool(np.all(np.abs(emb.coords) <= params.L))

    rows, cols = pair_arrays(g.n)
    flagged = np.nonzero(delta)[0]
    violations = tuple((int(rows[k]), int(cols[k])) for k in flagged)

    delta.setflags(write=False)
    objective = params.penalty * int(delta.sum()) + d_adj - d_nadj
    return FeasibilityReport(
        delta=delta,
        d_adj=d_adj,
        d_nadj=d_nadj,
        gap=gap,
        objective=objective,
        coord_domain_ok=coord_domain_ok,
        violations=violations,
    )


__all__ = [
    "DimensionMismatchError",
    "DomainParams",
    "Embedding",
    "FeasibilityReport",
    "adjacency_gap",
    "check_embedding",
    "objective_value",
    "squared_pair_distances",
]
