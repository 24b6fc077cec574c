"""Random unit disk instances gated by the necessary embedding conditions.

Points are sampled uniformly in a square of side ``l`` and every pair closer
than the threshold ``d`` becomes an edge. A sample is kept only if the
estimated maximum clique has at most 7 vertices, no vertex has more than 18
neighbours and the graph is connected; these bounds follow from the densest
(hexagonal) packing of the register for the default hardware parameters.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import List, Tuple

import networkx as nx
import numpy as np
from networkx.algorithms.approximation import max_clique

from ..pipeline.logging_utils import get_logger
from .core import Graph, pair_arrays


MAX_CLIQUE_SIZE = 7
MAX_DEGREE = 18

logger = get_logger("graphs.generator")


class GenerationError(RuntimeError):
    """Raised when no sample passed the condition gate within the retry budget."""


@dataclass(frozen=True)
class GeneratorConfig:
    """Sampling parameters, lengths in generator units."""

    n: int
    l: float
    d: float
    seed: int = 0
    max_retries: int = 1000

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.l <= 0:
            raise ValueError("l must be positive")
        if self.d <= 0:
            raise ValueError("d must be positive")
        if self.max_retries < 1:
            raise ValueError("max_retries must be at least 1")

    def to_dict(self) -> dict:
        return {"n": self.n, "l": self.l, "d": self.d, "seed": self.seed, "max_retries": self.max_retries}


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of the necessary-condition gate.

    ``clique_estimate`` is a lower bound on the maximum clique, so an accepted
    graph passed the gate but is not certified embeddable.
    """

    clique_estimate: int
    max_degree: int
    connected: bool

    @property
    def accepted(self) -> bool:
        return (
            self.clique_estimate <= MAX_CLIQUE_SIZE
            and self.max_degree <= MAX_DEGREE
            and self.connected
        )

    @property
    def failed_conditions(self) -> List[str]:
        failed = []
        if self.clique_estimate > MAX_CLIQUE_SIZE:
            failed.append("clique")
        if self.max_degree > MAX_DEGREE:
            failed.append("degree")
        if not self.connected:
            failed.append("connectivity")
        return failed


def estimate_clique(g: Graph) -> List[int]:
    """Return a clique found by the Ramsey-based approximation (Boppana–Halldórsson)."""

    if g.n == 0:
        return []
    return sorted(max_clique(g.to_networkx()))


def check_necessary_conditions(g: Graph) -> ConditionReport:
    """Evaluate the clique, degree and connectivity conditions on ``g``."""

    max_degree = int(g.degrees().max()) if g.n else 0
    connected = g.n > 0 and nx.is_connected(g.to_networkx())
    return ConditionReport(
        clique_estimate=len(estimate_clique(g)),
        max_degree=max_degree,
        connected=connected,
    )


def threshold_graph(points: np.ndarray, d: float) -> Graph:
    """Connect every pair of ``points`` whose Euclidean distance is at most ``d``."""

    points = np.asarray(points, dtype=np.float64)
    n = points.shape[0]
    rows, cols = pair_arrays(n)
    diff = points[rows] - points[cols]
    within = np.einsum("ij,ij->i", diff, diff) <= d * d
    return Graph.from_edges(n, zip(rows[within].tolist(), cols[within].tolist()))


def generate_instance(cfg: GeneratorConfig) -> Tuple[Graph, np.ndarray]:
    """Sample points until the threshold graph passes the condition gate.

    Returns the accepted graph together with the sampled coordinates (used
    by the scaling initializer). Every rejection resamples all points.
    """

    rng = np.random.default_rng(cfg.seed)
    rejections: Counter[str] = Counter()

    for attempt in range(1, cfg.max_retries + 1):
        points = rng.uniform(0.0, cfg.l, size=(cfg.n, 2))
        graph = threshold_graph(points, cfg.d)
        report = check_necessary_conditions(graph)
        if report.accepted:
            logger.debug(
                "Instanz n=%s nach %s Versuch(en) akzeptiert (M̂=%s, Δ=%s)",
                cfg.n,
                attempt,
                report.clique_estimate,
                report.max_degree,
            )
            return graph, points
        rejections.update(report.failed_conditions)

    details = ", ".join(f"{name}: {count}" for name, count in sorted(rejections.items()))
    raise GenerationError(
        f"Keine zulässige Instanz für n={cfg.n} nach {cfg.max_retries} Versuchen "
        f"(verletzte Bedingungen – {details})"
    )


__all__ = [
    "ConditionReport",
    "GenerationError",
    "GeneratorConfig",
    "MAX_CLIQUE_SIZE",
    "MAX_DEGREE",
    "check_necessary_conditions",
    "estimate_clique",
    "generate_instance",
    "threshold_graph",
]
