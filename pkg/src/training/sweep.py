"""Hyperparameter sweep: every learning rate × dropout × initializer trial per graph."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, List, Mapping, Optional, Sequence

import numpy as np
from tqdm import tqdm

from ..config import CFG, DEFAULT_CONFIG
from ..embedding.feasibility import DomainParams
from ..embedding.initializers import InitMethod
from ..graphs.core import Graph
from ..pipeline.logging_utils import get_logger
from ..pipeline.utils import derive_seed
from .trainer import TrialConfig, TrialResult, run_learning_phase


logger = get_logger("sweep")

DEFAULT_WORKERS = int(CFG.get("training", {}).get("workers", 0) or 0)


@dataclass(frozen=True)
class SweepGrid:
    """Trial template: the cartesian product of its three value lists."""

    learning_rates: Sequence[float] = (0.01, 0.001, 0.0001)
    dropout_probabilities: Sequence[float] = (0.3, 0.5, 0.7)
    inits: Sequence[InitMethod] = (InitMethod.SCALING, InitMethod.FR)
    epochs: int = 3000
    fr_k: float = 7.0
    fr_iterations: int = 1000

    def __post_init__(self) -> None:
        object.__setattr__(self, "learning_rates", tuple(float(v) for v in self.learning_rates))
        object.__setattr__(self, "dropout_probabilities", tuple(float(v) for v in self.dropout_probabilities))
        object.__setattr__(self, "inits", tuple(InitMethod(v) for v in self.inits))
        if not (self.learning_rates and self.dropout_probabilities and self.inits):
            raise ValueError("sweep grid must not be empty")
        if self.epochs < 0:
            raise ValueError("epochs must not be negative")

    @classmethod
    def from_config(cls, cfg: Optional[Mapping[str, Any]] = None, **overrides: Any) -> "SweepGrid":
        source = CFG if cfg is None else cfg
        training = {**DEFAULT_CONFIG["training"], **source.get("training", {})}
        fr = {**DEFAULT_CONFIG["initializers"]["fr"], **source.get("initializers", {}).get("fr", {})}
        values: Dict[str, Any] = {
            "learning_rates": training["learning_rates"],
            "dropout_probabilities": training["dropout_probabilities"],
            "inits": training["inits"],
            "epochs": int(training["epochs"]),
            "fr_k": float(fr["k"]),
            "fr_iterations": int(fr["iterations"]),
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)

    def __len__(self) -> int:
        return len(self.learning_rates) * len(self.dropout_probabilities) * len(self.inits)

    def trials(self, dim: int, master_seed: int) -> List[TrialConfig]:
        """Trial configurations in index order; seeds depend on (master seed, index)."""

        return [
            TrialConfig(
                lr=lr,
                p_drop=p_drop,
                init=init,
                epochs=self.epochs,
                dim=dim,
                seed=derive_seed(master_seed, index),
                fr_k=self.fr_k,
                fr_iterations=self.fr_iterations,
            )
            for index, (init, lr, p_drop) in enumerate(
                product(self.inits, self.learning_rates, self.dropout_probabilities)
            )
        ]


@dataclass
class SweepSummary:
    graph_id: str
    n: int
    dim: int
    master_seed: int
    configs: List[TrialConfig] = field(default_factory=list)
    trials: List[Optional[TrialResult]] = field(default_factory=list)
    errors: List[Dict[str, Any]] = field(default_factory=list)

    def completed(self) -> List[TrialResult]:
        return [trial for trial in self.trials if trial is not None]

    @property
    def success(self) -> bool:
        return any(trial.feasible for trial in self.completed())

    @property
    def best_index(self) -> Optional[int]:
        """Trial with the largest gap; the lower index wins a tie."""

        best: Optional[int] = None
        best_gap = 0.0
        for index, trial in enumerate(self.trials):
            if trial is None or not trial.feasible:
                continue
            if best is None or trial.best_gap > best_gap:  # type: ignore[operator]
                best, best_gap = index, trial.best_gap  # type: ignore[assignment]
        return best

    @property
    def max_gap(self) -> Optional[float]:
        index = self.best_index
        return None if index is None else self.trials[index].best_gap  # type: ignore[union-attr]

    @property
    def mean_trial_seconds(self) -> Optional[float]:
        completed = self.completed()
        if not completed:
            return None
        return float(np.mean([trial.trial_seconds for trial in completed]))

    @property
    def mean_epoch_ms(self) -> Optional[float]:
        values = [trial.mean_epoch_ms for trial in self.completed() if trial.mean_epoch_ms is not None]
        return float(np.mean(values)) if values else None

    def success_by_init(self) -> Dict[str, bool]:
        outcome: Dict[str, bool] = {}
        for config, trial in zip(self.configs, self.trials):
            key = config.init.value
            outcome[key] = outcome.get(key, False) or (trial is not None and trial.feasible)
        return outcome

    def to_dict(self) -> Dict[str, Any]:
        best_index = self.best_index
        best: Optional[Dict[str, Any]] = None
        if best_index is not None:
            trial = self.trials[best_index]
            best = {
                "trial_index": best_index,
                "gap": trial.best_gap,  # type: ignore[union-attr]
                "coords": trial.best_embedding.to_list(),  # type: ignore[union-attr]
            }
        records = []
        for config, trial in zip(self.configs, self.trials):
            records.append(
                {
                    "config": config.to_dict(),
                    "success": trial is not None and trial.feasible,
                    "first_feasible_epoch": None if trial is None else trial.first_feasible_epoch,
                    "best_gap": None if trial is None else trial.best_gap,
                    "mean_epoch_ms": None if trial is None else trial.mean_epoch_ms,
                }
            )
        return {
            "graph_id": self.graph_id,
            "n": self.n,
            "N": self.dim,
            "master_seed": self.master_seed,
            "success": self.success,
            "success_by_init": self.success_by_init(),
            "max_gap": self.max_gap,
            "mean_trial_s": self.mean_trial_seconds,
            "mean_epoch_ms": self.mean_epoch_ms,
            "trials": records,
            "best": best,
            "errors": self.errors,
        }


def run_sweep(
    g: Graph,
    params: DomainParams,
    grid: SweepGrid,
    dim: int = 2,
    *,
    coords: Optional[np.ndarray] = None,
    master_seed: int = 0,
    workers: Optional[int] = None,
    graph_id: str = "",
    show_progress: bool = False,
) -> SweepSummary:
    """Run every trial of ``grid`` on ``g`` and collect results by trial index.

    Trials share no mutable state, so they run in a thread pool when more
    than one worker is allowed. A failing trial is logged and recorded in
    ``errors``; the remaining trials still run.

    ``workers`` caps the thread pool (``None`` reads ``training.workers``,
    ``0``/``1`` runs sequentially). The trials are CPU-bound numpy code that
    holds the GIL for most of each epoch, so extra threads overlap only the
    BLAS and sparse kernels that release it. Expect well below linear
    speedup; results do not depend on the worker count.
    """

    configs = grid.trials(dim, master_seed)
    if coords is None and InitMethod.SCALING in grid.inits:
        raise ValueError("the scaling initializer needs the dataset coordinates")

    results: List[Optional[TrialResult]] = [None] * len(configs)
    summary = SweepSummary(graph_id=graph_id, n=g.n, dim=dim, master_seed=master_seed, configs=configs)

    def handle_failure(index: int, exc: BaseException) -> None:
        summary.errors.append({"trial": index, "error": str(exc)})

    effective = _effective_parallelism(workers)
    desc = f"Versuche {graph_id}" if graph_id else "Versuche"
    logger.info("Starte %s Versuche für Graph %s (n=%s, N=%s)", len(configs), graph_id or "-", g.n, dim)

    if effective:
        progress = tqdm(total=len(configs), desc=desc, unit="versuch", leave=False, disable=not show_progress)
        with ThreadPoolExecutor(max_workers=effective) as executor:
            futures = {
                executor.submit(run_learning_phase, g, params, cfg, coords): index
                for index, cfg in enumerate(configs)
            }
            for future in as_completed(futures):
                index = futures[future]
                try:
                    results[index] = future.result()
                except Exception as exc:  # noqa: BLE001
                    logger.exception("Versuch %s für Graph %s fehlgeschlagen", index, graph_id)
                    handle_failure(index, exc)
                progress.update(1)
        progress.close()
    else:
        iterator = tqdm(list(enumerate(configs)), desc=desc, unit="versuch", leave=False, disable=not show_progress)
        for index, cfg in iterator:
            try:
                results[index] = run_learning_phase(g, params, cfg, coords)
            except Exception as exc:  # noqa: BLE001
                logger.exception("Versuch %s für Graph %s fehlgeschlagen", index, graph_id)
                handle_failure(index, exc)

    summary.errors.sort(key=lambda entry: entry["trial"])
    summary.trials = results

    if summary.success:
        logger.info(
            "Graph %s: %s/%s Versuche zulässig, größte Lücke %.4f μm",
            graph_id or "-",
            sum(trial.feasible for trial in summary.completed()),
            len(configs),
            summary.max_gap,
        )
    else:
        logger.warning("Graph %s: keine zulässige Einbettung in %s Versuchen", graph_id or "-", len(configs))
    return summary


def _effective_parallelism(parallelism: Optional[int]) -> Optional[int]:
    if parallelism is None:
        parallelism = DEFAULT_WORKERS
    if not parallelism or parallelism <= 1:
        return None
    cpu_count = os.cpu_count() or parallelism
    allowed = min(parallelism, cpu_count)
    return allowed if allowed > 1 else None


__all__ = ["SweepGrid", "SweepSummary", "run_sweep"]
