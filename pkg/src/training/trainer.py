"""Learning phase: train/inference alternation with best-embedding tracking."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from ..den.elf import ContractViolation, build_targets, den_loss_and_gradients, update_alpha
from ..den.model import build, den_forward, flatten_coords
from ..embedding.feasibility import DomainParams, Embedding, FeasibilityReport, check_embedding
from ..embedding.initializers import FrConfig, InitMethod, initial_embedding
from ..graphs.core import Graph
from ..neural.layers import Mode, snapshot_layers
from ..neural.optim import AdamWState, adamw_step
from ..pipeline.logging_utils import get_logger


logger = get_logger("training")


@dataclass(frozen=True)
class TrialConfig:
    """Hyperparameters of one learning phase."""

    lr: float
    p_drop: float
    init: InitMethod
    epochs: int = 3000
    dim: int = 2
    seed: int = 0
    fr_k: float = 7.0
    fr_iterations: int = 1000
    keep_snapshot: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "init", InitMethod(self.init))
        if self.lr < 0:
            raise ValueError("lr must not be negative")
        if not 0.0 <= self.p_drop < 1.0:
            raise ValueError("p_drop must lie in [0, 1)")
        if self.epochs < 0:
            raise ValueError("epochs must not be negative")
        if self.dim not in (2, 3):
            raise ValueError("dim must be 2 or 3")

    def fr_config(self) -> FrConfig:
        return FrConfig(k=self.fr_k, iterations=self.fr_iterations, dim=self.dim, seed=self.seed)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lr": self.lr,
            "p_drop": self.p_drop,
            "init": self.init.value,
            "epochs": self.epochs,
            "dim": self.dim,
            "seed": self.seed,
        }


@dataclass
class TrialResult:
    """Outcome of a learning phase; epochs are counted from 1."""

    config: TrialConfig
    best_embedding: Optional[Embedding] = None
    best_report: Optional[FeasibilityReport] = None
    best_epoch: Optional[int] = None
    first_feasible_epoch: Optional[int] = None
    alpha_trace: List[float] = field(default_factory=list)
    elf_trace: List[float] = field(default_factory=list)
    gap_trace: List[Optional[float]] = field(default_factory=list)
    epoch_wall_times: List[float] = field(default_factory=list)
    init_seconds: float = 0.0
    snapshot: Optional[Dict[str, Any]] = None

    @property
    def feasible(self) -> bool:
        return self.best_embedding is not None

    @property
    def best_gap(self) -> Optional[float]:
        return None if self.best_report is None else self.best_report.gap

    @property
    def trial_seconds(self) -> float:
        return float(sum(self.epoch_wall_times))

    @property
    def mean_epoch_ms(self) -> Optional[float]:
        if not self.epoch_wall_times:
            return None
        return 1000.0 * self.trial_seconds / len(self.epoch_wall_times)

    def to_dict(self, include_traces: bool = True) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "config": self.config.to_dict(),
            "success": self.feasible,
            "first_feasible_epoch": self.first_feasible_epoch,
            "best_epoch": self.best_epoch,
            "best_gap": self.best_gap,
            "mean_epoch_ms": self.mean_epoch_ms,
            "trial_seconds": self.trial_seconds,
            "init_seconds": self.init_seconds,
            "best": None,
        }
        if self.best_embedding is not None and self.best_report is not None:
            payload["best"] = {
                "coords": self.best_embedding.to_list(),
                "report": self.best_report.to_dict(),
            }
        if include_traces:
            payload["traces"] = {
                "alpha": self.alpha_trace,
                "elf": self.elf_trace,
                "best_gap": self.gap_trace,
                "epoch_seconds": self.epoch_wall_times,
            }
        if self.snapshot is not None:
            payload["snapshot"] = self.snapshot
        return payload


def run_learning_phase(
    g: Graph,
    params: DomainParams,
    cfg: TrialConfig,
    coords: Optional[np.ndarray] = None,
) -> TrialResult:
    """Train a fresh model on ``g`` for ``cfg.epochs`` epochs.

    Each epoch runs a dropout training step (ELF, backward, AdamW) followed
    by a deterministic inference step whose coordinates are checked for
    feasibility. A feasible embedding with a strictly larger gap replaces
    the stored best one and raises α for the following epochs. There is no
    early stop. ``coords`` are the dataset coordinates required by the
    scaling initializer.
    """

    result = TrialResult(config=cfg)
    started = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    initial = initial_embedding(cfg.init, g, params.L, cfg.dim, coords=coords, fr_config=cfg.fr_config())
    model = build(g.n, cfg.dim, params.L, cfg.p_drop, rng)
    optimizer = AdamWState(lr=cfg.lr)
    state = build_targets(g, params, params.epsilon)
    inputs = flatten_coords(initial.coords)
    result.init_seconds = time.perf_counter() - started

    for epoch in range(1, cfg.epochs + 1):
        epoch_started = time.perf_counter()

        loss, grads, _ = den_loss_and_gradients(model, inputs, state, Mode.TRAINING, rng)
        adamw_step(optimizer, model.autoencoder, grads)

        inference = den_forward(model, inputs, Mode.INFERENCE)
        embedding = Embedding(inference.coords)
        report = check_embedding(g, embedding, params)
        if report.feasible:
            if result.first_feasible_epoch is None:
                result.first_feasible_epoch = epoch
                logger.debug("Erste zulässige Einbettung in Epoche %s (Lücke %.4f μm)", epoch, report.gap)
            if result.best_report is None or report.gap > result.best_report.gap:
                result.best_embedding = embedding
                result.best_report = report
                result.best_epoch = epoch
                state, raised = update_alpha(state, report, params)
                if raised:
                    logger.debug("Epoche %s: α auf %.4f μm erhöht", epoch, state.alpha)
                if cfg.keep_snapshot:
                    result.snapshot = snapshot_layers(model.autoencoder)

        result.epoch_wall_times.append(time.perf_counter() - epoch_started)
        result.elf_trace.append(loss)
        result.alpha_trace.append(state.alpha)
        result.gap_trace.append(result.best_gap)

    if result.best_embedding is not None:
        recheck = check_embedding(g, result.best_embedding, params)
        if not recheck.feasible or recheck.gap != result.best_gap:
            raise ContractViolation("gespeicherte Einbettung besteht die Nachprüfung nicht")
        logger.info(
            "Versuch lr=%s p_drop=%s init=%s: zulässig ab Epoche %s, beste Lücke %.4f μm",
            cfg.lr,
            cfg.p_drop,
            cfg.init.value,
            result.first_feasible_epoch,
            result.best_gap,
        )
    else:
        logger.info(
            "Versuch lr=%s p_drop=%s init=%s: keine zulässige Einbettung in %s Epochen",
            cfg.lr,
            cfg.p_drop,
            cfg.init.value,
            cfg.epochs,
        )
    return result


__all__ = ["TrialConfig", "TrialResult", "run_learning_phase"]
