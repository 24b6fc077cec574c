"""Dataset-wide sweeps with per-graph summaries and aggregate reports."""

from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from tqdm import tqdm

from ..embedding.feasibility import DomainParams
from ..training.sweep import SweepGrid, run_sweep
from .dataset import Dataset, DatasetError
from .logging_utils import get_logger, setup_logging
from .reports import SUMMARY_SUFFIX, write_reports
from .utils import derive_seed, ensure_directory, write_json


logger = get_logger("experiments")


def summary_path(out_dir: Path, graph_id: str, dim: int) -> Path:
    return Path(out_dir) / f"{graph_id}_N{dim}{SUMMARY_SUFFIX}"


def sweep_dataset(
    dataset: Dataset,
    params: DomainParams,
    grid: SweepGrid,
    dim: int,
    out_dir: Path,
    *,
    master_seed: int = 0,
    workers: Optional[int] = None,
    graph_ids: Optional[Sequence[str]] = None,
    show_progress: bool = True,
) -> Dict[str, Any]:
    """Sweep every selected graph and write one summary JSON per graph.

    The sweep seed of a graph depends on the master seed and the graph's
    position in the dataset, so selecting a subset replays the same trials.
    A graph that fails is logged, listed under ``errors`` and skipped; the
    reports cover the remaining graphs.
    """

    setup_logging()
    out_dir = ensure_directory(Path(out_dir))

    positions = {entry.graph_id: position for position, entry in enumerate(dataset.entries)}
    if graph_ids:
        unknown = [graph_id for graph_id in graph_ids if graph_id not in positions]
        if unknown:
            raise DatasetError(f"Unbekannte Graph-IDs: {', '.join(unknown)}")
        selected = [entry for entry in dataset.entries if entry.graph_id in set(graph_ids)]
    else:
        selected = list(dataset.entries)

    summary: Dict[str, Any] = {
        "total": len(selected),
        "processed": 0,
        "feasible": 0,
        "trials": 0,
        "errors": [],
        "outputs": [],
        "summaries": [],
    }
    if not selected:
        logger.warning("Keine Graphen für den Durchlauf ausgewählt")

    logger.info(
        "Starte Durchlauf über %s Graphen mit je %s Versuchen (N=%s)", len(selected), len(grid), dim
    )
    summaries: List[Dict[str, Any]] = []
    iterator = tqdm(selected, desc="Graphen", unit="graph", disable=not show_progress)
    for entry in iterator:
        try:
            result = run_sweep(
                entry.graph,
                params,
                grid,
                dim,
                coords=entry.coords if entry.coords.size else None,
                master_seed=derive_seed(master_seed, positions[entry.graph_id]),
                workers=workers,
                graph_id=entry.graph_id,
            )
            payload = result.to_dict()
            path = write_json(summary_path(out_dir, entry.graph_id, dim), payload)
        except Exception as exc:  # noqa: BLE001
            logger.exception("Durchlauf für Graph %s fehlgeschlagen", entry.graph_id)
            summary["errors"].append({"graph": entry.graph_id, "error": str(exc)})
            continue
        summaries.append(payload)
        summary["processed"] += 1
        summary["trials"] += len(payload["trials"])
        summary["feasible"] += int(payload["success"])
        summary["outputs"].append(str(path))

    reports = write_reports(summaries, out_dir)
    summary["outputs"].extend(str(path) for path in reports.values())
    summary["summaries"] = summaries

    logger.info(
        "Durchlauf abgeschlossen – %s verarbeitet, %s zulässig, %s Fehler",
        summary["processed"],
        summary["feasible"],
        len(summary["errors"]),
    )
    return summary


__all__ = ["summary_path", "sweep_dataset"]
