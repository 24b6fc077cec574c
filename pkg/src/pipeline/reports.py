"""Aggregate CSV reports over per-graph sweep summaries.

All reports group graphs by ``(n, N)``. ``success.csv``,
``first_feasible.csv`` and ``gaps.csv`` depend only on trial outcomes and are
byte-identical under replay; ``timing.csv`` carries wall-clock numbers.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .logging_utils import get_logger
from .utils import atomic_write_text, ensure_directory, read_json


logger = get_logger("reports")

SUCCESS_FIELDS = ["n", "N", "init", "graphs", "feasible_graphs", "success_pct"]
FIRST_FEASIBLE_FIELDS = ["n", "N", "trials_feasible", "min", "q1", "median", "q3", "max", "mean"]
TIMING_FIELDS = ["n", "N", "trials", "mean_trial_s", "mean_epoch_ms"]
GAP_FIELDS = ["n", "N", "graphs_feasible", "gap_min", "gap_mean", "gap_max"]

REPORT_FILES = {
    "success": "success.csv",
    "first_feasible": "first_feasible.csv",
    "timing": "timing.csv",
    "gaps": "gaps.csv",
}

SUMMARY_SUFFIX = ".summary.json"


def _fmt(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.6f}"


def _group(summaries: Iterable[Mapping[str, Any]]) -> List[Tuple[Tuple[int, int], List[Mapping[str, Any]]]]:
    groups: Dict[Tuple[int, int], List[Mapping[str, Any]]] = {}
    for summary in summaries:
        groups.setdefault((int(summary["n"]), int(summary["N"])), []).append(summary)
    return sorted(groups.items())


def _init_order(group: Sequence[Mapping[str, Any]]) -> List[str]:
    order: List[str] = []
    for summary in group:
        for trial in summary.get("trials", []):
            init = trial["config"]["init"]
            if init not in order:
                order.append(init)
    return order


def success_rows(summaries: Iterable[Mapping[str, Any]]) -> List[Dict[str, Any]]:
    """Share of graphs with at least one feasible trial, per init and overall."""

    rows = []
    for (n, dim), group in _group(summaries):
        graphs = len(group)
        for init in _init_order(group):
            feasible = sum(1 for summary in group if summary.get("success_by_init", {}).get(init, False))
            rows.append(
                {
                    "n": n,
                    "N": dim,
                    "init": init,
                    "graphs": graphs,
                    "feasible_graphs": feasible,
                    "success_pct": _fmt(100.0 * feasible / graphs),
                }
            )
        feasible = sum(1 for summary in group if summary.get("success"))
        rows.append(
            {
                "n": n,
                "N": dim,
                "init": "all",
                "graphs": graphs,
                "feasible_graphs": feasible,
                "success_pct": _fmt(100.0 * feasible / graphs),
            }
        )
    return rows


def first_feasible_rows(summaries: Iterable[Mapping[str, Any]]) -> List[Dict[str, Any]]:
    rows = []
    for (n, dim), group in _group(summaries):
        epochs = [
            trial["first_feasible_epoch"]
            for summary in group
            for trial in summary.get("trials", [])
            if trial.get("first_feasible_epoch") is not None
        ]
        row: Dict[str, Any] = {"n": n, "N": dim, "trials_feasible": len(epochs)}
        if epochs:
            values = np.asarray(epochs, dtype=np.float64)
            q1, median, q3 = np.percentile(values, [25, 50, 75])
            row.update(
                {
                    "min": int(values.min()),
                    "q1": _fmt(q1),
                    "median": _fmt(median),
                    "q3": _fmt(q3),
                    "max": int(values.max()),
                    "mean": _fmt(values.mean()),
                }
            )
        else:
            row.update({key: "" for key in ("min", "q1", "median", "q3", "max", "mean")})
        rows.append(row)
    return rows


def timing_rows(summaries: Iterable[Mapping[str, Any]]) -> List[Dict[str, Any]]:
    rows = []
    for (n, dim), group in _group(summaries):
        trial_seconds = [summary["mean_trial_s"] for summary in group if summary.get("mean_trial_s") is not None]
        epoch_ms = [
            trial["mean_epoch_ms"]
            for summary in group
            for trial in summary.get("trials", [])
            if trial.get("mean_epoch_ms") is not None
        ]
        rows.append(
            {
                "n": n,
                "N": dim,
                "trials": sum(len(summary.get("trials", [])) for summary in group),
                "mean_trial_s": _fmt(float(np.mean(trial_seconds)) if trial_seconds else None),
                "mean_epoch_ms": _fmt(float(np.mean(epoch_ms)) if epoch_ms else None),
            }
        )
    return rows


def gap_rows(summaries: Iterable[Mapping[str, Any]]) -> List[Dict[str, Any]]:
    """Best gap per feasible graph, summarized per ``(n, N)``."""

    rows = []
    for (n, dim), group in _group(summaries):
        gaps = np.asarray(
            [summary["max_gap"] for summary in group if summary.get("max_gap") is not None], dtype=np.float64
        )
        rows.append(
            {
                "n": n,
                "N": dim,
                "graphs_feasible": int(gaps.size),
                "gap_min": _fmt(float(gaps.min()) if gaps.size else None),
                "gap_mean": _fmt(float(gaps.mean()) if gaps.size else None),
                "gap_max": _fmt(float(gaps.max()) if gaps.size else None),
            }
        )
    return rows


def _render_csv(fieldnames: Sequence[str], rows: Iterable[Mapping[str, Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(fieldnames), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def write_reports(summaries: Sequence[Mapping[str, Any]], out_dir: Path) -> Dict[str, Path]:
    """Write the four CSV reports into ``out_dir`` and return their paths."""

    out_dir = ensure_directory(Path(out_dir))
    tables = {
        "success": (SUCCESS_FIELDS, success_rows(summaries)),
        "first_feasible": (FIRST_FEASIBLE_FIELDS, first_feasible_rows(summaries)),
        "timing": (TIMING_FIELDS, timing_rows(summaries)),
        "gaps": (GAP_FIELDS, gap_rows(summaries)),
    }
    written: Dict[str, Path] = {}
    for name, (fieldnames, rows) in tables.items():
        path = out_dir / REPORT_FILES[name]
        atomic_write_text(path, _render_csv(fieldnames, rows))
        written[name] = path
    logger.info("%s Berichte für %s Graphen geschrieben: %s", len(written), len(summaries), out_dir)
    return written


def load_summaries(sweep_dir: Path) -> List[Dict[str, Any]]:
    """Read every ``*.summary.json`` below ``sweep_dir`` in file-name order."""

    paths = sorted(Path(sweep_dir).glob(f"*{SUMMARY_SUFFIX}"))
    return [read_json(path) for path in paths]


__all__ = [
    "FIRST_FEASIBLE_FIELDS",
    "GAP_FIELDS",
    "REPORT_FILES",
    "SUCCESS_FIELDS",
    "SUMMARY_SUFFIX",
    "TIMING_FIELDS",
    "first_feasible_rows",
    "gap_rows",
    "load_summaries",
    "success_rows",
    "timing_rows",
    "write_reports",
]
