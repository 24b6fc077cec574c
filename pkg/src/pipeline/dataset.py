"""Generated graph datasets: build, persist and look up instances."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from ..config import CFG, default_generator_config
from ..graphs.core import Graph
from ..graphs.generator import generate_instance
from .logging_utils import get_logger
from .utils import derive_seed, read_json, write_json


logger = get_logger("dataset")

COORDS_UNITS = "generator"


class DatasetError(ValueError):
    """Raised for malformed dataset files or unknown graph ids."""


def make_graph_id(n: int, index: int) -> str:
    return f"n{n:03d}_{index:02d}"


@dataclass(frozen=True)
class DatasetEntry:
    graph_id: str
    graph: Graph
    coords: np.ndarray

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.graph_id,
            "n": self.graph.n,
            "edges": self.graph.edge_list(),
            "coords": np.asarray(self.coords, dtype=np.float64).tolist(),
        }


@dataclass
class Dataset:
    params: Dict[str, Any] = field(default_factory=dict)
    entries: List[DatasetEntry] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[DatasetEntry]:
        return iter(self.entries)

    @property
    def ids(self) -> List[str]:
        return [entry.graph_id for entry in self.entries]

    def counts_per_n(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for entry in self.entries:
            counts[entry.graph.n] = counts.get(entry.graph.n, 0) + 1
        return counts

    def to_dict(self) -> Dict[str, Any]:
        return {
            "params": self.params,
            "coords_units": COORDS_UNITS,
            "graphs": [entry.to_dict() for entry in self.entries],
        }


def build_dataset(
    n_values: Sequence[int],
    per_n: int,
    seed: int,
    cfg: Optional[Mapping[str, Any]] = None,
    *,
    workers: int = 0,
    show_progress: bool = False,
) -> Dataset:
    """Generate ``per_n`` gate-accepted instances for every ``n``.

    Instance ``(n, index)`` is seeded from ``(seed, n, index)``, so the
    dataset does not depend on the order or parallelism of generation. A
    :class:`~src.graphs.generator.GenerationError` propagates unchanged.
    """

    if per_n < 0:
        raise ValueError("per_n must not be negative")
    source = CFG if cfg is None else cfg
    jobs: List[Tuple[int, int]] = [(int(n), index) for n in n_values for index in range(per_n)]

    def generate(job: Tuple[int, int]) -> DatasetEntry:
        n, index = job
        generator_cfg = default_generator_config(n, derive_seed(seed, n, index), source)
        graph, coords = generate_instance(generator_cfg)
        return DatasetEntry(graph_id=make_graph_id(n, index), graph=graph, coords=coords)

    logger.info("Erzeuge %s Graphen für n ∈ %s", len(jobs), list(n_values))
    if workers and workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            entries = list(
                tqdm(executor.map(generate, jobs), total=len(jobs), desc="Graphen", unit="graph", disable=not show_progress)
            )
    else:
        entries = [generate(job) for job in tqdm(jobs, desc="Graphen", unit="graph", disable=not show_progress)]

    generator_section = dict(source.get("generator", {}))
    params = {
        "seed": seed,
        "n_values": [int(n) for n in n_values],
        "per_n": per_n,
        "generator": {
            key: generator_section[key] for key in ("d", "l_factor", "max_retries") if key in generator_section
        },
    }
    return Dataset(params=params, entries=entries)


def write_dataset(dataset: Dataset, path: Path) -> Path:
    path = write_json(Path(path), dataset.to_dict())
    logger.info("Datensatz mit %s Graphen gespeichert: %s", len(dataset), path)
    return path


def _parse_entry(raw: Any, position: int) -> DatasetEntry:
    if not isinstance(raw, Mapping):
        raise DatasetError(f"Eintrag {position} ist kein Objekt")
    try:
        graph_id = str(raw["id"])
        n = int(raw["n"])
        graph = Graph.from_edges(n, raw.get("edges", []))
        coords = np.asarray(raw.get("coords", []), dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise DatasetError(f"Eintrag {position} ist fehlerhaft: {exc}") from exc
    if coords.size and coords.shape != (n, 2) and coords.shape != (n, 3):
        raise DatasetError(f"Koordinaten von {graph_id} haben die Form {coords.shape}")
    return DatasetEntry(graph_id=graph_id, graph=graph, coords=coords.reshape(n, -1) if coords.size else coords)


def load_dataset(path: Path) -> Dataset:
    try:
        payload = read_json(Path(path))
    except (OSError, ValueError) as exc:
        raise DatasetError(f"Datensatz {path} kann nicht gelesen werden: {exc}") from exc
    if not isinstance(payload, Mapping) or not isinstance(payload.get("graphs"), list):
        raise DatasetError(f"Datensatz {path} enthält keine Graphliste")
    entries = [_parse_entry(raw, position) for position, raw in enumerate(payload["graphs"])]
    if len({entry.graph_id for entry in entries}) != len(entries):
        raise DatasetError(f"Datensatz {path} enthält doppelte Graph-IDs")
    return Dataset(params=dict(payload.get("params", {})), entries=entries)


def get_graph(dataset: Dataset, graph_id: str) -> DatasetEntry:
    for entry in dataset.entries:
        if entry.graph_id == graph_id:
            return entry
    raise DatasetError(f"Graph '{graph_id}' ist nicht im Datensatz enthalten")


__all__ = [
    "COORDS_UNITS",
    "Dataset",
    "DatasetEntry",
    "DatasetError",
    "build_dataset",
    "get_graph",
    "load_dataset",
    "make_graph_id",
    "write_dataset",
]
