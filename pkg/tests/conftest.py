"""Shared fixtures: hardware parameters, reference layouts and small datasets."""

import math
import os

import numpy as np
import pytest

from src.embedding.feasibility import DomainParams
from src.graphs.core import Graph
from src.pipeline.dataset import Dataset, DatasetEntry, write_dataset


# keeps every hexagon distance at or above D_min despite rounding
HEX_SLACK = 1.0 + 1e-9


def pytest_collection_modifyitems(config, items):
    if os.getenv("UDG_RUN_SLOW") == "1":
        return
    skip_slow = pytest.mark.skip(reason="set UDG_RUN_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def hexagon_coords(side: float = 4.0) -> np.ndarray:
    """Center vertex 0 plus vertices 1..6 on a regular hexagon."""

    radius = side * HEX_SLACK
    ring = [
        (radius * math.cos(math.radians(60 * k)), radius * math.sin(math.radians(60 * k)))
        for k in range(6)
    ]
    return np.array([(0.0, 0.0), *ring])


@pytest.fixture
def params() -> DomainParams:
    return DomainParams()


@pytest.fixture
def k7() -> Graph:
    return Graph.complete(7)


@pytest.fixture
def hexagon() -> np.ndarray:
    return hexagon_coords()


@pytest.fixture
def perturbed_hexagon() -> np.ndarray:
    """Vertex 1 moved to radius 5 at 35°, about 2.18 μm from vertex 2."""

    coords = hexagon_coords()
    coords[1] = (5.0 * math.cos(math.radians(35)), 5.0 * math.sin(math.radians(35)))
    return coords


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240607)


@pytest.fixture
def pair_graph() -> Graph:
    return Graph.from_edges(2, [(0, 1)])


@pytest.fixture
def path_graph() -> Graph:
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def small_dataset(tmp_path, pair_graph, path_graph, k7, hexagon):
    """Hand-made dataset file with generator-unit coordinates."""

    dataset = Dataset(
        params={"seed": 0, "n_values": [2, 4, 7], "per_n": 1},
        entries=[
            DatasetEntry("n002_00", pair_graph, np.array([[0.0, 0.0], [0.8, 0.0]])),
            DatasetEntry("n004_00", path_graph, np.array([[0.0, 0.0], [0.9, 0.0], [1.8, 0.0], [2.7, 0.0]])),
            DatasetEntry("n007_00", k7, hexagon / 10.0),
        ],
    )
    path = tmp_path / "dataset.json"
    write_dataset(dataset, path)
    return path
