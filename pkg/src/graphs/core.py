"""Graph representation and canonical indexing of unordered vertex pairs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Sequence, Tuple

import networkx as nx
import numpy as np


Pair = Tuple[int, int]


class InvalidPairError(ValueError):
    """Raised when a vertex pair is not an ordered pair ``i < j < n``."""


def pair_count(n: int) -> int:
    """Return ``C(n, 2)``, the number of unordered vertex pairs."""

    return n * (n - 1) // 2


def pair_index(i: int, j: int, n: int) -> int:
    """Return the lexicographic rank of the pair ``{i, j}`` among all pairs.

    The rank is ``i(n-1) - C(i,2) + j - i - 1``; it maps the pairs of ``n``
    vertices bijectively onto ``0 .. C(n,2)-1``.
    """

    if not 0 <= i < j < n:
        raise InvalidPairError(f"Ungültiges Knotenpaar ({i}, {j}) für n={n}: erwartet 0 <= i < j < n")
    return i * (n - 1) - i * (i - 1) // 2 + j - i - 1


def iter_pairs(n: int) -> Iterator[Pair]:
    """Yield all pairs ``(i, j)``, ``i < j``, in lexicographic order."""

    for i in range(n):
        for j in range(i + 1, n):
            yield i, j


def pair_arrays(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Return the row/column arrays of all pairs in lexicographic order."""

    rows, cols = np.triu_indices(n, k=1)
    return rows.astype(np.intp), cols.astype(np.intp)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on the vertices ``0 .. n-1``."""

    n: int
    edges: Tuple[Pair, ...]
    adjacency: np.ndarray = field(repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("n must not be negative")
        expected = np.zeros((self.n, self.n), dtype=bool)
        for i, j in self.edges:
            expected[i, j] = expected[j, i] = True
        if self.adjacency.shape != (self.n, self.n) or not np.array_equal(self.adjacency, expected):
            raise ValueError("adjacency matrix does not match the edge set")
        self.adjacency.setflags(write=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Build a graph from any iterable of 2-element vertex sequences."""

        normalized = set()
        for edge in edges:
            a, b = int(edge[0]), int(edge[1])
            if a == b:
                raise InvalidPairError(f"Schleife an Knoten {a} ist nicht erlaubt")
            i, j = (a, b) if a < b else (b, a)
            if j >= n or i < 0:
                raise InvalidPairError(f"Kante ({a}, {b}) liegt außerhalb von 0..{n - 1}")
            normalized.add((i, j))
        ordered = tuple(sorted(normalized))
        adjacency = np.zeros((n, n), dtype=bool)
        for i, j in ordered:
            adjacency[i, j] = adjacency[j, i] = True
        return cls(n=n, edges=ordered, adjacency=adjacency)

    @classmethod
    def from_adjacency(cls, adjacency: np.ndarray) -> "Graph":
        matrix = np.asarray(adjacency, dtype=bool)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if not np.array_equal(matrix, matrix.T) or matrix.diagonal().any():
            raise ValueError("adjacency matrix must be symmetric with zero diagonal")
        rows, cols = np.nonzero(np.triu(matrix, k=1))
        return cls.from_edges(matrix.shape[0], zip(rows.tolist(), cols.tolist()))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_edges(n, iter_pairs(n))

    @property
    def pair_count(self) -> int:
        return pair_count(self.n)

    def is_adjacent(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i, j])

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def pair_adjacency(self) -> np.ndarray:
        """Return the adjacency flag of every pair, indexed by :func:`pair_index`."""

        rows, cols = pair_arrays(self.n)
        return self.adjacency[rows, cols]

    def edge_list(self) -> List[List[int]]:
        """Edges as sorted ``[[i, j], ...]`` lists for JSON output."""

        return [[i, j] for i, j in self.edges]

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph


__all__ = [
    "Graph",
    "InvalidPairError",
    "Pair",
    "iter_pairs",
    "pair_arrays",
    "pair_count",
    "pair_index",
]
