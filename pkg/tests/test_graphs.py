"""Graph model, pair indexing, condition gate and instance generator."""

from itertools import combinations

import numpy as np
import pytest

from src.config import default_generator_config
from src.graphs.core import Graph, InvalidPairError, iter_pairs, pair_count, pair_index
from src.graphs.generator import (
    GenerationError,
    GeneratorConfig,
    check_necessary_conditions,
    estimate_clique,
    generate_instance,
    threshold_graph,
)


def exact_clique_number(g: Graph) -> int:
    best = 1 if g.n else 0
    for size in range(2, g.n + 1):
        found = any(
            all(g.is_adjacent(i, j) for i, j in combinations(subset, 2))
            for subset in combinations(range(g.n), size)
        )
        if not found:
            break
        best = size
    return best


class TestPairIndex:
    @pytest.mark.parametrize("n", range(2, 41))
    def test_lexicographic_bijection(self, n):
        enumerated = [(i, j) for i in range(n) for j in range(i + 1, n)]
        assert list(iter_pairs(n)) == enumerated
        ranks = [pair_index(i, j, n) for i, j in enumerated]
        assert ranks == list(range(pair_count(n)))

    def test_known_ranks(self):
        assert pair_index(0, 1, 4) == 0
        assert pair_index(0, 3, 4) == 2
        assert pair_index(1, 2, 4) == 3
        assert pair_index(2, 3, 4) == 5
        assert pair_index(0, 9, 10) == 8
        assert pair_index(98, 99, 100) == 4949

    @pytest.mark.parametrize("i,j", [(1, 1), (2, 1), (0, 4), (-1, 2)])
    def test_rejects_invalid_pairs(self, i, j):
        with pytest.raises(InvalidPairError):
            pair_index(i, j, 4)

    def test_pair_count(self):
        assert pair_count(0) == 0
        assert pair_count(1) == 0
        assert pair_count(100) == 4950


class TestGraph:
    def test_from_edges_normalizes(self):
        g = Graph.from_edges(3, [(2, 0), (0, 2), (1, 2)])
        assert g.edges == ((0, 2), (1, 2))
        assert g.is_adjacent(2, 0) and g.is_adjacent(0, 2)
        assert not g.is_adjacent(0, 1)
        assert np.array_equal(g.adjacency, g.adjacency.T)

    def test_adjacency_is_read_only(self, path_graph):
        with pytest.raises(ValueError):
            path_graph.adjacency[0, 2] = True

    def test_rejects_loops_and_out_of_range(self):
        with pytest.raises(InvalidPairError):
            Graph.from_edges(3, [(1, 1)])
        with pytest.raises(InvalidPairError):
            Graph.from_edges(3, [(0, 3)])

    def test_from_adjacency_matches_edges(self, path_graph):
        rebuilt = Graph.from_adjacency(path_graph.adjacency)
        assert rebuilt.edges == path_graph.edges

    def test_from_adjacency_rejects_asymmetric(self):
        matrix = np.zeros((3, 3), dtype=bool)
        matrix[0, 1] = True
        with pytest.raises(ValueError):
            Graph.from_adjacency(matrix)

    def test_pair_adjacency_follows_pair_index(self, path_graph):
        flags = path_graph.pair_adjacency()
        for i, j in iter_pairs(4):
            assert flags[pair_index(i, j, 4)] == path_graph.is_adjacent(i, j)

    def test_degrees(self, path_graph):
        assert path_graph.degrees().tolist() == [1, 2, 2, 1]


class TestConditionGate:
    def test_k7_accepted(self, k7):
        report = check_necessary_conditions(k7)
        assert report.clique_estimate == 7
        assert report.accepted

    def test_k8_rejected(self):
        report = check_necessary_conditions(Graph.complete(8))
        assert not report.accepted
        assert report.failed_conditions == ["clique"]

    def test_star_with_19_leaves_rejected(self):
        star = Graph.from_edges(20, [(0, leaf) for leaf in range(1, 20)])
        report = check_necessary_conditions(star)
        assert report.max_degree == 19
        assert report.failed_conditions == ["degree"]

    def test_star_with_18_leaves_accepted(self):
        star = Graph.from_edges(19, [(0, leaf) for leaf in range(1, 19)])
        assert check_necessary_conditions(star).accepted

    def test_disconnected_rejected(self):
        report = check_necessary_conditions(Graph.from_edges(4, [(0, 1), (2, 3)]))
        assert not report.connected
        assert report.failed_conditions == ["connectivity"]

    def test_clique_estimate_is_a_clique_and_a_lower_bound(self, rng):
        for _ in range(40):
            n = int(rng.integers(3, 13))
            rows, cols = np.triu_indices(n, k=1)
            keep = rng.random(rows.size) < 0.5
            g = Graph.from_edges(n, zip(rows[keep].tolist(), cols[keep].tolist()))
            clique = estimate_clique(g)
            assert all(g.is_adjacent(i, j) for i, j in combinations(clique, 2))
            assert 1 <= len(clique) <= exact_clique_number(g)


class TestGenerator:
    def test_threshold_includes_boundary(self):
        points = np.array([[0.0, 0.0], [1.0, 0.0], [2.5, 0.0]])
        assert threshold_graph(points, 1.0).edges == ((0, 1),)

    def test_generated_instance_passes_gate(self):
        cfg = default_generator_config(20, seed=3)
        graph, coords = generate_instance(cfg)
        assert coords.shape == (20, 2)
        assert np.all((coords >= 0.0) & (coords <= cfg.l))
        assert threshold_graph(coords, cfg.d).edges == graph.edges
        assert check_necessary_conditions(graph).accepted

    def test_same_seed_same_instance(self):
        cfg = default_generator_config(15, seed=11)
        first, first_coords = generate_instance(cfg)
        second, second_coords = generate_instance(cfg)
        assert first.edges == second.edges
        assert np.array_equal(first_coords, second_coords)

    def test_exhausted_retries_name_the_condition(self):
        # every sample lands in a square far smaller than d: always K30
        cfg = GeneratorConfig(n=30, l=0.5, d=1.0, seed=0, max_retries=3)
        with pytest.raises(GenerationError, match="clique"):
            generate_instance(cfg)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"n": 0, "l": 1.0, "d": 1.0},
            {"n": 5, "l": 0.0, "d": 1.0},
            {"n": 5, "l": 1.0, "d": -1.0},
            {"n": 5, "l": 1.0, "d": 1.0, "max_retries": 0},
        ],
    )
    def test_config_validation(self, kwargs):
        with pytest.raises(ValueError):
            GeneratorConfig(**kwargs)
