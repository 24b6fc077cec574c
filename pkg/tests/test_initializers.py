import numpy as np
import pytest

from src.embedding.feasibility import DimensionMismatchError
from src.embedding.initializers import (
    FrConfig,
    InitMethod,
    fr_layout,
    fruchterman_reingold,
    initial_embedding,
    scale_to_disk,
)
from src.graphs.core import Graph


class TestScaling:
    def test_farthest_point_on_radius(self, rng):
        coords = rng.uniform(0.0, 3.0, size=(12, 2))
        emb = scale_to_disk(coords, 50.0, 2)
        assert np.linalg.norm(emb.coords, axis=1).max() == pytest.approx(50.0)
        assert np.allclose(emb.coords.mean(axis=0), 0.0, atol=1e-9)
        assert np.all(np.abs(emb.coords) <= 50.0)

    def test_preserves_shape_up_to_similarity(self, rng):
        coords = rng.uniform(0.0, 3.0, size=(6, 2))
        emb = scale_to_disk(coords, 50.0, 2)
        original = np.linalg.norm(coords[:, None] - coords[None], axis=-1)
        scaled = np.linalg.norm(emb.coords[:, None] - emb.coords[None], axis=-1)
        ratio = scaled[0, 1] / original[0, 1]
        assert np.allclose(scaled, original * ratio)

    def test_two_dimensional_input_lifted_to_3d(self, rng):
        emb = scale_to_disk(rng.uniform(size=(5, 2)), 50.0, 3)
        assert emb.dim == 3
        assert np.all(emb.coords[:, 2] == 0.0)

    def test_identical_points_map_to_origin(self):
        emb = scale_to_disk(np.ones((4, 2)), 50.0, 2)
        assert np.array_equal(emb.coords, np.zeros((4, 2)))

    def test_3d_input_cannot_be_flattened(self):
        with pytest.raises(DimensionMismatchError):
            scale_to_disk(np.zeros((3, 3)), 50.0, 2)


class TestFruchtermanReingold:
    def test_two_adjacent_nodes_settle_at_k(self, pair_graph):
        layout = fr_layout(pair_graph, FrConfig(k=7.0, iterations=1000, seed=5))
        assert np.linalg.norm(layout[0] - layout[1]) == pytest.approx(7.0, rel=0.05)

    def test_rescaled_into_register(self, path_graph):
        emb = fruchterman_reingold(path_graph, FrConfig(seed=1), 50.0)
        assert np.linalg.norm(emb.coords, axis=1).max() == pytest.approx(50.0)
        assert np.all(np.abs(emb.coords) <= 50.0)

    def test_seeded_runs_repeat(self, k7):
        cfg = FrConfig(iterations=200, seed=42)
        assert np.array_equal(fr_layout(k7, cfg), fr_layout(k7, cfg))

    def test_three_dimensional_layout(self, k7):
        layout = fr_layout(k7, FrConfig(iterations=100, dim=3, seed=0))
        assert layout.shape == (7, 3)
        assert np.all(np.isfinite(layout))

    def test_relabeling_permutes_layout(self, rng):
        g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 4)])
        perm = np.array([3, 0, 5, 1, 4, 2])
        relabeled = Graph.from_edges(6, [(perm[i], perm[j]) for i, j in g.edges])
        initial = rng.uniform(0.0, 5.0, size=(6, 2))
        moved = np.empty_like(initial)
        moved[perm] = initial

        cfg = FrConfig(iterations=10, seed=0)
        layout = fr_layout(g, cfg, initial=initial)
        relabeled_layout = fr_layout(relabeled, cfg, initial=moved)
        assert np.allclose(relabeled_layout[perm], layout, atol=1e-6)

    def test_coincident_start_positions_separate(self, path_graph):
        layout = fr_layout(path_graph, FrConfig(iterations=100, seed=3), initial=np.zeros((4, 2)))
        assert np.all(np.isfinite(layout))
        distances = np.linalg.norm(layout[:, None] - layout[None], axis=-1)
        assert distances[np.triu_indices(4, k=1)].min() > 1.0

    def test_initial_shape_checked(self, path_graph):
        with pytest.raises(DimensionMismatchError):
            fr_layout(path_graph, FrConfig(), initial=np.zeros((3, 2)))

    @pytest.mark.parametrize("kwargs", [{"k": 0.0}, {"iterations": -1}, {"dim": 4}])
    def test_config_validation(self, kwargs):
        with pytest.raises(ValueError):
            FrConfig(**kwargs)


class TestInitialEmbedding:
    def test_scaling_needs_coordinates(self, path_graph):
        with pytest.raises(ValueError):
            initial_embedding(InitMethod.SCALING, path_graph, 50.0, 2)

    def test_scaling_uses_dataset_coordinates(self, path_graph):
        coords = np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0]])
        emb = initial_embedding("scaling", path_graph, 50.0, 2, coords=coords)
        assert emb.coords[:, 0].tolist() == pytest.approx([-50.0, -50.0 / 3, 50.0 / 3, 50.0])

    def test_fr_follows_requested_dimension(self, path_graph):
        emb = initial_embedding(InitMethod.FR, path_graph, 50.0, 3, fr_config=FrConfig(iterations=20))
        assert emb.dim == 3
