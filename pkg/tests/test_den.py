"""Distance Encoder Network: layout, exact calculator and end-to-end gradients."""

import numpy as np
import pytest

from src.den.elf import build_targets, elf
from src.den.model import (
    AUTOENCODER_WIDTHS,
    build,
    den_forward,
    difference_layer,
    difference_slot,
    flatten_coords,
    squared_distances,
    sum_layer,
    unflatten_coords,
)
from src.embedding.feasibility import DimensionMismatchError, squared_pair_distances
from src.graphs.core import Graph, iter_pairs
from src.neural.gradcheck import fd_gradient_check
from src.neural.layers import Activation, Mode, dense_weights


def random_graph(rng, n, density=0.4):
    rows, cols = np.triu_indices(n, k=1)
    keep = rng.random(rows.size) < density
    return Graph.from_edges(n, zip(rows[keep].tolist(), cols[keep].tolist()))


class TestCoordinateLayout:
    def test_axis_major_flattening(self):
        coords = np.array([[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]])
        assert flatten_coords(coords).tolist() == [1.0, 3.0, 5.0, 2.0, 4.0, 6.0]
        assert np.array_equal(unflatten_coords(flatten_coords(coords), 3, 2), coords)

    def test_unflatten_checks_length(self):
        with pytest.raises(DimensionMismatchError):
            unflatten_coords(np.zeros(5), 3, 2)


class TestDistanceCalculator:
    def test_difference_layer_pattern(self):
        n, dim = 5, 3
        weights = dense_weights(difference_layer(n, dim))
        assert weights.shape == (dim * 10, dim * n)
        assert set(np.unique(weights).tolist()) <= {-1.0, 0.0, 1.0}
        for axis in range(dim):
            for i, j in iter_pairs(n):
                row = weights[difference_slot(i, j, axis, n)]
                assert row[axis * n + i] == 1.0
                assert row[axis * n + j] == -1.0
                assert np.count_nonzero(row) == 2

    def test_sum_layer_pattern(self):
        weights = dense_weights(sum_layer(4, 2))
        assert weights.shape == (6, 12)
        assert set(np.unique(weights).tolist()) == {0.0, 1.0}
        assert weights.sum(axis=1).tolist() == [2.0] * 6

    def test_calculator_layers_are_fixed(self):
        model = build(4, 2, 50.0, 0.3, np.random.default_rng(0))
        assert all(not layer.trainable for layer in model.distance_calculator)
        assert all(layer.parameters() == {} for layer in model.distance_calculator)

    @pytest.mark.parametrize("n", [2, 10, 50, 100])
    @pytest.mark.parametrize("dim", [2, 3])
    def test_matches_direct_distances(self, rng, n, dim):
        model = build(n, dim, 50.0, 0.0, rng)
        for _ in range(100):
            coords = rng.uniform(-50.0, 50.0, size=(n, dim))
            v = squared_distances(model, coords)
            assert v.shape == (n * (n - 1) // 2,)
            assert np.allclose(v, squared_pair_distances(coords), rtol=1e-9, atol=0.0)


class TestModel:
    def test_layer_widths_and_activations(self, rng):
        model = build(6, 3, 50.0, 0.5, rng)
        widths = [layer.out_features for layer in model.autoencoder]
        assert widths == [*AUTOENCODER_WIDTHS, 18]
        assert model.autoencoder[0].in_features == 18
        assert all(layer.activation is Activation.RELU for layer in model.autoencoder[:-1])
        assert model.autoencoder[-1].activation is Activation.SCALED_TANH
        assert model.autoencoder[-1].scale == 50.0
        assert [layer.dropout for layer in model.autoencoder] == [True] * 7 + [False]
        assert all(layer.bias is not None for layer in model.autoencoder)

    @pytest.mark.parametrize("kwargs", [{"n": 1}, {"dim": 4}, {"p_drop": 1.0}])
    def test_build_validation(self, kwargs):
        arguments = {"n": 4, "dim": 2, "L": 50.0, "p_drop": 0.3, **kwargs}
        with pytest.raises(ValueError):
            build(**arguments)

    def test_inference_is_deterministic(self, rng):
        model = build(5, 2, 50.0, 0.7, rng)
        inputs = flatten_coords(rng.uniform(-20.0, 20.0, size=(5, 2)))
        first = den_forward(model, inputs)
        second = den_forward(model, inputs)
        assert np.array_equal(first.coords, second.coords)
        assert np.array_equal(first.v, second.v)

    def test_training_pass_applies_dropout(self, rng):
        model = build(5, 2, 50.0, 0.7, rng)
        inputs = flatten_coords(rng.uniform(-20.0, 20.0, size=(5, 2)))
        den_pass = den_forward(model, inputs, Mode.TRAINING, np.random.default_rng(1))
        masks = [entry.mask for entry in den_pass.autoencoder_cache.entries]
        assert all(mask is not None for mask in masks[:-1])
        assert masks[-1] is None

    def test_outputs_stay_inside_register(self, rng):
        model = build(8, 2, 50.0, 0.0, rng)
        den_pass = den_forward(model, flatten_coords(rng.uniform(-50.0, 50.0, size=(8, 2))))
        assert den_pass.coords.shape == (8, 2)
        assert np.all(np.abs(den_pass.coords) <= 50.0)
        assert np.allclose(den_pass.v, squared_pair_distances(den_pass.coords), rtol=1e-12)

    def test_input_size_checked(self, rng):
        model = build(4, 2, 50.0, 0.0, rng)
        with pytest.raises(DimensionMismatchError):
            den_forward(model, np.zeros(6))


def test_end_to_end_gradients_match_finite_differences(rng, params):
    for _ in range(10):
        g = random_graph(rng, 5)
        model = build(5, 2, params.L, 0.3, rng)
        state = build_targets(g, params, params.epsilon)
        inputs = flatten_coords(rng.uniform(-20.0, 20.0, size=(5, 2)))
        report = fd_gradient_check(model.layers, lambda output: elf(output, state), inputs, tolerance=1e-4)
        assert report.passed, report
        assert report.checked > 0
