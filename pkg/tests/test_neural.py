"""
Tests for the networks, the torch connectivity loss, training and model files.
"""

import json
from pathlib import Path

import numpy as np
import pytest
import torch
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from phconnect.exceptions import DataError, InvalidInputError
from phconnect.geometry import Norm, PointCloud
from phconnect.loss import connectivity_grad
from phconnect.loss import connectivity_loss as numpy_connectivity_loss
from phconnect.neural import (
    AutoencoderSpec,
    BlockDiagonalLinear,
    BranchedAutoencoder,
    ConnectivityMlp,
    MlpSpec,
    TrainConfig,
    backward_combined,
    branch_death_statistics,
    connectivity_loss,
    encode_array,
    indicator_connectivity_loss,
    load_model,
    merge_pairs,
    network_grad_check_harness,
    objective,
    reconstruction_loss,
    save_model,
    train,
)
from phconnect.neural.training import CURVE_COLUMNS, as_tensor, iterate_batches


def small_autoencoder(branches: int = 2, seed: int = 0) -> BranchedAutoencoder:
    spec = AutoencoderSpec(encoder_widths=[3, 8, 4], branches=branches, branch_dim=2, seed=seed)
    return BranchedAutoencoder(spec)


class TestSpecs:
    """Test network layout models."""

    @pytest.mark.unit
    def test_autoencoder_layout(self):
        spec = AutoencoderSpec(encoder_widths=[4, 16, 12], branches=3, branch_dim=2)
        assert spec.input_dim == 4
        assert spec.branch_input_dim == 4
        assert spec.latent_dim == 6
        assert spec.decoder_widths == [6, 16, 4]

    @pytest.mark.unit
    def test_prelatent_width_must_split_evenly(self):
        with pytest.raises(ValidationError):
            AutoencoderSpec(encoder_widths=[2, 16, 15], branches=2)

    @pytest.mark.unit
    @pytest.mark.parametrize("widths", [[3], [2, 0, 2]])
    def test_invalid_widths(self, widths):
        with pytest.raises(ValidationError):
            MlpSpec(layer_widths=widths)

    @pytest.mark.unit
    def test_train_config_lambda_alias(self):
        config = TrainConfig.model_validate({"lambda": 5.0})
        assert config.connectivity_weight == 5.0
        assert TrainConfig(connectivity_weight=2.0).model_dump(by_alias=True)["lambda"] == 2.0
        with pytest.raises(ValidationError):
            TrainConfig.model_validate({"learning_rat": 0.1})


class TestLayers:
    """Test the block-diagonal head and the networks."""

    @pytest.mark.unit
    def test_block_diagonal_matches_dense_weight(self):
        layer = BlockDiagonalLinear(3, 4, 2, torch.Generator().manual_seed(1))
        x = torch.randn(5, 12, dtype=torch.float64, generator=torch.Generator().manual_seed(2))
        dense = layer.dense_weight()
        assert dense.shape == (6, 12)
        expected = x @ dense.T + layer.bias.reshape(-1)
        torch.testing.assert_close(layer(x), expected)

    @pytest.mark.unit
    def test_branches_only_read_their_slice(self):
        layer = BlockDiagonalLinear(2, 3, 2)
        x = torch.zeros(1, 6, dtype=torch.float64)
        moved = x.clone()
        moved[0, 4] = 1.0
        before, after = layer(x), layer(moved)
        torch.testing.assert_close(before[:, :2], after[:, :2])
        assert not torch.equal(before[:, 2:], after[:, 2:])

    @pytest.mark.unit
    def test_autoencoder_shapes(self):
        model = small_autoencoder()
        x = torch.randn(7, 3, dtype=torch.float64)
        x_hat, z = model(x)
        assert x_hat.shape == (7, 3)
        assert z.shape == (7, 4)
        assert model.branch(z, 1).shape == (7, 2)
        torch.testing.assert_close(model.branch(z, 1), z[:, 2:])
        assert all(param.dtype == torch.float64 for param in model.parameters())

    @pytest.mark.unit
    def test_shape_errors(self):
        model = small_autoencoder()
        with pytest.raises(InvalidInputError):
            model.encode(torch.zeros(2, 5, dtype=torch.float64))
        with pytest.raises(InvalidInputError):
            model.decode(torch.zeros(2, 3, dtype=torch.float64))
        with pytest.raises(InvalidInputError):
            model.branch(torch.zeros(2, 4, dtype=torch.float64), 2)

    @pytest.mark.unit
    def test_initialization_is_seeded(self):
        first = small_autoencoder(seed=4).state_dict()
        second = small_autoencoder(seed=4).state_dict()
        third = small_autoencoder(seed=5).state_dict()
        assert all(torch.equal(first[name], second[name]) for name in first)
        assert not all(torch.equal(first[name], third[name]) for name in first)

    @pytest.mark.unit
    def test_mlp_has_one_branch(self):
        model = ConnectivityMlp(MlpSpec(layer_widths=[2, 5, 3]))
        assert (model.branches, model.branch_dim) == (1, 3)
        assert model(torch.zeros(4, 2, dtype=torch.float64)).shape == (4, 3)


class TestTorchLoss:
    """Test the autograd connectivity loss."""

    @pytest.mark.unit
    @pytest.mark.parametrize("norm", [Norm.L1, Norm.L2])
    def test_autograd_matches_numpy(self, rng, norm):
        points = rng.standard_normal((9, 3))
        z = torch.tensor(points, requires_grad=True)
        loss = connectivity_loss(z, 1.5, norm)
        loss.backward()
        cloud = PointCloud(points, norm)
        assert float(loss) == numpy_connectivity_loss(cloud, 1.5).value
        np.testing.assert_array_equal(z.grad.numpy(), connectivity_grad(cloud, 1.5))

    @pytest.mark.unit
    @pytest.mark.parametrize("norm", [Norm.L1, Norm.L2])
    def test_indicator_loss_agrees(self, rng, norm):
        points = rng.standard_normal((9, 3))
        z_event = torch.tensor(points, requires_grad=True)
        z_pairs = torch.tensor(points, requires_grad=True)
        event_loss = connectivity_loss(z_event, 1.5, norm)
        pair_loss = indicator_connectivity_loss(z_pairs, 1.5, norm)
        event_loss.backward()
        pair_loss.backward()
        assert float(pair_loss) == pytest.approx(float(event_loss), rel=1e-12)
        torch.testing.assert_close(z_pairs.grad, z_event.grad)

    @pytest.mark.unit
    def test_merge_pairs(self):
        z = torch.tensor([[0.0], [1.0], [3.0]], dtype=torch.float64)
        assert merge_pairs(z) == ([0, 1], [1, 2])

    @pytest.mark.unit
    def test_single_point_batch_rejected(self):
        with pytest.raises(InvalidInputError):
            connectivity_loss(torch.zeros(1, 2, dtype=torch.float64), 1.0)

    @pytest.mark.unit
    def test_reconstruction_loss(self):
        x = torch.tensor([[1.0, 2.0], [3.0, -4.0]], dtype=torch.float64)
        assert float(reconstruction_loss(x, torch.zeros_like(x))) == 5.0


class TestObjective:
    """Test the joint objective and its gradients."""

    @pytest.mark.unit
    def test_breakdown_adds_up(self, rng):
        model = small_autoencoder()
        config = TrainConfig(batch_size=6, connectivity_weight=3.0)
        total, breakdown = objective(model, as_tensor(rng.standard_normal((6, 3))), config)
        assert breakdown.total == pytest.approx(
            breakdown.reconstruction + 3.0 * breakdown.connectivity
        )
        assert float(total) == breakdown.total

    @pytest.mark.unit
    def test_connectivity_sums_over_branches(self, rng):
        model = small_autoencoder(branches=2)
        batch = as_tensor(rng.standard_normal((6, 3)))
        config = TrainConfig(batch_size=6, use_reconstruction=False)
        _, breakdown = objective(model, batch, config)
        with torch.no_grad():
            z = model.encode(batch)
        expected = sum(
            numpy_connectivity_loss(PointCloud(z[:, 2 * j: 2 * j + 2].numpy()), 2.0).value
            for j in range(2)
        )
        assert breakdown.connectivity == pytest.approx(expected, rel=1e-12)
        assert breakdown.reconstruction == 0.0

    @pytest.mark.unit
    def test_decoder_sees_no_connectivity_gradient(self, rng):
        model = small_autoencoder()
        config = TrainConfig(batch_size=8, use_reconstruction=False, eta=5.0)
        result = backward_combined(model, rng.standard_normal((8, 3)), config)
        for name, gradient in result.gradients.items():
            if name.startswith("decoder"):
                assert torch.count_nonzero(gradient) == 0, name
        assert torch.count_nonzero(result.gradients["head.weight"]) > 0

    @pytest.mark.unit
    def test_zero_weight_mlp_has_no_gradient(self, rng):
        model = ConnectivityMlp(MlpSpec(layer_widths=[2, 3, 2]))
        config = TrainConfig(batch_size=4, connectivity_weight=0.0)
        result = backward_combined(model, rng.standard_normal((4, 2)), config)
        assert result.breakdown.total == 0.0
        assert all(torch.count_nonzero(g) == 0 for g in result.gradients.values())

    @pytest.mark.unit
    def test_batch_size_must_match(self, rng):
        with pytest.raises(InvalidInputError):
            backward_combined(
                small_autoencoder(), rng.standard_normal((5, 3)), TrainConfig(batch_size=4)
            )

    @pytest.mark.unit
    def test_parameter_gradients_match_finite_differences(self):
        report = network_grad_check_harness(trials=6, seed=2)
        assert report.checked > 0
        assert report.passed


class TestTraining:
    """Test the training loop."""

    @pytest.mark.unit
    def test_partial_batch_is_dropped(self, rng):
        batches = iterate_batches(10, 4, rng)
        assert [len(batch) for batch in batches] == [4, 4]
        assert len(set(np.concatenate(batches).tolist())) == 8

    @pytest.mark.unit
    def test_curves_and_callbacks(self, rng):
        data = rng.standard_normal((20, 3))
        seen = []
        config = TrainConfig(batch_size=6, epochs=2, seed=1)
        result = train(small_autoencoder(), data, config, callbacks=[lambda e, _: seen.append(e)])
        assert seen == [0, 1, 2]
        assert list(result.curves.columns) == CURVE_COLUMNS
        assert len(result.curves) == 2 * 3
        assert result.curves["iteration"].tolist() == list(range(1, 7))

    @pytest.mark.unit
    def test_training_is_reproducible(self, rng):
        data = rng.standard_normal((24, 3))
        config = TrainConfig(batch_size=8, epochs=2, seed=3)
        first = train(small_autoencoder(seed=1), data, config)
        second = train(small_autoencoder(seed=1), data, config)
        assert first.curves.equals(second.curves)
        np.testing.assert_array_equal(
            encode_array(first.model, data), encode_array(second.model, data)
        )

    @pytest.mark.property
    @given(seed=st.integers(min_value=0, max_value=1000))
    @settings(max_examples=10)
    def test_reconstruction_only_training_lowers_reconstruction(self, seed):
        data = np.random.default_rng(seed).standard_normal((40, 3))
        config = TrainConfig(
            connectivity_weight=0.0, batch_size=10, epochs=20, learning_rate=1e-2, seed=seed
        )
        model = small_autoencoder(seed=seed)
        _, before = objective(model, as_tensor(data), config)
        with torch.no_grad():
            initial_decoder = [p.clone() for p in model.decoder.parameters()]

        result = train(model, data, config)
        _, after = objective(result.model, as_tensor(data), config)
        assert after.reconstruction < before.reconstruction
        assert (result.curves["connectivity"] == 0.0).all()
        assert any(
            not torch.equal(old, new)
            for old, new in zip(initial_decoder, result.model.decoder.parameters())
        )

    @pytest.mark.property
    @given(seed=st.integers(min_value=0, max_value=1000))
    @settings(max_examples=10)
    def test_zero_epochs_change_nothing(self, seed):
        data = np.random.default_rng(seed).standard_normal((12, 3))
        model = small_autoencoder(seed=seed)
        before = {name: p.detach().clone() for name, p in model.named_parameters()}
        seen = []
        config = TrainConfig(batch_size=4, epochs=0, seed=seed)
        result = train(model, data, config, callbacks=[lambda e, _: seen.append(e)])
        assert result.curves.empty
        assert list(result.curves.columns) == CURVE_COLUMNS
        assert seen == [0]
        for name, param in result.model.named_parameters():
            assert torch.equal(param, before[name]), name

    @pytest.mark.slow
    def test_parameter_gradients_match_finite_differences_at_scale(self):
        report = network_grad_check_harness(trials=200, seed=0)
        assert report.checked > 0
        assert report.passed

    @pytest.mark.unit
    def test_empty_data_rejected(self):
        with pytest.raises(InvalidInputError):
            train(small_autoencoder(), np.zeros((0, 3)), TrainConfig())

    @pytest.mark.unit
    def test_encode_array(self, rng):
        latent = encode_array(small_autoencoder(), rng.standard_normal((5, 3)))
        assert latent.shape == (5, 4)
        assert latent.dtype == np.float64

    @pytest.mark.unit
    def test_branch_statistics(self, rng):
        model = small_autoencoder(branches=2)
        frame = branch_death_statistics(model, rng.standard_normal((30, 3)), 10, 5, seed=1)
        assert frame["branch"].tolist() == [0, 1]
        assert (frame["alpha_hat"] <= frame["beta_hat"]).all()
        assert (frame["batch_count"] == 5).all()


class TestSerialization:
    """Test model files."""

    @pytest.mark.unit
    @pytest.mark.parametrize(
        "model",
        [small_autoencoder(seed=3), ConnectivityMlp(MlpSpec(layer_widths=[3, 4, 2], seed=1))],
    )
    def test_round_trip_is_exact(self, tmp_path: Path, rng, model):
        config = TrainConfig(eta=1.5, connectivity_weight=20.0)
        path = save_model(model, tmp_path / "nested" / "model.json", config)
        loaded, loaded_config = load_model(path)
        assert type(loaded) is type(model)
        assert loaded_config.model_dump() == config.model_dump()
        data = rng.standard_normal((6, 3))
        np.testing.assert_array_equal(encode_array(loaded, data), encode_array(model, data))

    @pytest.mark.unit
    def test_invalid_files(self, tmp_path: Path):
        with pytest.raises(DataError):
            load_model(tmp_path / "missing.json")
        broken = tmp_path / "broken.json"
        broken.write_text("{", encoding="utf-8")
        with pytest.raises(DataError):
            load_model(broken)
        foreign = tmp_path / "foreign.json"
        foreign.write_text(json.dumps({"format": "other"}), encoding="utf-8")
        with pytest.raises(DataError):
            load_model(foreign)

    @pytest.mark.unit
    def test_parameters_must_match_spec(self, tmp_path: Path):
        path = save_model(small_autoencoder(), tmp_path / "model.json")
        payload = json.loads(path.read_text(encoding="utf-8"))
        payload["spec"]["encoder_widths"] = [3, 6, 4]
        path.write_text(json.dumps(payload), encoding="utf-8")
        with pytest.raises(DataError):
            load_model(path)
