import numpy as np
import pytest
from pydantic import ValidationError

from app.core.exceptions import IndivisibleSizeError, InvalidParameterError
from app.domains.imaging import forward_sd
from app.domains.network import (
    brb_forward,
    build_network,
    draw_random_code,
    generate_cube,
    layer_specs,
    make_conditional_input,
    measurement_maps,
    network_forward,
    parameter_count,
    scaled_weights,
    ssam_forward,
    weight_gains,
)
from app.domains.tensor import Tensor, add, bilinear_upsample2x, concat_channels, conv2d, hadamard, leaky_relu, sigmoid
from app.literals.imaging import SystemKind
from app.literals.network import ArchMode, InputMode
from app.schemas.imaging import DispersionModel, Snapshot
from app.schemas.network import NetworkConfig, RandomCode
from tests.factories.cubes import ones_mask, random_cube


def _conv(x, weights, name, stride=1):
    return conv2d(x, weights[f"{name}.weight"], weights[f"{name}.bias"], stride=stride)


def _zeroed(params, prefixes):
    return params.replace(
        {name: np.zeros_like(params[name]) for name in params if any(name.startswith(p) for p in prefixes)}
    )


class TestBuildNetwork:
    """Tests for build_network and the parameter registry."""

    def test_parameter_count_default_width(self):
        """Test the closed-form count for 8 bands, width 64 and a 32-channel code."""
        config = NetworkConfig(bands=8, feature_width=64, z_channels=32)
        stem = 33 * 64 + 64
        brb = 3 * ((64 * 64 + 64) + (64 * 32 + 32) + (32 * 32 * 9 + 32) + (32 * 64 + 64))
        ssam = 2 * (64 * 64 * 9 + 64) + 2 * (2 * (64 * 64 * 9 + 64) + (128 * 64 * 9 + 64))
        tail = 64 * 8 + 8
        assert parameter_count(config) == stem + brb + ssam + tail == 424648

    def test_count_matches_built_store(self, tiny_network_config):
        assert build_network(tiny_network_config).count() == parameter_count(tiny_network_config)

    def test_deterministic_per_seed(self, tiny_network_config):
        a = build_network(tiny_network_config)
        b = build_network(tiny_network_config)
        assert a.digest() == b.digest()
        assert a.digest() != build_network(tiny_network_config.model_copy(update={"seed": 6})).digest()

    def test_tail_outputs_bands(self, tiny_network_config):
        params = build_network(tiny_network_config)
        assert params["tail.weight"].shape == (4, 8, 1, 1)

    def test_initialization_bounds(self, tiny_network_config):
        """Test unit-range stored weights whose gained values are He-uniform."""
        params = build_network(tiny_network_config)
        effective = scaled_weights(params.as_tensors(), tiny_network_config)
        for spec in layer_specs(tiny_network_config):
            stored = params[f"{spec.name}.weight"]
            assert np.abs(stored).max() <= np.sqrt(3.0)
            assert np.abs(effective[f"{spec.name}.weight"].data).max() <= np.sqrt(6.0 / spec.fan_in) * (1 + 1e-6)
            np.testing.assert_allclose(effective[f"{spec.name}.weight"].data, stored * spec.weight_gain, rtol=1e-6)
            np.testing.assert_array_equal(effective[f"{spec.name}.bias"].data, 0.0)

    def test_weight_gains_follow_fan_in(self, tiny_network_config):
        gains = weight_gains(tiny_network_config)
        assert gains["stem.weight"] == pytest.approx(np.sqrt(2.0 / tiny_network_config.input_channels))
        assert gains["ssam.scale1.fusion.weight"] == pytest.approx(np.sqrt(2.0 / (2 * 8 * 9)))
        assert not any(name.endswith(".bias") for name in gains)

    @pytest.mark.parametrize(
        "arch_mode, has_brb, has_ssam",
        [(ArchMode.FULL, True, True), (ArchMode.BRB_ONLY, True, False), (ArchMode.SSAM_ONLY, False, True)],
    )
    def test_registry_follows_arch_mode(self, tiny_network_config, arch_mode, has_brb, has_ssam):
        names = set(build_network(tiny_network_config.model_copy(update={"arch_mode": arch_mode})))
        assert any(n.startswith("brb") for n in names) is has_brb
        assert any(n.startswith("ssam") for n in names) is has_ssam

    def test_feature_width_must_be_even(self):
        with pytest.raises(ValueError):
            NetworkConfig(bands=4, feature_width=7)


class TestConditionalInput:
    """Tests for draw_random_code and make_conditional_input."""

    def test_code_range_and_determinism(self, tiny_network_config):
        code = draw_random_code(tiny_network_config, 8, 8)
        assert code.values.shape == (4, 8, 8)
        assert code.values.min() >= 0.0
        assert code.values.max() <= 0.1
        np.testing.assert_array_equal(code.values, draw_random_code(tiny_network_config, 8, 8).values)

    @pytest.mark.parametrize("value", [-0.01, 0.2, 1.0])
    def test_code_outside_range_rejected(self, value):
        with pytest.raises(ValidationError):
            RandomCode(values=np.full((2, 4, 4), value), seed=0)

    def test_code_range_edges_accepted(self):
        values = np.zeros((2, 4, 4))
        values[1] = 0.1
        assert RandomCode(values=values, seed=0).values.max() == np.float32(0.1)

    def test_z_only(self, tiny_network_config, rng):
        code = draw_random_code(tiny_network_config, 8, 8)
        snapshot = Snapshot(values=rng.random((8, 8)), system=SystemKind.SS)
        assert make_conditional_input(code, snapshot, InputMode.Z_ONLY, 4).channels == 4

    def test_z_and_y_ss(self, tiny_network_config, rng):
        code = draw_random_code(tiny_network_config, 8, 8)
        snapshot = Snapshot(values=rng.random((8, 8)) + 0.1, system=SystemKind.SS)
        inputs = make_conditional_input(code, snapshot, InputMode.Z_AND_Y, 4)
        assert inputs.channels == 5
        assert inputs.data[4].max() == pytest.approx(1.0)

    def test_sd_windows_normalized(self):
        snapshot = Snapshot(values=[[0.5, 2.0]], system=SystemKind.SD)
        maps = measurement_maps(snapshot, 2, DispersionModel(shift_per_band=1))
        np.testing.assert_allclose(maps[:, 0, 0], [0.25, 1.0], rtol=1e-6)

    def test_sd_y_only_has_band_channels(self, rng):
        cube = random_cube(rng, 3, 4, 4)
        snapshot = forward_sd(cube, ones_mask(4, 4), DispersionModel())
        assert make_conditional_input(None, snapshot, InputMode.Y_ONLY, 3).channels == 3

    def test_all_zero_measurement(self, tiny_network_config):
        snapshot = Snapshot(values=np.zeros((8, 8)), system=SystemKind.SS)
        with pytest.raises(InvalidParameterError):
            make_conditional_input(draw_random_code(tiny_network_config, 8, 8), snapshot, InputMode.Z_AND_Y, 4)

    def test_missing_code(self, rng):
        snapshot = Snapshot(values=rng.random((8, 8)), system=SystemKind.SS)
        with pytest.raises(InvalidParameterError):
            make_conditional_input(None, snapshot, InputMode.Z_ONLY, 4)


class TestBlocks:
    """Tests for the residual block and the attention module."""

    def test_brb_zero_weights_give_zero(self, tiny_network_config, rng):
        params = build_network(tiny_network_config)
        weights = _zeroed(params, ["brb1."]).as_tensors()
        out = brb_forward(Tensor(rng.standard_normal((8, 4, 4))), weights, "brb1")
        np.testing.assert_array_equal(out.data, 0.0)

    def test_brb_identity_skip(self, tiny_network_config, rng):
        """Test that a zero main path and identity skip reproduce the input."""
        params = _zeroed(build_network(tiny_network_config), ["brb1."])
        params = params.replace({"brb1.skip.weight": np.eye(8).reshape(8, 8, 1, 1)})
        x = Tensor(rng.standard_normal((8, 4, 4)))
        np.testing.assert_allclose(brb_forward(x, params.as_tensors(), "brb1").data, x.data, rtol=1e-6)

    def test_brb_matches_primitive_composition(self, tiny_network_config, rng):
        weights = build_network(tiny_network_config).as_tensors()
        x = Tensor(rng.standard_normal((8, 4, 4)))
        main = leaky_relu(_conv(x, weights, "brb2.reduce"))
        main = leaky_relu(_conv(main, weights, "brb2.spatial"))
        expected = add(_conv(main, weights, "brb2.expand"), _conv(x, weights, "brb2.skip"))
        np.testing.assert_allclose(brb_forward(x, weights, "brb2").data, expected.data, atol=1e-6)

    def test_ssam_shape(self, tiny_network_config, rng):
        weights = build_network(tiny_network_config).as_tensors()
        x = Tensor(rng.standard_normal((8, 8, 12)))
        assert ssam_forward(x, weights).shape == (8, 8, 12)

    def test_ssam_indivisible_size(self, tiny_network_config, rng):
        weights = build_network(tiny_network_config).as_tensors()
        with pytest.raises(IndivisibleSizeError):
            ssam_forward(Tensor(rng.standard_normal((8, 6, 8))), weights)

    def test_ssam_matches_primitive_composition(self, tiny_network_config, rng):
        weights = build_network(tiny_network_config).as_tensors()
        x = Tensor(rng.standard_normal((8, 8, 8)))

        def refine(current, coarser, prefix):
            up = bilinear_upsample2x(coarser)
            gate = sigmoid(_conv(up, weights, f"{prefix}.attention"))
            gated = hadamard(gate, _conv(current, weights, f"{prefix}.feature"))
            return leaky_relu(_conv(concat_channels(gated, up), weights, f"{prefix}.fusion"))

        scale2 = leaky_relu(_conv(x, weights, "ssam.down1", stride=2))
        scale3 = leaky_relu(_conv(scale2, weights, "ssam.down2", stride=2))
        expected = refine(x, refine(scale2, scale3, "ssam.scale2"), "ssam.scale1")
        np.testing.assert_allclose(ssam_forward(x, weights).data, expected.data, atol=1e-5)

    def test_zero_attention_gates_at_half(self, tiny_network_config, rng):
        """Test that zeroed attention convolutions reduce every gate to 0.5."""
        params = _zeroed(build_network(tiny_network_config), ["ssam.scale1.attention", "ssam.scale2.attention"])
        weights = params.as_tensors()
        x = Tensor(rng.standard_normal((8, 8, 8)))

        scale2 = leaky_relu(_conv(x, weights, "ssam.down1", stride=2))
        scale3 = leaky_relu(_conv(scale2, weights, "ssam.down2", stride=2))

        def refine(current, coarser, prefix):
            up = bilinear_upsample2x(coarser)
            gated = Tensor(0.5 * _conv(current, weights, f"{prefix}.feature").data)
            return leaky_relu(_conv(concat_channels(gated, up), weights, f"{prefix}.fusion"))

        expected = refine(x, refine(scale2, scale3, "ssam.scale2"), "ssam.scale1")
        np.testing.assert_allclose(ssam_forward(x, weights).data, expected.data, atol=1e-5)


class TestNetworkForward:
    """Tests for the full generator."""

    @pytest.mark.parametrize("arch_mode", list(ArchMode))
    @pytest.mark.parametrize("input_mode", list(InputMode))
    def test_shape_and_range(self, tiny_network_config, rng, arch_mode, input_mode):
        config = tiny_network_config.model_copy(update={"arch_mode": arch_mode, "input_mode": input_mode})
        snapshot = Snapshot(values=rng.random((8, 12)) + 0.1, system=SystemKind.SS)
        code = draw_random_code(config, 8, 12)
        out = network_forward(code, snapshot, build_network(config), config)
        assert out.shape == (4, 8, 12)
        assert out.data.min() > 0.0
        assert out.data.max() < 1.0

    def test_sd_system(self, rng):
        config = NetworkConfig(bands=3, feature_width=8, z_channels=4, system=SystemKind.SD)
        snapshot = forward_sd(random_cube(rng, 3, 8, 8), ones_mask(8, 8), DispersionModel())
        cube = generate_cube(draw_random_code(config, 8, 8), snapshot, build_network(config), config)
        assert cube.values.shape == (3, 8, 8)

    def test_zero_tail_gives_half(self, tiny_network_config, rng):
        params = _zeroed(build_network(tiny_network_config), ["tail."])
        snapshot = Snapshot(values=rng.random((8, 8)) + 0.1, system=SystemKind.SS)
        out = network_forward(draw_random_code(tiny_network_config, 8, 8), snapshot, params, tiny_network_config)
        np.testing.assert_array_equal(out.data, 0.5)

    def test_deterministic(self, tiny_network_config, rng):
        snapshot = Snapshot(values=rng.random((8, 8)) + 0.1, system=SystemKind.SS)
        code = draw_random_code(tiny_network_config, 8, 8)
        params = build_network(tiny_network_config)
        a = network_forward(code, snapshot, params, tiny_network_config)
        b = network_forward(code, snapshot, params, tiny_network_config)
        np.testing.assert_array_equal(a.data, b.data)
