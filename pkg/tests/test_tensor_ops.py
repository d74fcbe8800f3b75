import numpy as np
import pytest

from app.core.exceptions import IndivisibleSizeError, NonFiniteValueError, ShapeMismatchError
from app.domains.tensor import (
    Tensor,
    add,
    bilinear_upsample2x,
    concat_channels,
    conv2d,
    hadamard,
    leaky_relu,
    scale,
    sigmoid,
    slice_channels,
)
from tests.factories.oracles import brute_conv2d


def _zero_bias(channels: int) -> Tensor:
    return Tensor(np.zeros(channels))


class TestTensor:
    """Tests for the immutable Tensor value type."""

    def test_data_is_read_only(self):
        """Test that tensor values cannot be modified in place."""
        tensor = Tensor(np.ones((1, 2, 2)))
        with pytest.raises(ValueError):
            tensor.data[0, 0, 0] = 5.0

    def test_source_array_is_copied(self):
        """Test that mutating the source array leaves the tensor untouched."""
        source = np.zeros((1, 2, 2), dtype=np.float32)
        tensor = Tensor(source)
        source[0, 0, 0] = 1.0
        assert tensor.data[0, 0, 0] == 0.0

    def test_non_finite_values_rejected(self):
        """Test that NaN and Inf are contract violations."""
        with pytest.raises(NonFiniteValueError):
            Tensor(np.array([[[np.nan]]]))
        with pytest.raises(NonFiniteValueError):
            Tensor(np.array([[[np.inf]]]))

    def test_default_dtype_is_float32(self):
        assert Tensor(np.ones((1, 1, 1), dtype=np.float64)).dtype == np.float32


class TestConv2d:
    """Tests for conv2d."""

    def test_identity_kernel(self, rng):
        """Test that a 1x1 unit kernel with zero bias returns its input."""
        x = Tensor(rng.random((1, 5, 5)))
        out = conv2d(x, Tensor(np.ones((1, 1, 1, 1))), _zero_bias(1))
        np.testing.assert_array_equal(out.data, x.data)

    def test_constant_field_interior(self):
        """Test that a 3x3 all-ones kernel sums nine equal neighbours away from the border."""
        c = 0.25
        x = Tensor(np.full((1, 6, 6), c))
        out = conv2d(x, Tensor(np.ones((1, 1, 3, 3))), _zero_bias(1))
        np.testing.assert_allclose(out.data[0, 1:-1, 1:-1], 9 * c, rtol=1e-6)
        assert out.data[0, 0, 0] == pytest.approx(4 * c)

    @pytest.mark.parametrize("stride", [1, 2])
    def test_matches_direct_sum(self, rng, stride):
        """Test against a nested-loop direct convolution."""
        x = rng.standard_normal((2, 6, 6))
        weight = rng.standard_normal((4, 2, 3, 3))
        bias = rng.standard_normal(4)
        out = conv2d(Tensor(x), Tensor(weight), Tensor(bias), stride=stride)
        expected = brute_conv2d(x.astype(np.float32), weight.astype(np.float32), bias.astype(np.float32), stride)
        assert out.shape == expected.shape
        np.testing.assert_allclose(out.data, expected, atol=1e-5)

    def test_stride_two_halves_size(self, rng):
        out = conv2d(Tensor(rng.random((3, 8, 4))), Tensor(rng.random((5, 3, 3, 3))), _zero_bias(5), stride=2)
        assert out.shape == (5, 4, 2)

    def test_linear_in_input(self, rng):
        """Test that conv2d with zero bias is linear in its input."""
        a, b = rng.standard_normal((2, 3, 6, 6))
        weight = Tensor(rng.standard_normal((2, 3, 3, 3)), dtype=np.float64)
        bias = Tensor(np.zeros(2), dtype=np.float64)
        alpha, beta = 0.7, -1.3
        combined = conv2d(Tensor(alpha * a + beta * b, dtype=np.float64), weight, bias).data
        first = conv2d(Tensor(a, dtype=np.float64), weight, bias).data
        second = conv2d(Tensor(b, dtype=np.float64), weight, bias).data
        np.testing.assert_allclose(combined, alpha * first + beta * second, atol=1e-5)

    def test_odd_size_with_stride_two_rejected(self, rng):
        with pytest.raises(IndivisibleSizeError):
            conv2d(Tensor(rng.random((1, 5, 6))), Tensor(rng.random((1, 1, 3, 3))), _zero_bias(1), stride=2)

    def test_channel_mismatch_rejected(self, rng):
        with pytest.raises(ShapeMismatchError):
            conv2d(Tensor(rng.random((2, 4, 4))), Tensor(rng.random((1, 3, 1, 1))), _zero_bias(1))

    def test_unsupported_kernel_rejected(self, rng):
        with pytest.raises(ShapeMismatchError):
            conv2d(Tensor(rng.random((1, 4, 4))), Tensor(rng.random((1, 1, 5, 5))), _zero_bias(1))


class TestBilinearUpsample:
    """Tests for bilinear_upsample2x."""

    def test_constant_map(self):
        out = bilinear_upsample2x(Tensor(np.full((2, 3, 5), 0.4)))
        assert out.shape == (2, 6, 10)
        np.testing.assert_allclose(out.data, 0.4, rtol=1e-6)

    def test_half_pixel_row(self):
        """Test the half-pixel-center formula on a 1x2 row."""
        out = bilinear_upsample2x(Tensor(np.array([[[0.0, 1.0]]])))
        np.testing.assert_allclose(out.data[0, 0], [0.0, 0.25, 0.75, 1.0], atol=1e-7)
        np.testing.assert_allclose(out.data[0, 1], [0.0, 0.25, 0.75, 1.0], atol=1e-7)

    def test_single_pixel(self):
        out = bilinear_upsample2x(Tensor(np.array([[[3.0]]])))
        np.testing.assert_array_equal(out.data, np.full((1, 2, 2), 3.0, dtype=np.float32))


class TestPointwiseOps:
    """Tests for sigmoid, leaky_relu, hadamard, add and channel concatenation."""

    def test_sigmoid_at_zero(self):
        np.testing.assert_array_equal(sigmoid(Tensor(np.zeros((2, 2, 2)))).data, 0.5)

    def test_sigmoid_large_inputs_stay_finite(self):
        """Test that extreme logits saturate instead of overflowing."""
        out = sigmoid(Tensor(np.array([[[-1e4, 1e4]]])))
        assert np.all(np.isfinite(out.data))
        assert out.data[0, 0, 0] == pytest.approx(0.0, abs=1e-12)
        assert out.data[0, 0, 1] == pytest.approx(1.0)

    def test_sigmoid_stays_inside_open_interval(self):
        """Test that float32 logits far from zero never round to exactly 0 or 1."""
        out = sigmoid(Tensor(np.array([[[20.0, -20.0, 100.0, -100.0]]], dtype=np.float32)))
        assert out.dtype == np.float32
        assert np.all(out.data > 0.0)
        assert np.all(out.data < 1.0)
        assert out.data[0, 0, 1] == pytest.approx(np.exp(-20.0), rel=1e-5)

    def test_sigmoid_symmetry(self, rng):
        x = rng.uniform(-8.0, 8.0, (2, 3, 3))
        plus = sigmoid(Tensor(x, dtype=np.float64)).data
        minus = sigmoid(Tensor(-x, dtype=np.float64)).data
        np.testing.assert_allclose(plus + minus, 1.0, atol=1e-15)

    def test_scale(self, rng):
        x = Tensor(rng.random((2, 3, 3)))
        np.testing.assert_allclose(scale(x, 0.5).data, 0.5 * x.data, rtol=1e-7)

    def test_leaky_relu(self):
        out = leaky_relu(Tensor(np.array([[[-1.0, 2.0]]])), slope=0.2)
        np.testing.assert_allclose(out.data[0, 0], [-0.2, 2.0], rtol=1e-6)

    def test_hadamard_identity(self, rng):
        a = Tensor(rng.random((2, 3, 3)))
        np.testing.assert_array_equal(hadamard(a, Tensor(np.ones((2, 3, 3)))).data, a.data)

    def test_add(self):
        out = add(Tensor(np.ones((1, 2, 2))), Tensor(np.full((1, 2, 2), 2.0)))
        np.testing.assert_array_equal(out.data, 3.0)

    def test_shape_mismatch(self, rng):
        with pytest.raises(ShapeMismatchError):
            hadamard(Tensor(rng.random((1, 2, 2))), Tensor(rng.random((1, 3, 2))))
        with pytest.raises(ShapeMismatchError):
            add(Tensor(rng.random((1, 2, 2))), Tensor(rng.random((2, 2, 2))))

    def test_concat_then_slice_recovers_inputs(self, rng):
        """Test that slicing a concatenation returns both parts exactly."""
        a = Tensor(rng.random((3, 4, 4)))
        b = Tensor(rng.random((2, 4, 4)))
        joined = concat_channels(a, b)
        assert joined.channels == 5
        np.testing.assert_array_equal(slice_channels(joined, 0, 3).data, a.data)
        np.testing.assert_array_equal(slice_channels(joined, 3, 5).data, b.data)

    def test_concat_spatial_mismatch(self, rng):
        with pytest.raises(ShapeMismatchError):
            concat_channels(Tensor(rng.random((1, 4, 4))), Tensor(rng.random((1, 4, 2))))
