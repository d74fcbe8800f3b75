from __future__ import annotations

from functools import lru_cache
from typing import Callable

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from app.core.config import settings
from app.core.exceptions import IndivisibleSizeError, InvalidParameterError, ShapeMismatchError
from app.domains.tensor.tensor import Tensor, apply_op
from app.literals.tensor import OpKind

SUPPORTED_KERNELS = (1, 3)
SUPPORTED_STRIDES = (1, 2)


def _require_ndim(tensor: Tensor, ndim: int, what: str) -> None:
    if tensor.ndim != ndim:
        raise ShapeMismatchError(f"{what} must have {ndim} dimensions, got shape {tensor.shape}")


def _require_same_shape(a: Tensor, b: Tensor, what: str) -> None:
    if a.shape != b.shape:
        raise ShapeMismatchError(f"{what} needs identical shapes, got {a.shape} and {b.shape}")


def conv2d(x: Tensor, weight: Tensor, bias: Tensor, stride: int = 1) -> Tensor:
    """
    2D convolution (cross-correlation) with zero padding of k // 2.

    Args:
        x: Input feature map (in_channels, height, width)
        weight: Kernel (out_channels, in_channels, k, k) with k in {1, 3}
        bias: Vector (out_channels,)
        stride: 1 keeps the spatial size, 2 halves it exactly

    Returns:
        Feature map (out_channels, height / stride, width / stride)
    """
    _require_ndim(x, 3, "conv2d input")
    _require_ndim(weight, 4, "conv2d kernel")
    _require_ndim(bias, 1, "conv2d bias")

    out_channels, in_channels, kernel_h, kernel_w = weight.shape
    if kernel_h != kernel_w or kernel_h not in SUPPORTED_KERNELS:
        raise ShapeMismatchError(f"conv2d supports square kernels of size {SUPPORTED_KERNELS}, got {weight.shape}")
    if x.channels != in_channels:
        raise ShapeMismatchError(f"conv2d kernel expects {in_channels} input channels, got {x.channels}")
    if bias.shape != (out_channels,):
        raise ShapeMismatchError(f"conv2d bias must have shape ({out_channels},), got {bias.shape}")
    if stride not in SUPPORTED_STRIDES:
        raise InvalidParameterError(f"conv2d stride must be one of {SUPPORTED_STRIDES}, got {stride}")
    if stride == 2 and (x.height % 2 or x.width % 2):
        raise IndivisibleSizeError(f"Stride-2 conv2d needs even spatial size, got {x.height}x{x.width}")

    k = kernel_h
    pad = k // 2
    height, width = x.height, x.width
    padded = np.pad(x.data, ((0, 0), (pad, pad), (pad, pad)))
    windows = sliding_window_view(padded, (k, k), axis=(1, 2))[:, ::stride, ::stride]
    out_h, out_w = windows.shape[1], windows.shape[2]

    output = np.tensordot(weight.data, windows, axes=([1, 2, 3], [0, 3, 4]))
    output += bias.data[:, None, None]

    def vjp(grad: np.ndarray):
        grad_bias = grad.sum(axis=(1, 2))
        grad_weight = np.tensordot(grad, windows, axes=([1, 2], [1, 2]))
        grad_padded = np.zeros_like(padded)
        for i in range(k):
            for j in range(k):
                grad_padded[:, i : i + stride * out_h : stride, j : j + stride * out_w : stride] += np.tensordot(
                    weight.data[:, :, i, j], grad, axes=([0], [0])
                )
        grad_x = grad_padded[:, pad : pad + height, pad : pad + width]
        return np.ascontiguousarray(grad_x), grad_weight, grad_bias

    return apply_op(OpKind.CONV2D, (x, weight, bias), output, vjp)


@lru_cache(maxsize=64)
def _upsample_matrix(size: int, dtype_name: str) -> np.ndarray:
    """Interpolation matrix (2 * size, size) with half-pixel centers and border clamping."""
    destination = np.arange(2 * size)
    source = np.clip((destination + 0.5) / 2.0 - 0.5, 0.0, size - 1)
    lower = np.floor(source).astype(np.int64)
    upper = np.minimum(lower + 1, size - 1)
    fraction = source - lower

    matrix = np.zeros((2 * size, size), dtype=np.float64)
    matrix[destination, lower] += 1.0 - fraction
    matrix[destination, upper] += fraction
    matrix = matrix.astype(dtype_name)
    matrix.setflags(write=False)
    return matrix


def bilinear_upsample2x(x: Tensor) -> Tensor:
    """Double height and width with bilinear interpolation."""
    _require_ndim(x, 3, "bilinear_upsample2x input")
    if x.height < 1 or x.width < 1:
        raise ShapeMismatchError(f"Cannot upsample an empty map of shape {x.shape}")

    rows = _upsample_matrix(x.height, x.dtype.name)
    cols = _upsample_matrix(x.width, x.dtype.name)
    output = rows @ x.data @ cols.T

    def vjp(grad: np.ndarray):
        return (rows.T @ grad @ cols,)

    return apply_op(OpKind.UPSAMPLE, (x,), output, vjp)


def sigmoid(x: Tensor) -> Tensor:
    """Split form on exp(-|x|); outputs stay strictly inside (0, 1) for the tensor's dtype."""
    data = x.data.astype(np.float64)
    decay = np.exp(-np.abs(data))
    exact = np.where(data >= 0, 1.0 / (1.0 + decay), decay / (1.0 + decay))
    slope = decay / (1.0 + decay) ** 2

    one = np.ones((), dtype=x.dtype)
    output = np.clip(exact, np.finfo(x.dtype).tiny, np.nextafter(one, 0 * one)).astype(x.dtype)

    def vjp(grad: np.ndarray):
        return (grad * slope.astype(grad.dtype),)

    return apply_op(OpKind.SIGMOID, (x,), output, vjp)


def scale(x: Tensor, factor: float) -> Tensor:
    """Multiply by a fixed scalar."""
    output = x.data * x.dtype.type(factor)

    def vjp(grad: np.ndarray):
        return (grad * grad.dtype.type(factor),)

    return apply_op(OpKind.SCALE, (x,), output, vjp)


def leaky_relu(x: Tensor, slope: float | None = None) -> Tensor:
    slope = settings.LEAKY_RELU_SLOPE if slope is None else slope
    positive = x.data > 0
    output = np.where(positive, x.data, x.data * slope)

    def vjp(grad: np.ndarray):
        return (np.where(positive, grad, grad * slope),)

    return apply_op(OpKind.LEAKY_RELU, (x,), output, vjp)


def hadamard(a: Tensor, b: Tensor) -> Tensor:
    _require_same_shape(a, b, "hadamard")
    output = a.data * b.data

    def vjp(grad: np.ndarray):
        return grad * b.data, grad * a.data

    return apply_op(OpKind.HADAMARD, (a, b), output, vjp)


def add(a: Tensor, b: Tensor) -> Tensor:
    _require_same_shape(a, b, "add")
    output = a.data + b.data

    def vjp(grad: np.ndarray):
        return grad, grad

    return apply_op(OpKind.ADD, (a, b), output, vjp)


def concat_channels(a: Tensor, b: Tensor) -> Tensor:
    _require_ndim(a, 3, "concat_channels input")
    _require_ndim(b, 3, "concat_channels input")
    if a.shape[1:] != b.shape[1:]:
        raise ShapeMismatchError(f"concat_channels needs equal spatial sizes, got {a.shape} and {b.shape}")
    split = a.channels
    output = np.concatenate((a.data, b.data), axis=0)

    def vjp(grad: np.ndarray):
        return grad[:split], grad[split:]

    return apply_op(OpKind.CONCAT, (a, b), output, vjp)


def slice_channels(x: Tensor, start: int, stop: int) -> Tensor:
    _require_ndim(x, 3, "slice_channels input")
    if not 0 <= start < stop <= x.channels:
        raise ShapeMismatchError(f"Channel slice [{start}:{stop}] out of range for {x.channels} channels")
    output = x.data[start:stop].copy()

    def vjp(grad: np.ndarray):
        full = np.zeros(x.shape, dtype=grad.dtype)
        full[start:stop] = grad
        return (full,)

    return apply_op(OpKind.SLICE, (x,), output, vjp)


def sum_all(x: Tensor) -> Tensor:
    output = np.asarray(x.data.sum(), dtype=x.dtype)

    def vjp(grad: np.ndarray):
        return (np.broadcast_to(grad, x.shape).copy(),)

    return apply_op(OpKind.SUM, (x,), output, vjp)


def linear_map(
    x: Tensor,
    forward: Callable[[np.ndarray], np.ndarray],
    adjoint: Callable[[np.ndarray], np.ndarray],
) -> Tensor:
    """Apply a fixed linear operator whose transpose is supplied as ``adjoint``."""
    output = forward(x.data)

    def vjp(grad: np.ndarray):
        return (adjoint(grad),)

    return apply_op(OpKind.LINEAR_MAP, (x,), output, vjp)


def l1_distance(x: Tensor, target: np.ndarray) -> Tensor:
    """Scalar sum of |x - target|; the subgradient at zero residual is 0."""
    if x.shape != target.shape:
        raise ShapeMismatchError(f"l1_distance needs identical shapes, got {x.shape} and {target.shape}")
    residual = x.data - target.astype(x.dtype, copy=False)
    output = np.asarray(np.abs(residual).sum(), dtype=x.dtype)

    def vjp(grad: np.ndarray):
        return (grad * np.sign(residual),)

    return apply_op(OpKind.L1_DISTANCE, (x,), output, vjp)
