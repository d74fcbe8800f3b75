from collections.abc import Mapping

from app.core.exceptions import IndivisibleSizeError
from app.domains.tensor import (
    Tensor,
    add,
    bilinear_upsample2x,
    concat_channels,
    conv2d,
    hadamard,
    leaky_relu,
    sigmoid,
)

Weights = Mapping[str, Tensor]


def conv(x: Tensor, weights: Weights, name: str, stride: int = 1) -> Tensor:
    return conv2d(x, weights[f"{name}.weight"], weights[f"{name}.bias"], stride=stride)


def brb_forward(x: Tensor, weights: Weights, prefix: str) -> Tensor:
    """
    Bottleneck residual block.

    The 1x1 skip path fuses band correlations; the main path is a
    1x1 reduce -> 3x3 -> 1x1 expand bottleneck at half the feature width.
    Output is the sum of both paths.
    """
    spectral = conv(x, weights, f"{prefix}.skip")
    residual = leaky_relu(conv(x, weights, f"{prefix}.reduce"))
    residual = leaky_relu(conv(residual, weights, f"{prefix}.spatial"))
    residual = conv(residual, weights, f"{prefix}.expand")
    return add(residual, spectral)


def _refine(current: Tensor, coarser: Tensor, weights: Weights, prefix: str) -> Tensor:
    upsampled = bilinear_upsample2x(coarser)
    attention = sigmoid(conv(upsampled, weights, f"{prefix}.attention"))
    gated = hadamard(attention, conv(current, weights, f"{prefix}.feature"))
    return leaky_relu(conv(concat_channels(gated, upsampled), weights, f"{prefix}.fusion"))


def ssam_forward(x: Tensor, weights: Weights, prefix: str = "ssam") -> Tensor:
    """
    Multi-scale spatial-spectral attention.

    Builds three scales with stride-2 convolutions, then refines top-down:
    scale 2 is gated by attention computed from scale 3, and scale 1 is gated
    by attention computed from the refined scale 2.
    """
    if x.height % 4 or x.width % 4:
        raise IndivisibleSizeError(f"Attention module needs height and width divisible by 4, got {x.height}x{x.width}")

    scale1 = x
    scale2 = leaky_relu(conv(scale1, weights, f"{prefix}.down1", stride=2))
    scale3 = leaky_relu(conv(scale2, weights, f"{prefix}.down2", stride=2))

    refined2 = _refine(scale2, scale3, weights, f"{prefix}.scale2")
    return _refine(scale1, refined2, weights, f"{prefix}.scale1")
