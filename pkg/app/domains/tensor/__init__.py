from app.domains.tensor.autodiff import GradientSet, backward
from app.domains.tensor.ops import (
    add,
    bilinear_upsample2x,
    concat_channels,
    conv2d,
    hadamard,
    l1_distance,
    leaky_relu,
    linear_map,
    scale,
    sigmoid,
    slice_channels,
    sum_all,
)
from app.domains.tensor.optim import AdamState, adam_step
from app.domains.tensor.parameters import ParameterStore
from app.domains.tensor.tensor import Tape, TapeNode, Tensor

__all__ = [
    "Tensor",
    "Tape",
    "TapeNode",
    "GradientSet",
    "ParameterStore",
    "AdamState",
    "adam_step",
    "backward",
    "conv2d",
    "bilinear_upsample2x",
    "sigmoid",
    "leaky_relu",
    "hadamard",
    "add",
    "concat_channels",
    "slice_channels",
    "sum_all",
    "linear_map",
    "scale",
    "l1_distance",
]
