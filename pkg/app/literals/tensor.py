from enum import Enum

import numpy as np


class OpKind(str, Enum):
    PARAMETER = "parameter"
    CONV2D = "conv2d"
    UPSAMPLE = "bilinear_upsample2x"
    SIGMOID = "sigmoid"
    SCALE = "scale"
    LEAKY_RELU = "leaky_relu"
    HADAMARD = "hadamard"
    ADD = "add"
    CONCAT = "concat_channels"
    SLICE = "slice_channels"
    SUM = "sum"
    LINEAR_MAP = "linear_map"
    L1_DISTANCE = "l1_distance"


class Precision(str, Enum):
    FLOAT32 = "float32"
    FLOAT64 = "float64"

    @property
    def dtype(self) -> np.dtype:
        return np.dtype(self.value)


__all__ = ["OpKind", "Precision"]
