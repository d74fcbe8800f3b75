from enum import Enum


class SystemKind(str, Enum):
    SS = "ss"
    SD = "sd"


class MaskKind(str, Enum):
    BINARY = "binary"
    GRAY = "gray"


class DispersionAxis(str, Enum):
    WIDTH = "width"


__all__ = ["SystemKind", "MaskKind", "DispersionAxis"]
