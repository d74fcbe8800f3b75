from enum import Enum


class InputMode(str, Enum):
    Z_ONLY = "z_only"
    Y_ONLY = "y_only"
    Z_AND_Y = "z_and_y"


class ArchMode(str, Enum):
    BRB_ONLY = "brb_only"
    SSAM_ONLY = "ssam_only"
    FULL = "full"


BRB_COUNT = 3
SSAM_SCALES = 3

__all__ = ["InputMode", "ArchMode", "BRB_COUNT", "SSAM_SCALES"]
