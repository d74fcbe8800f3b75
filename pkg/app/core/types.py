from typing import TypeAlias

import numpy as np
import numpy.typing as npt

FloatArray: TypeAlias = npt.NDArray[np.floating]
Float32Array: TypeAlias = npt.NDArray[np.float32]
Pixel: TypeAlias = tuple[int, int]


def frozen_copy(values, dtype=np.float32) -> FloatArray:
    """Return a read-only copy of ``values`` with the requested dtype."""
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


def freeze(array: np.ndarray) -> np.ndarray:
    """Mark a freshly produced array read-only without copying it."""
    array.setflags(write=False)
    return array
