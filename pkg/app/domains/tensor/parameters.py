from __future__ import annotations

import copy
import hashlib
from collections.abc import Iterator, Mapping

import numpy as np

from app.core.exceptions import InvalidParameterError, ShapeMismatchError
from app.core.types import frozen_copy
from app.domains.tensor.tensor import Tape, Tensor, ensure_finite
from app.literals.tensor import Precision


class ParameterStore(Mapping[str, np.ndarray]):
    """
    Closed registry of named learnable arrays.

    The registry never grows or shrinks after construction; `replace` returns a
    new store with updated values of the same names and shapes.
    """

    def __init__(self, values: Mapping[str, np.ndarray], precision: Precision = Precision.FLOAT32):
        self._precision = precision
        self._values: dict[str, np.ndarray] = {}
        for name, array in values.items():
            frozen = frozen_copy(array, precision.dtype)
            ensure_finite(frozen, f"parameter '{name}'")
            self._values[name] = frozen

    def __getitem__(self, name: str) -> np.ndarray:
        return self._values[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    @property
    def precision(self) -> Precision:
        return self._precision

    def count(self) -> int:
        return sum(array.size for array in self._values.values())

    def replace(self, updates: Mapping[str, np.ndarray]) -> ParameterStore:
        unknown = set(updates) - set(self._values)
        if unknown:
            raise InvalidParameterError(f"Unknown parameters: {sorted(unknown)}")

        values = dict(self._values)
        for name, array in updates.items():
            if np.shape(array) != values[name].shape:
                raise ShapeMismatchError(f"Parameter '{name}' must keep shape {values[name].shape}")
            frozen = frozen_copy(array, self._precision.dtype)
            ensure_finite(frozen, f"parameter '{name}'")
            values[name] = frozen

        clone = copy.copy(self)
        clone._values = values
        return clone

    def astype(self, precision: Precision) -> ParameterStore:
        clone = copy.copy(self)
        clone._precision = precision
        clone._values = {name: frozen_copy(array, precision.dtype) for name, array in self._values.items()}
        return clone

    def watch(self, tape: Tape) -> dict[str, Tensor]:
        return {name: tape.watch(name, array) for name, array in self._values.items()}

    def as_tensors(self) -> dict[str, Tensor]:
        return {name: Tensor._wrap(array) for name, array in self._values.items()}

    def digest(self) -> str:
        sha = hashlib.sha256()
        for name, array in self._values.items():
            sha.update(name.encode("utf-8"))
            sha.update(np.ascontiguousarray(array).tobytes())
        return sha.hexdigest()
