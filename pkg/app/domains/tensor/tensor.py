from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from app.core.exceptions import InvalidParameterError, NonFiniteValueError, ShapeMismatchError, TapeMismatchError
from app.core.types import freeze, frozen_copy
from app.literals.tensor import OpKind

VectorJacobian = Callable[[np.ndarray], Sequence[Optional[np.ndarray]]]


def ensure_finite(values: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(values)):
        raise NonFiniteValueError(f"{what} produced non-finite values")


class Tensor:
    """
    Immutable dense array.

    Feature maps are laid out as (channels, height, width) in C order, so every
    channel plane is contiguous and row-major. Parameters (kernels, biases) and
    scalars use the same class with their own shapes. A tensor produced while a
    `Tape` is recording carries the id of the node that produced it.
    """

    __slots__ = ("_data", "_tape", "_node")

    def __init__(self, data, dtype=np.float32):
        array = frozen_copy(data, dtype)
        ensure_finite(array, "tensor")
        self._data = array
        self._tape: Tape | None = None
        self._node: int | None = None

    @classmethod
    def _wrap(cls, array: np.ndarray, tape: Tape | None = None, node: int | None = None) -> Tensor:
        tensor = cls.__new__(cls)
        tensor._data = freeze(array)
        tensor._tape = tape
        tensor._node = node
        return tensor

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def shape(self) -> tuple[int, ...]:
        return self._data.shape

    @property
    def ndim(self) -> int:
        return self._data.ndim

    @property
    def dtype(self) -> np.dtype:
        return self._data.dtype

    @property
    def channels(self) -> int:
        return self._feature_shape()[0]

    @property
    def height(self) -> int:
        return self._feature_shape()[1]

    @property
    def width(self) -> int:
        return self._feature_shape()[2]

    @property
    def tape(self) -> Tape | None:
        return self._tape

    @property
    def node(self) -> int | None:
        return self._node

    @property
    def requires_grad(self) -> bool:
        return self._node is not None

    def numpy(self) -> np.ndarray:
        return self._data.copy()

    def item(self) -> float:
        if self._data.size != 1:
            raise ShapeMismatchError(f"item() needs a single-element tensor, got shape {self.shape}")
        return float(self._data.reshape(-1)[0])

    def _feature_shape(self) -> tuple[int, int, int]:
        if self._data.ndim != 3:
            raise ShapeMismatchError(f"Expected a (channels, height, width) tensor, got shape {self.shape}")
        return self._data.shape

    def __repr__(self) -> str:
        tracked = f", node={self._node}" if self._node is not None else ""
        return f"Tensor(shape={self.shape}, dtype={self.dtype}{tracked})"


@dataclass(frozen=True)
class TapeNode:
    op: OpKind
    inputs: tuple[int, ...]
    shape: tuple[int, ...]
    dtype: np.dtype
    parameter: str | None = None
    vjp: VectorJacobian | None = None


class Tape:
    """
    Ordered record of the operations applied to watched parameters.

    Nodes are appended as operations execute, so every node's inputs precede it.
    Inputs that are not on the tape are stored as -1 and receive no gradient.
    """

    def __init__(self):
        self._nodes: list[TapeNode] = []
        self._parameters: dict[str, int] = {}

    @property
    def nodes(self) -> tuple[TapeNode, ...]:
        return tuple(self._nodes)

    @property
    def parameter_names(self) -> tuple[str, ...]:
        return tuple(self._parameters)

    def node(self, index: int) -> TapeNode:
        return self._nodes[index]

    def parameter_node(self, name: str) -> TapeNode:
        return self._nodes[self._parameters[name]]

    def __len__(self) -> int:
        return len(self._nodes)

    def watch(self, name: str, values, dtype=None) -> Tensor:
        """Register a named parameter as a leaf and return its tracked tensor."""
        if name in self._parameters:
            raise InvalidParameterError(f"Parameter '{name}' is already watched on this tape")
        if isinstance(values, Tensor):
            values = values.data
        array = np.asarray(values)
        dtype = array.dtype if dtype is None else np.dtype(dtype)
        array = frozen_copy(array, dtype)
        ensure_finite(array, f"parameter '{name}'")

        index = len(self._nodes)
        self._nodes.append(TapeNode(OpKind.PARAMETER, (), array.shape, array.dtype, parameter=name))
        self._parameters[name] = index
        return Tensor._wrap(array, self, index)

    def record(self, op: OpKind, inputs: Sequence[Tensor], output: np.ndarray, vjp: VectorJacobian) -> Tensor:
        sources = []
        for tensor in inputs:
            if tensor.tape is None:
                sources.append(-1)
            elif tensor.tape is self:
                sources.append(tensor.node)
            else:
                raise TapeMismatchError(f"{op.value} mixes tensors recorded on different tapes")

        index = len(self._nodes)
        self._nodes.append(TapeNode(op, tuple(sources), output.shape, output.dtype, vjp=vjp))
        return Tensor._wrap(output, self, index)


def apply_op(op: OpKind, inputs: Sequence[Tensor], output: np.ndarray, vjp: VectorJacobian) -> Tensor:
    """Wrap an op result, recording it when any input is tracked."""
    ensure_finite(output, op.value)

    tapes = {id(t.tape): t.tape for t in inputs if t.tape is not None}
    if len(tapes) > 1:
        raise TapeMismatchError(f"{op.value} mixes tensors recorded on different tapes")
    if not tapes:
        return Tensor._wrap(output)

    tape = next(iter(tapes.values()))
    return tape.record(op, inputs, output, vjp)
