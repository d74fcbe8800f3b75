from __future__ import annotations

from collections.abc import Iterator, Mapping

import numpy as np

from app.core.exceptions import NonScalarLossError, TapeMismatchError
from app.domains.tensor.tensor import Tape, Tensor
from app.literals.tensor import OpKind


class GradientSet(Mapping[str, np.ndarray]):
    """Gradients of a scalar loss keyed by parameter name."""

    def __init__(self, gradients: Mapping[str, np.ndarray]):
        self._gradients = dict(gradients)

    def __getitem__(self, name: str) -> np.ndarray:
        return self._gradients[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._gradients)

    def __len__(self) -> int:
        return len(self._gradients)

    def global_norm(self) -> float:
        return float(np.sqrt(sum(float(np.sum(np.square(g, dtype=np.float64))) for g in self._gradients.values())))


def backward(tape: Tape, loss: Tensor) -> GradientSet:
    """
    Reverse-mode sweep from ``loss`` back to the watched parameters.

    Nodes are visited once, in reverse recording order. Parameters watched on
    the tape that the loss does not depend on get zero gradients.
    """
    if loss.tape is not tape or loss.node is None:
        raise TapeMismatchError("Loss tensor was not recorded on this tape")
    if loss.data.size != 1:
        raise NonScalarLossError(f"Loss must be a scalar, got shape {loss.shape}")

    pending: dict[int, np.ndarray] = {loss.node: np.ones_like(loss.data)}
    reached: dict[str, np.ndarray] = {}

    for index in range(loss.node, -1, -1):
        grad = pending.pop(index, None)
        if grad is None:
            continue

        node = tape.node(index)
        if node.op is OpKind.PARAMETER:
            reached[node.parameter] = grad
            continue

        for source, source_grad in zip(node.inputs, node.vjp(grad)):
            if source < 0 or source_grad is None:
                continue
            if source in pending:
                pending[source] = pending[source] + source_grad
            else:
                pending[source] = source_grad

    gradients = {}
    for name in tape.parameter_names:
        if name in reached:
            gradients[name] = reached[name]
        else:
            leaf = tape.parameter_node(name)
            gradients[name] = np.zeros(leaf.shape, dtype=leaf.dtype)
    return GradientSet(gradients)
