from __future__ import annotations

from collections.abc import Mapping

import numpy as np

from app.core.exceptions import InvalidParameterError, NonFiniteGradientError, ShapeMismatchError
from app.domains.tensor.parameters import ParameterStore
from app.schemas.tensor import AdamConfig


class AdamState:
    """First/second moment estimates and step counter for one optimization run."""

    def __init__(self, config: AdamConfig, first_moment: dict[str, np.ndarray], second_moment: dict[str, np.ndarray]):
        self.config = config
        self.m = first_moment
        self.v = second_moment
        self.t = 0

    @classmethod
    def initial(cls, params: Mapping[str, np.ndarray], config: AdamConfig | None = None) -> AdamState:
        config = config or AdamConfig()
        first = {name: np.zeros_like(array) for name, array in params.items()}
        second = {name: np.zeros_like(array) for name, array in params.items()}
        return cls(config, first, second)


def adam_step(
    params: ParameterStore, grads: Mapping[str, np.ndarray], state: AdamState
) -> tuple[ParameterStore, AdamState]:
    """
    One bias-corrected Adam update.

    Parameters without an entry in ``grads`` are treated as having a zero gradient.
    """
    config = state.config
    if config.max_steps is not None and state.t >= config.max_steps:
        raise InvalidParameterError(f"Adam state already took the maximum of {config.max_steps} steps")

    unknown = set(grads) - set(params)
    if unknown:
        raise InvalidParameterError(f"Gradients for unknown parameters: {sorted(unknown)}")
    for name, grad in grads.items():
        if np.shape(grad) != params[name].shape:
            raise ShapeMismatchError(f"Gradient for '{name}' has shape {np.shape(grad)}, expected {params[name].shape}")
        if not np.all(np.isfinite(grad)):
            raise NonFiniteGradientError(name)

    t = state.t + 1
    first_correction = 1.0 - config.beta1**t
    second_correction = 1.0 - config.beta2**t

    updates, first, second = {}, {}, {}
    for name, weight in params.items():
        grad = grads.get(name)
        if grad is None:
            grad = np.zeros_like(weight)
        m = config.beta1 * state.m[name] + (1.0 - config.beta1) * grad
        v = config.beta2 * state.v[name] + (1.0 - config.beta2) * np.square(grad)
        first[name], second[name] = m, v
        step = config.lr * (m / first_correction) / (np.sqrt(v / second_correction) + config.epsilon)
        updates[name] = weight - step

    # the state only advances once the new parameters were accepted
    updated = params.replace(updates)
    state.m.update(first)
    state.v.update(second)
    state.t = t
    return updated, state
