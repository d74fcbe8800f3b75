from __future__ import annotations

from collections.abc import Mapping
from typing import Optional

import numpy as np

from app.core.config import settings
from app.core.exceptions import InvalidParameterError, ShapeMismatchError
from app.domains.imaging.forward_model import shift_back
from app.domains.network.architecture import NetworkParameters, network_seeds, weight_gains
from app.domains.network.blocks import brb_forward, conv, ssam_forward
from app.domains.tensor import Tape, Tensor, concat_channels, leaky_relu, scale, sigmoid
from app.literals.imaging import SystemKind
from app.literals.network import BRB_COUNT, InputMode
from app.literals.tensor import Precision
from app.schemas.imaging import DispersionModel, HsiCube, Snapshot
from app.schemas.network import NetworkConfig, RandomCode


def draw_random_code(config: NetworkConfig, height: int, width: int) -> RandomCode:
    _, code_seed = network_seeds(config.seed)
    rng = np.random.default_rng(code_seed)
    values = rng.uniform(0.0, settings.NETWORK_Z_AMPLITUDE, size=(config.z_channels, height, width))
    return RandomCode(values=values, seed=config.seed)


def measurement_maps(snapshot: Snapshot, bands: int, dispersion: DispersionModel | None = None) -> np.ndarray:
    """Measurement scaled by its maximum; SD measurements are cut into per-band windows first."""
    peak = float(snapshot.values.max())
    if peak <= 0.0:
        raise InvalidParameterError("Measurement has no positive entries; cannot normalize by its maximum")
    if snapshot.system is SystemKind.SS:
        maps = snapshot.values[None, :, :]
    else:
        maps = shift_back(snapshot, bands, dispersion or DispersionModel()).values
    return maps / np.float32(peak)


def make_conditional_input(
    code: Optional[RandomCode],
    snapshot: Snapshot,
    input_mode: InputMode,
    bands: int,
    dispersion: DispersionModel | None = None,
    precision: Precision = Precision.FLOAT32,
) -> Tensor:
    """Network input: Z, the normalized measurement maps, or both stacked along channels."""
    if input_mode is InputMode.Z_ONLY:
        if code is None:
            raise InvalidParameterError("Input mode z_only needs a random code")
        return Tensor(code.values, dtype=precision.dtype)

    maps = Tensor(measurement_maps(snapshot, bands, dispersion), dtype=precision.dtype)
    if input_mode is InputMode.Y_ONLY:
        return maps

    if code is None:
        raise InvalidParameterError("Input mode z_and_y needs a random code")
    if code.values.shape[1:] != maps.shape[1:]:
        raise ShapeMismatchError(
            f"Random code spatial size {code.values.shape[1:]} does not match measurement maps {maps.shape[1:]}"
        )
    return concat_channels(Tensor(code.values, dtype=precision.dtype), maps)


def scaled_weights(weights: Mapping[str, Tensor], config: NetworkConfig) -> dict[str, Tensor]:
    """Stored weights times their layer gain; biases pass through."""
    gains = weight_gains(config)
    return {name: scale(tensor, gains[name]) if name in gains else tensor for name, tensor in weights.items()}


def network_output(inputs: Tensor, weights: Mapping[str, Tensor], config: NetworkConfig) -> Tensor:
    """Differentiable generator body: stem -> residual blocks -> attention -> 1x1 tail -> sigmoid."""
    weights = scaled_weights(weights, config)
    features = leaky_relu(conv(inputs, weights, "stem"))
    if config.uses_residual_blocks:
        for block in range(1, BRB_COUNT + 1):
            features = brb_forward(features, weights, f"brb{block}")
    if config.uses_attention:
        features = ssam_forward(features, weights)
    return sigmoid(conv(features, weights, "tail"))


def network_forward(
    code: Optional[RandomCode],
    snapshot: Snapshot,
    params: NetworkParameters,
    config: NetworkConfig,
    dispersion: DispersionModel | None = None,
    tape: Tape | None = None,
) -> Tensor:
    """
    Evaluate G_{Z|Y}(w).

    With a tape, the parameters are watched on it so the result can be
    differentiated; without one the evaluation is untracked.
    """
    inputs = make_conditional_input(code, snapshot, config.input_mode, config.bands, dispersion, params.precision)
    weights = params.watch(tape) if tape is not None else params.as_tensors()
    return network_output(inputs, weights, config)


def generate_cube(
    code: Optional[RandomCode],
    snapshot: Snapshot,
    params: NetworkParameters,
    config: NetworkConfig,
    dispersion: DispersionModel | None = None,
) -> HsiCube:
    return HsiCube(values=network_forward(code, snapshot, params, config, dispersion).data)
