from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from app.core.config import settings
from app.domains.tensor.parameters import ParameterStore
from app.literals.network import BRB_COUNT
from app.literals.tensor import Precision
from app.schemas.network import NetworkConfig

ATTENTION_SCALES = (1, 2)
UNIT_BOUND = np.sqrt(3.0)


@dataclass(frozen=True)
class ConvSpec:
    name: str
    in_channels: int
    out_channels: int
    kernel: int
    stride: int = 1

    @property
    def fan_in(self) -> int:
        return self.in_channels * self.kernel * self.kernel

    @property
    def weight_shape(self) -> tuple[int, int, int, int]:
        return self.out_channels, self.in_channels, self.kernel, self.kernel

    @property
    def parameter_count(self) -> int:
        return self.out_channels * self.fan_in + self.out_channels

    @property
    def weight_gain(self) -> float:
        return float(np.sqrt(settings.NETWORK_HE_GAIN / self.fan_in))


def layer_specs(config: NetworkConfig) -> list[ConvSpec]:
    """Every convolution of the configured network, in registry order."""
    width = config.feature_width
    mid = width // 2
    specs = [ConvSpec("stem", config.input_channels, width, 1)]

    if config.uses_residual_blocks:
        for block in range(1, BRB_COUNT + 1):
            specs += [
                ConvSpec(f"brb{block}.skip", width, width, 1),
                ConvSpec(f"brb{block}.reduce", width, mid, 1),
                ConvSpec(f"brb{block}.spatial", mid, mid, 3),
                ConvSpec(f"brb{block}.expand", mid, width, 1),
            ]

    if config.uses_attention:
        specs += [
            ConvSpec("ssam.down1", width, width, 3, stride=2),
            ConvSpec("ssam.down2", width, width, 3, stride=2),
        ]
        for scale in ATTENTION_SCALES:
            specs += [
                ConvSpec(f"ssam.scale{scale}.attention", width, width, 3),
                ConvSpec(f"ssam.scale{scale}.feature", width, width, 3),
                ConvSpec(f"ssam.scale{scale}.fusion", 2 * width, width, 3),
            ]

    specs.append(ConvSpec("tail", width, config.bands, 1))
    return specs


def parameter_count(config: NetworkConfig) -> int:
    return sum(spec.parameter_count for spec in layer_specs(config))


def weight_gains(config: NetworkConfig) -> dict[str, float]:
    return {f"{spec.name}.weight": spec.weight_gain for spec in layer_specs(config)}


class NetworkParameters(ParameterStore):
    """Learnable weights w of the conditional generator, registered per convolution."""

    def __init__(self, config: NetworkConfig, values, precision: Precision = Precision.FLOAT32):
        super().__init__(values, precision)
        self.config = config


def network_seeds(seed: int) -> tuple[np.random.SeedSequence, np.random.SeedSequence]:
    """Independent streams for weight initialization and the random code."""
    weights, code = np.random.SeedSequence(seed).spawn(2)
    return weights, code


def build_network(config: NetworkConfig) -> NetworkParameters:
    """
    Unit-variance uniform weights (bound sqrt(3)) and zero biases, deterministic per seed.

    Each weight is multiplied by its layer gain sqrt(2 / fan_in) in the forward
    pass, so the effective weights are He-uniform with bound sqrt(6 / fan_in)
    and one Adam step moves a layer's effective weights by at most lr times its gain.
    """
    weight_seed, _ = network_seeds(config.seed)
    rng = np.random.default_rng(weight_seed)

    values = {}
    for spec in layer_specs(config):
        values[f"{spec.name}.weight"] = rng.uniform(-UNIT_BOUND, UNIT_BOUND, spec.weight_shape).astype(np.float32)
        values[f"{spec.name}.bias"] = np.zeros(spec.out_channels, dtype=np.float32)
    return NetworkParameters(config, values)
