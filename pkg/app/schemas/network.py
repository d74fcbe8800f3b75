from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.core.config import settings
from app.core.types import frozen_copy
from app.literals.imaging import SystemKind
from app.literals.network import SSAM_SCALES, ArchMode, InputMode


class NetworkConfig(BaseModel):
    bands: int = Field(ge=1)
    feature_width: int = Field(default_factory=lambda: settings.NETWORK_FEATURE_WIDTH, ge=2, multiple_of=2)
    z_channels: int = Field(default_factory=lambda: settings.NETWORK_Z_CHANNELS, ge=1)
    scales: Literal[3] = SSAM_SCALES
    input_mode: InputMode = InputMode.Z_AND_Y
    arch_mode: ArchMode = ArchMode.FULL
    system: SystemKind = SystemKind.SS
    seed: int = 0

    model_config = ConfigDict(frozen=True)

    @property
    def measurement_channels(self) -> int:
        return 1 if self.system is SystemKind.SS else self.bands

    @property
    def input_channels(self) -> int:
        if self.input_mode is InputMode.Z_ONLY:
            return self.z_channels
        if self.input_mode is InputMode.Y_ONLY:
            return self.measurement_channels
        return self.z_channels + self.measurement_channels

    @property
    def uses_residual_blocks(self) -> bool:
        return self.arch_mode in (ArchMode.FULL, ArchMode.BRB_ONLY)

    @property
    def uses_attention(self) -> bool:
        return self.arch_mode in (ArchMode.FULL, ArchMode.SSAM_ONLY)


class RandomCode(BaseModel):
    """Latent input Z, drawn once per run and kept fixed."""

    values: np.ndarray
    seed: int

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @field_validator("values", mode="before")
    @classmethod
    def _check_values(cls, value):
        array = frozen_copy(value, np.float32)
        if array.ndim != 3:
            raise ValueError(f"Random code must be (channels, height, width), got shape {array.shape}")
        amplitude = np.float32(settings.NETWORK_Z_AMPLITUDE)
        if array.size and (array.min() < 0.0 or array.max() > amplitude):
            raise ValueError(f"Random code values must lie in [0, {settings.NETWORK_Z_AMPLITUDE}]")
        return array

    @property
    def channels(self) -> int:
        return self.values.shape[0]


__all__ = ["NetworkConfig", "RandomCode"]
