from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from app.core.config import settings
from app.literals.imaging import SystemKind
from app.literals.network import ArchMode, InputMode
from app.schemas.imaging import HsiCube
from app.schemas.network import NetworkConfig
from app.schemas.tensor import AdamConfig


class RunConfig(BaseModel):
    """Settings for one unsupervised reconstruction run."""

    iterations: int = Field(default_factory=lambda: settings.RECON_ITERATIONS, ge=1)
    lr: float = Field(default_factory=lambda: settings.RECON_LEARNING_RATE, gt=0)
    seed: int = 0
    noise_free: bool = True
    log_every: int = Field(default_factory=lambda: settings.RECON_LOG_EVERY, ge=1)
    system: SystemKind = SystemKind.SS
    input_mode: InputMode = InputMode.Z_AND_Y
    arch_mode: ArchMode = ArchMode.FULL
    feature_width: int = Field(default_factory=lambda: settings.NETWORK_FEATURE_WIDTH, ge=2, multiple_of=2)
    z_channels: int = Field(default_factory=lambda: settings.NETWORK_Z_CHANNELS, ge=1)

    model_config = ConfigDict(frozen=True)

    def network_config(self, bands: int) -> NetworkConfig:
        return NetworkConfig(
            bands=bands,
            feature_width=self.feature_width,
            z_channels=self.z_channels,
            input_mode=self.input_mode,
            arch_mode=self.arch_mode,
            system=self.system,
            seed=self.seed,
        )

    def adam_config(self) -> AdamConfig:
        return AdamConfig(lr=self.lr)

    def logged_iterations(self) -> List[int]:
        """Step counts at which the curve is sampled: 0, L, 2L, ... and always the last one."""
        points = list(range(0, self.iterations, self.log_every))
        points.append(self.iterations)
        return points


class CurvePoint(BaseModel):
    iteration: int = Field(ge=0)
    loss: float
    psnr: Optional[float] = None

    model_config = ConfigDict(frozen=True)


class ReconResult(BaseModel):
    cube: HsiCube
    loss_curve: List[CurvePoint]
    loss_history: List[float]
    wall_clock_seconds: float = Field(ge=0)
    parameter_digest: str

    model_config = ConfigDict(frozen=True)

    @property
    def final_loss(self) -> float:
        return self.loss_history[-1]

    @property
    def final_psnr(self) -> Optional[float]:
        return self.loss_curve[-1].psnr if self.loss_curve else None


class GapTvConfig(BaseModel):
    iterations: int = Field(default_factory=lambda: settings.GAPTV_ITERATIONS, ge=1)
    tv_weight: Optional[float] = Field(default=None, ge=0)
    tv_inner_iterations: int = Field(default_factory=lambda: settings.GAPTV_TV_INNER_ITERATIONS, ge=1)
    accelerate: bool = False

    model_config = ConfigDict(frozen=True)

    def resolved_tv_weight(self, measurement: np.ndarray) -> float:
        """Explicit weight, or a fraction of the measurement peak when unset."""
        if self.tv_weight is not None:
            return self.tv_weight
        return settings.GAPTV_TV_WEIGHT_RATIO * float(np.max(measurement))


class AblationOutcome(BaseModel):
    input_mode: InputMode
    arch_mode: ArchMode
    final_loss: float
    final_psnr: Optional[float] = None
    parameter_count: int = Field(ge=0)
    wall_clock_seconds: float = Field(ge=0)


__all__ = ["RunConfig", "CurvePoint", "ReconResult", "GapTvConfig", "AblationOutcome"]
