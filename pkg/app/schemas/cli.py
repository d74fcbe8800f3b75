from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, FilePath, field_validator, model_validator

from app.core.config import settings
from app.core.types import Pixel
from app.literals.imaging import MaskKind, SystemKind
from app.literals.network import ArchMode, InputMode
from app.literals.tensor import Precision


class CommandArgs(BaseModel):
    model_config = ConfigDict(extra="ignore", frozen=True)


class OperatorArgs(CommandArgs):
    """Flags that describe the acquisition: mask file, system and dispersion."""

    mask: FilePath
    system: SystemKind
    shift: int = Field(default_factory=lambda: settings.DISPERSION_SHIFT, ge=0)


class MakeMaskArgs(CommandArgs):
    height: int = Field(ge=1)
    width: int = Field(ge=1)
    kind: MaskKind = MaskKind.BINARY
    density: float = Field(default_factory=lambda: settings.MASK_DENSITY, gt=0, lt=1)
    seed: int = 0
    out: Path


class MakeCubeArgs(CommandArgs):
    height: int = Field(ge=1)
    width: int = Field(ge=1)
    bands: int = Field(ge=1)
    seed: int = 0
    wl_start: float = 400.0
    wl_end: float = 700.0
    out: Path

    @model_validator(mode="after")
    def _check_range(self):
        if self.wl_end <= self.wl_start:
            raise ValueError("--wl-end must be greater than --wl-start")
        return self


class SimulateArgs(OperatorArgs):
    cube: FilePath
    noise_sigma: float = Field(default=0.0, ge=0)
    seed: Optional[int] = None
    out: Path


class ReconstructArgs(OperatorArgs):
    meas: FilePath
    bands: int = Field(ge=1)
    iters: int = Field(default_factory=lambda: settings.RECON_ITERATIONS, ge=1)
    lr: float = Field(default_factory=lambda: settings.RECON_LEARNING_RATE, gt=0)
    seed: int = 0
    input_mode: InputMode = InputMode.Z_AND_Y
    arch_mode: ArchMode = ArchMode.FULL
    log_every: int = Field(default_factory=lambda: settings.RECON_LOG_EVERY, ge=1)
    feature_width: int = Field(default_factory=lambda: settings.NETWORK_FEATURE_WIDTH, ge=2, multiple_of=2)
    z_channels: int = Field(default_factory=lambda: settings.NETWORK_Z_CHANNELS, ge=1)
    precision: Precision = Precision.FLOAT32
    out: Path
    log: Optional[Path] = None
    gt: Optional[FilePath] = None


class GapTvArgs(OperatorArgs):
    meas: FilePath
    bands: int = Field(ge=1)
    iters: int = Field(default_factory=lambda: settings.GAPTV_ITERATIONS, ge=1)
    tv_weight: Optional[float] = Field(default=None, ge=0)
    tv_inner_iters: int = Field(default_factory=lambda: settings.GAPTV_TV_INNER_ITERATIONS, ge=1)
    accelerate: bool = False
    out: Path


class AblationArgs(OperatorArgs):
    meas: FilePath
    bands: int = Field(ge=1)
    iters: int = Field(default_factory=lambda: settings.RECON_ITERATIONS, ge=1)
    lr: float = Field(default_factory=lambda: settings.RECON_LEARNING_RATE, gt=0)
    seed: int = 0
    log_every: int = Field(default_factory=lambda: settings.RECON_LOG_EVERY, ge=1)
    feature_width: int = Field(default_factory=lambda: settings.NETWORK_FEATURE_WIDTH, ge=2, multiple_of=2)
    z_channels: int = Field(default_factory=lambda: settings.NETWORK_Z_CHANNELS, ge=1)
    workers: Optional[int] = Field(default=None, ge=1)
    report: Path
    gt: Optional[FilePath] = None


class MetricsArgs(CommandArgs):
    ref: FilePath
    est: FilePath
    report: Optional[Path] = None
    pixel: List[Pixel] = []
    correlation_report: Optional[Path] = None

    @field_validator("pixel", mode="before")
    @classmethod
    def _parse_pixels(cls, value):
        if value is None:
            return []
        pixels = []
        for item in value:
            if isinstance(item, str):
                parts = item.split(",")
                if len(parts) != 2:
                    raise ValueError(f"Pixel must be given as H,W, got '{item}'")
                item = (int(parts[0]), int(parts[1]))
            pixels.append(item)
        return pixels

    @model_validator(mode="after")
    def _check_correlation_output(self):
        if self.correlation_report is not None and not self.pixel:
            raise ValueError("--correlation-report needs at least one --pixel")
        return self


class ExportPngArgs(CommandArgs):
    cube: FilePath
    out: Path
    band: Optional[int] = Field(default=None, ge=0)
    rgb: bool = False
    wl_start: Optional[float] = None
    wl_step: Optional[float] = Field(default=None, gt=0)

    @model_validator(mode="after")
    def _check_mode(self):
        if (self.band is None) == (not self.rgb):
            raise ValueError("Choose exactly one of --band N or --rgb")
        if (self.wl_start is None) != (self.wl_step is None):
            raise ValueError("--wl-start and --wl-step must be given together")
        return self

    def wavelengths(self, bands: int) -> Optional[tuple[float, ...]]:
        if self.wl_start is None:
            return None
        return tuple(self.wl_start + i * self.wl_step for i in range(bands))


__all__ = [
    "AblationArgs",
    "ExportPngArgs",
    "GapTvArgs",
    "MakeCubeArgs",
    "MakeMaskArgs",
    "MetricsArgs",
    "ReconstructArgs",
    "SimulateArgs",
]
