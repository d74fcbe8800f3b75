from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.core.config import settings
from app.core.types import frozen_copy
from app.literals.imaging import DispersionAxis, MaskKind, SystemKind


class ArrayModel(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


def _validated_array(value, ndim: int, what: str) -> np.ndarray:
    array = frozen_copy(value, np.float32)
    if array.ndim != ndim:
        raise ValueError(f"{what} must have {ndim} dimensions, got shape {array.shape}")
    if 0 in array.shape:
        raise ValueError(f"{what} must not have zero-sized dimensions, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ValueError(f"{what} holds non-finite values")
    return array


class HsiCube(ArrayModel):
    """Hyperspectral data-cube stored band-major as (bands, height, width)."""

    values: np.ndarray
    wavelengths: Optional[tuple[float, ...]] = None

    @field_validator("values", mode="before")
    @classmethod
    def _check_values(cls, value):
        return _validated_array(value, 3, "Cube")

    @model_validator(mode="after")
    def _check_wavelengths(self):
        if self.wavelengths is None:
            return self
        if len(self.wavelengths) != self.bands:
            raise ValueError(f"Expected {self.bands} wavelengths, got {len(self.wavelengths)}")
        if any(b <= a for a, b in zip(self.wavelengths, self.wavelengths[1:])):
            raise ValueError("Wavelengths must be strictly increasing")
        return self

    @property
    def bands(self) -> int:
        return self.values.shape[0]

    @property
    def height(self) -> int:
        return self.values.shape[1]

    @property
    def width(self) -> int:
        return self.values.shape[2]

    def band(self, index: int) -> np.ndarray:
        return self.values[index]

    def is_reflectance(self) -> bool:
        return bool(self.values.min() >= 0.0 and self.values.max() <= 1.0)

    def clamped(self) -> "HsiCube":
        return HsiCube(values=np.clip(self.values, 0.0, 1.0), wavelengths=self.wavelengths)


class CodedMask(ArrayModel):
    """Aperture transmission pattern T(h, w)."""

    values: np.ndarray
    kind: MaskKind = MaskKind.GRAY

    @field_validator("values", mode="before")
    @classmethod
    def _check_values(cls, value):
        array = _validated_array(value, 2, "Mask")
        if array.min() < 0.0 or array.max() > 1.0:
            raise ValueError("Mask transmission must lie in [0, 1]")
        return array

    @model_validator(mode="after")
    def _check_binary(self):
        if self.kind is MaskKind.BINARY and not np.all((self.values == 0.0) | (self.values == 1.0)):
            raise ValueError("Binary mask holds values other than 0 and 1")
        return self

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def width(self) -> int:
        return self.values.shape[1]


class DispersionModel(BaseModel):
    """Linear dispersion: band i (0-based) is sheared by shift_per_band * i pixels along the width."""

    shift_per_band: int = Field(default_factory=lambda: settings.DISPERSION_SHIFT, ge=0)
    axis: DispersionAxis = DispersionAxis.WIDTH

    model_config = ConfigDict(frozen=True)

    def offset(self, band_index: int) -> int:
        return self.shift_per_band * band_index

    def offsets(self, bands: int) -> list[int]:
        return [self.offset(i) for i in range(bands)]

    def total_shift(self, bands: int) -> int:
        return self.offset(bands - 1)


class ShiftedMaskStack(ArrayModel):
    planes: np.ndarray

    @field_validator("planes", mode="before")
    @classmethod
    def _check_planes(cls, value):
        return _validated_array(value, 3, "Shifted mask stack")

    @property
    def bands(self) -> int:
        return self.planes.shape[0]


class SnapshotProvenance(BaseModel):
    seed: Optional[int] = None
    noise_sigma: float = Field(default=0.0, ge=0)

    model_config = ConfigDict(frozen=True)


class Snapshot(ArrayModel):
    """Single 2D detector image Y."""

    values: np.ndarray
    system: SystemKind
    provenance: SnapshotProvenance = SnapshotProvenance()

    @field_validator("values", mode="before")
    @classmethod
    def _check_values(cls, value):
        return _validated_array(value, 2, "Snapshot")

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def width(self) -> int:
        return self.values.shape[1]


__all__ = [
    "HsiCube",
    "CodedMask",
    "DispersionModel",
    "ShiftedMaskStack",
    "SnapshotProvenance",
    "Snapshot",
]
