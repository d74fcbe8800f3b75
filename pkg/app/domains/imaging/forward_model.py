from __future__ import annotations

import numpy as np

from app.core.exceptions import InvalidParameterError, ShapeMismatchError, SystemMismatchError
from app.domains.imaging.mask_service import shift_mask_stack
from app.literals.imaging import SystemKind
from app.schemas.imaging import CodedMask, DispersionModel, HsiCube, ShiftedMaskStack, Snapshot


def _ss_forward(values: np.ndarray, planes: np.ndarray) -> np.ndarray:
    return np.sum(values * planes, axis=0)


def _ss_adjoint(measurement: np.ndarray, planes: np.ndarray) -> np.ndarray:
    return measurement[None, :, :] * planes


def _sd_forward(values: np.ndarray, mask: np.ndarray, offsets: list[int], out_width: int) -> np.ndarray:
    bands, height, width = values.shape
    coded = values * mask[None, :, :]
    measurement = np.zeros((height, out_width), dtype=coded.dtype)
    for band, offset in enumerate(offsets):
        measurement[:, offset : offset + width] += coded[band]
    return measurement


def _sd_windows(measurement: np.ndarray, offsets: list[int], width: int) -> np.ndarray:
    return np.stack([measurement[:, offset : offset + width] for offset in offsets])


def forward_ss(cube: HsiCube, stack: ShiftedMaskStack) -> Snapshot:
    """Spatial-spectral encoding: Y = sum_i X_i * S_i, same size as one band."""
    if stack.planes.shape != cube.values.shape:
        raise ShapeMismatchError(f"Mask stack {stack.planes.shape} does not match cube {cube.values.shape}")
    return Snapshot(values=_ss_forward(cube.values, stack.planes), system=SystemKind.SS)


def forward_sd(cube: HsiCube, mask: CodedMask, dispersion: DispersionModel) -> Snapshot:
    """Single-disperser encoding: mask the scene, shear band i by its offset, then sum."""
    if mask.values.shape != (cube.height, cube.width):
        raise ShapeMismatchError(f"Mask {mask.values.shape} does not match cube spatial size {cube.values.shape[1:]}")
    offsets = dispersion.offsets(cube.bands)
    out_width = cube.width + dispersion.total_shift(cube.bands)
    return Snapshot(values=_sd_forward(cube.values, mask.values, offsets, out_width), system=SystemKind.SD)


def shift_back(snapshot: Snapshot, bands: int, dispersion: DispersionModel) -> HsiCube:
    """Cut the SD measurement into per-band windows starting at each band's offset."""
    if snapshot.system is not SystemKind.SD:
        raise SystemMismatchError(f"shift_back needs an SD snapshot, got {snapshot.system.value}")
    if bands < 1:
        raise InvalidParameterError(f"Band count must be at least 1, got {bands}")
    width = snapshot.width - dispersion.total_shift(bands)
    if width < 1:
        raise ShapeMismatchError(f"Snapshot width {snapshot.width} is too small for {bands} dispersed bands")
    return HsiCube(values=_sd_windows(snapshot.values, dispersion.offsets(bands), width))


def measurement_rate(system: SystemKind, height: int, width: int, bands: int, shift_per_band: int = 1) -> float:
    """Ratio of measurement entries to cube entries."""
    if system is SystemKind.SS:
        return 1.0 / bands
    measured_width = width + shift_per_band * (bands - 1)
    return (height * measured_width) / (height * width * bands)


class CassiOperator:
    """
    Linear measurement operator Phi for one system, mask and band count.

    Works on raw arrays shaped (bands, height, width) for cubes and
    (height, measured_width) for snapshots, in whatever float dtype it is given.
    """

    def __init__(
        self,
        system: SystemKind,
        mask: CodedMask,
        bands: int,
        dispersion: DispersionModel | None = None,
    ):
        if bands < 1:
            raise InvalidParameterError(f"Band count must be at least 1, got {bands}")
        self.system = system
        self.mask = mask
        self.bands = bands
        self.dispersion = dispersion or DispersionModel()
        self.offsets = self.dispersion.offsets(bands)
        self.stack = shift_mask_stack(mask, self.dispersion, bands) if system is SystemKind.SS else None

    @property
    def height(self) -> int:
        return self.mask.height

    @property
    def width(self) -> int:
        return self.mask.width

    @property
    def cube_shape(self) -> tuple[int, int, int]:
        return self.bands, self.height, self.width

    @property
    def measurement_shape(self) -> tuple[int, int]:
        if self.system is SystemKind.SS:
            return self.height, self.width
        return self.height, self.width + self.dispersion.total_shift(self.bands)

    def forward_array(self, values: np.ndarray) -> np.ndarray:
        if values.shape != self.cube_shape:
            raise ShapeMismatchError(f"Cube shape {values.shape} does not match operator {self.cube_shape}")
        if self.system is SystemKind.SS:
            return _ss_forward(values, self.stack.planes)
        return _sd_forward(values, self.mask.values, self.offsets, self.measurement_shape[1])

    def adjoint_array(self, measurement: np.ndarray) -> np.ndarray:
        if measurement.shape != self.measurement_shape:
            raise ShapeMismatchError(
                f"Measurement shape {measurement.shape} does not match operator {self.measurement_shape}"
            )
        if self.system is SystemKind.SS:
            return _ss_adjoint(measurement, self.stack.planes)
        return _sd_windows(measurement, self.offsets, self.width) * self.mask.values[None, :, :]

    def gram_diagonal(self) -> np.ndarray:
        """Diagonal of Phi Phi^T (per measurement pixel sum of squared mask weights)."""
        ones = np.ones(self.measurement_shape, dtype=np.float32)
        return self.forward_array(self.adjoint_array(ones))

    def check_snapshot(self, snapshot: Snapshot) -> None:
        if snapshot.system is not self.system:
            raise SystemMismatchError(
                f"Snapshot was taken with {snapshot.system.value}, operator models {self.system.value}"
            )
        if snapshot.values.shape != self.measurement_shape:
            raise ShapeMismatchError(
                f"Snapshot shape {snapshot.values.shape} does not match expected {self.measurement_shape}"
            )

    def forward(self, cube: HsiCube) -> Snapshot:
        return Snapshot(values=self.forward_array(cube.values), system=self.system)

    def adjoint(self, snapshot: Snapshot) -> HsiCube:
        self.check_snapshot(snapshot)
        return HsiCube(values=self.adjoint_array(snapshot.values))


def adjoint(snapshot: Snapshot, operator: CassiOperator) -> HsiCube:
    """Exact transpose of the operator's forward map applied to a snapshot."""
    return operator.adjoint(snapshot)
