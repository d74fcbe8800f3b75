from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from PIL import Image

from app.core.exceptions import InvalidParameterError
from app.core.logger import logger
from app.schemas.imaging import HsiCube

VISIBLE_RANGE = (380.0, 780.0)


def wavelength_to_rgb(wavelength: float) -> tuple[float, float, float]:
    """
    Piecewise-linear tint of a wavelength in nm, each channel in [0, 1].

    380-440 violet to blue, 440-490 blue to cyan, 490-510 cyan to green,
    510-580 green to yellow, 580-645 yellow to red, 645-780 red. Black outside.
    """
    w = float(wavelength)
    if w < 380.0 or w > 780.0:
        return 0.0, 0.0, 0.0
    if w < 440.0:
        return -(w - 440.0) / 60.0, 0.0, 1.0
    if w < 490.0:
        return 0.0, (w - 440.0) / 50.0, 1.0
    if w < 510.0:
        return 0.0, 1.0, -(w - 510.0) / 20.0
    if w < 580.0:
        return (w - 510.0) / 70.0, 1.0, 0.0
    if w < 645.0:
        return 1.0, -(w - 645.0) / 65.0, 0.0
    return 1.0, 0.0, 0.0


def to_uint8(values: np.ndarray) -> np.ndarray:
    """Linear [0, 1] -> [0, 255] with clamping and rounding."""
    return np.rint(np.clip(values, 0.0, 1.0) * 255.0).astype(np.uint8)


class ImageExporter:
    """Renders cubes as 8-bit PNGs for inspection. Output is never read back into metrics."""

    @classmethod
    def reflectance(cls, cube: HsiCube) -> HsiCube:
        """The cube itself when every value is in [0, 1], otherwise a clamped copy."""
        if cube.is_reflectance():
            return cube
        logger.warning(
            "Clamping cube values to [0, 1] for export",
            extra={"min": float(cube.values.min()), "max": float(cube.values.max())},
        )
        return cube.clamped()

    @classmethod
    def band_image(cls, cube: HsiCube, band: int) -> Image.Image:
        if not 0 <= band < cube.bands:
            raise InvalidParameterError(f"Band {band} is out of range for a cube with {cube.bands} bands")
        return Image.fromarray(to_uint8(cls.reflectance(cube).band(band)))

    @classmethod
    def rgb_composite(cls, cube: HsiCube, wavelengths: Optional[Sequence[float]] = None) -> np.ndarray:
        """Sum of bands tinted by their wavelength, scaled so the brightest channel value is 1."""
        wavelengths = wavelengths if wavelengths is not None else cube.wavelengths
        if wavelengths is None:
            raise InvalidParameterError("RGB export needs wavelengths for every band")
        if len(wavelengths) != cube.bands:
            raise InvalidParameterError(f"Expected {cube.bands} wavelengths, got {len(wavelengths)}")

        tints = np.array([wavelength_to_rgb(w) for w in wavelengths], dtype=np.float64)
        composite = np.einsum("chw,ck->hwk", cls.reflectance(cube).values.astype(np.float64), tints)
        peak = composite.max()
        if peak > 0:
            composite = composite / peak
        return composite

    @classmethod
    def rgb_image(cls, cube: HsiCube, wavelengths: Optional[Sequence[float]] = None) -> Image.Image:
        return Image.fromarray(to_uint8(cls.rgb_composite(cube, wavelengths)))

    @classmethod
    def export_band_png(cls, cube: HsiCube, band: int, path: Path) -> None:
        cls.band_image(cube, band).save(Path(path), format="PNG", optimize=True)
        logger.info("Exported band image", extra={"path": str(path), "band": band})

    @classmethod
    def export_rgb_png(cls, cube: HsiCube, wavelengths: Optional[Sequence[float]], path: Path) -> None:
        cls.rgb_image(cube, wavelengths).save(Path(path), format="PNG", optimize=True)
        logger.info("Exported RGB composite", extra={"path": str(path), "bands": cube.bands})


image_exporter = ImageExporter()
