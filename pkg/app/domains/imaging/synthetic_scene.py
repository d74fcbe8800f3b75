import numpy as np

from app.core.exceptions import InvalidParameterError
from app.schemas.imaging import HsiCube

REGION_COUNT = 5


def _bump(positions: np.ndarray, center: float, spread: float) -> np.ndarray:
    return np.exp(-0.5 * ((positions - center) / spread) ** 2)


def synthetic_cube(
    height: int,
    width: int,
    bands: int,
    seed: int = 0,
    wavelength_range: tuple[float, float] = (400.0, 700.0),
) -> HsiCube:
    """
    Piecewise-smooth reflectance scene.

    A smoothly shaded background is overlaid with rectangles and discs, each
    carrying its own smooth spectrum (a Gaussian bump over the band axis) and a
    gentle spatial shading. Values stay in [0, 1].
    """
    if height < 1 or width < 1 or bands < 1:
        raise InvalidParameterError(f"Scene dimensions must be positive, got {height}x{width}x{bands}")
    low, high = wavelength_range
    if not high > low:
        raise InvalidParameterError(f"Wavelength range must be increasing, got {wavelength_range}")

    rng = np.random.default_rng(seed)
    wavelengths = np.linspace(low, high, bands) if bands > 1 else np.array([(low + high) / 2.0])
    spectral_axis = (wavelengths - low) / (high - low)
    rows = np.linspace(0.0, 1.0, height)[:, None]
    cols = np.linspace(0.0, 1.0, width)[None, :]

    background_spectrum = 0.35 + 0.25 * _bump(spectral_axis, rng.uniform(0.2, 0.8), 0.5)
    background_shading = 0.6 + 0.4 * (0.5 * rows + 0.5 * cols)
    cube = background_spectrum[:, None, None] * background_shading[None, :, :]

    for region in range(REGION_COUNT):
        center_r, center_c = rng.uniform(0.15, 0.85, size=2)
        extent_r, extent_c = rng.uniform(0.1, 0.3, size=2)
        if region % 2 == 0:
            support = (np.abs(rows - center_r) <= extent_r) & (np.abs(cols - center_c) <= extent_c)
        else:
            support = ((rows - center_r) / extent_r) ** 2 + ((cols - center_c) / extent_c) ** 2 <= 1.0

        spectrum = 0.05 + rng.uniform(0.4, 0.9) * _bump(spectral_axis, rng.uniform(0.0, 1.0), rng.uniform(0.15, 0.4))
        shading = 0.85 + 0.15 * np.cos(np.pi * (rows - center_r)) * np.cos(np.pi * (cols - center_c))
        cube = np.where(support[None, :, :], spectrum[:, None, None] * shading[None, :, :], cube)

    return HsiCube(values=np.clip(cube, 0.0, 1.0), wavelengths=tuple(float(w) for w in wavelengths))
