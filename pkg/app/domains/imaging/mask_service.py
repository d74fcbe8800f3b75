import numpy as np

from app.core.config import settings
from app.core.exceptions import InvalidParameterError, ShapeMismatchError
from app.core.logger import logger
from app.literals.imaging import MaskKind
from app.schemas.imaging import CodedMask, DispersionModel, ShiftedMaskStack


def generate_mask(
    seed: int,
    height: int,
    width: int,
    kind: MaskKind = MaskKind.BINARY,
    density: float | None = None,
) -> CodedMask:
    """
    Random coded aperture.

    Binary masks are i.i.d. Bernoulli(density); gray masks are i.i.d. uniform on [0, 1].
    """
    density = settings.MASK_DENSITY if density is None else density
    if height <= 0 or width <= 0:
        raise InvalidParameterError(f"Mask dimensions must be positive, got {height}x{width}")
    if not 0.0 < density < 1.0:
        raise InvalidParameterError(f"Mask density must lie in (0, 1), got {density}")

    rng = np.random.default_rng(seed)
    if kind is MaskKind.BINARY:
        values = (rng.random((height, width)) < density).astype(np.float32)
    else:
        values = rng.random((height, width), dtype=np.float32)

    logger.info(
        "Generated coded mask",
        extra={"seed": seed, "height": height, "width": width, "kind": kind.value, "density": density},
    )
    return CodedMask(values=values, kind=kind)


def translate_width(plane: np.ndarray, offset: int) -> np.ndarray:
    """Shift a 2D plane right by ``offset`` columns with zero fill."""
    shifted = np.zeros_like(plane)
    if offset < plane.shape[1]:
        shifted[:, offset:] = plane[:, : plane.shape[1] - offset]
    return shifted


def shift_mask_stack(mask: CodedMask, dispersion: DispersionModel, bands: int) -> ShiftedMaskStack:
    """Per-band masks S_i: the aperture translated by the band's dispersion offset."""
    if bands < 1:
        raise InvalidParameterError(f"Band count must be at least 1, got {bands}")
    total = dispersion.total_shift(bands)
    if total > mask.width:
        raise ShapeMismatchError(f"Total dispersion of {total}px exceeds the mask width of {mask.width}px")

    planes = np.stack([translate_width(mask.values, offset) for offset in dispersion.offsets(bands)])
    return ShiftedMaskStack(planes=planes)
