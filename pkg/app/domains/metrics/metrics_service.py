from typing import Iterable, Optional

import numpy as np
from skimage.metrics import mean_squared_error, peak_signal_noise_ratio, structural_similarity

from app.core.config import settings
from app.core.exceptions import InvalidParameterError, ShapeMismatchError, UndefinedCorrelationError
from app.core.types import Pixel
from app.schemas.imaging import HsiCube
from app.schemas.metrics import BandMetrics, BandScores, MetricsReport, SpectralCorrelationEntry

SSIM_WINDOW = 11
DATA_RANGE = 1.0


def _check_same_shape(ref: HsiCube, est: HsiCube) -> None:
    if ref.values.shape != est.values.shape:
        raise ShapeMismatchError(f"Cubes differ in shape: {ref.values.shape} vs {est.values.shape}")


def band_psnr(ref_band: np.ndarray, est_band: np.ndarray) -> float:
    """PSNR with peak 1; identical bands report the cap instead of infinity."""
    ref_band = np.asarray(ref_band, dtype=np.float64)
    est_band = np.asarray(est_band, dtype=np.float64)
    if mean_squared_error(ref_band, est_band) == 0.0:
        return settings.PSNR_CAP_DB
    return float(min(peak_signal_noise_ratio(ref_band, est_band, data_range=DATA_RANGE), settings.PSNR_CAP_DB))


def psnr(ref: HsiCube, est: HsiCube) -> BandScores:
    _check_same_shape(ref, est)
    per_band = [band_psnr(ref.band(i), est.band(i)) for i in range(ref.bands)]
    return BandScores(per_band=per_band, mean=float(np.mean(per_band)))


def ssim(ref_band: np.ndarray, est_band: np.ndarray) -> float:
    """
    Gaussian-window SSIM (11x11, sigma 1.5, K1 0.01, K2 0.03, L 1).

    The score is the mean of the SSIM map over window positions that lie fully
    inside the band.
    """
    ref_band = np.asarray(ref_band, dtype=np.float64)
    est_band = np.asarray(est_band, dtype=np.float64)
    if ref_band.shape != est_band.shape or ref_band.ndim != 2:
        raise ShapeMismatchError(f"SSIM needs two bands of equal 2D shape, got {ref_band.shape} and {est_band.shape}")
    if min(ref_band.shape) < SSIM_WINDOW:
        raise ShapeMismatchError(f"Band {ref_band.shape} is smaller than the {SSIM_WINDOW}x{SSIM_WINDOW} SSIM window")

    score = structural_similarity(
        ref_band,
        est_band,
        gaussian_weights=True,
        sigma=settings.SSIM_SIGMA,
        use_sample_covariance=False,
        data_range=DATA_RANGE,
        K1=settings.SSIM_K1,
        K2=settings.SSIM_K2,
    )
    return float(np.clip(score, -1.0, 1.0))


def cube_ssim(ref: HsiCube, est: HsiCube) -> BandScores:
    _check_same_shape(ref, est)
    per_band = [ssim(ref.band(i), est.band(i)) for i in range(ref.bands)]
    return BandScores(per_band=per_band, mean=float(np.mean(per_band)))


def spectral_correlation(ref: HsiCube, est: HsiCube, pixel: Pixel) -> float:
    """Pearson correlation between the reference and estimated spectra at one pixel."""
    _check_same_shape(ref, est)
    h, w = pixel
    if not (0 <= h < ref.height and 0 <= w < ref.width):
        raise InvalidParameterError(f"Pixel {pixel} is outside the {ref.height}x{ref.width} cube")
    if ref.bands < 2:
        raise UndefinedCorrelationError("Spectral correlation needs at least two bands")

    a = ref.values[:, h, w].astype(np.float64)
    b = est.values[:, h, w].astype(np.float64)
    a = a - a.mean()
    b = b - b.mean()
    norm = np.sqrt(np.dot(a, a) * np.dot(b, b))
    if norm == 0.0:
        raise UndefinedCorrelationError(f"Spectrum at pixel {pixel} is constant; correlation is undefined")
    return float(np.clip(np.dot(a, b) / norm, -1.0, 1.0))


def evaluate(ref: HsiCube, est: HsiCube, pixels: Optional[Iterable[Pixel]] = None) -> MetricsReport:
    psnr_scores = psnr(ref, est)
    ssim_scores = cube_ssim(ref, est)
    bands = [
        BandMetrics(band=i, psnr=p, ssim=s) for i, (p, s) in enumerate(zip(psnr_scores.per_band, ssim_scores.per_band))
    ]
    correlations = [
        SpectralCorrelationEntry(h=h, w=w, correlation=spectral_correlation(ref, est, (h, w))) for h, w in pixels or ()
    ]
    return MetricsReport(
        bands=bands,
        mean_psnr=psnr_scores.mean,
        mean_ssim=ssim_scores.mean,
        spectral_correlations=correlations,
    )
