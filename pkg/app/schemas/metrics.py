from typing import List

from pydantic import BaseModel, Field


class BandScores(BaseModel):
    per_band: List[float]
    mean: float


class BandMetrics(BaseModel):
    band: int = Field(ge=0)
    psnr: float
    ssim: float = Field(ge=-1.0, le=1.0)


class SpectralCorrelationEntry(BaseModel):
    h: int = Field(ge=0)
    w: int = Field(ge=0)
    correlation: float = Field(ge=-1.0, le=1.0)


class MetricsReport(BaseModel):
    bands: List[BandMetrics]
    mean_psnr: float
    mean_ssim: float
    spectral_correlations: List[SpectralCorrelationEntry] = []

    @property
    def band_count(self) -> int:
        return len(self.bands)


__all__ = ["BandScores", "BandMetrics", "SpectralCorrelationEntry", "MetricsReport"]
