from pathlib import Path

from pydantic import computed_field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    APP_NAME: str = "snapcassi"
    PROJECT_NAME: str = "Snapshot CASSI simulation and reconstruction toolkit"

    LOG_LEVEL: str = "INFO"
    LOG_JSON: bool = True

    RECON_ITERATIONS: int = 2500
    RECON_LEARNING_RATE: float = 0.01
    RECON_LOG_EVERY: int = 100

    ADAM_BETA1: float = 0.9
    ADAM_BETA2: float = 0.999
    ADAM_EPSILON: float = 1e-8

    NETWORK_FEATURE_WIDTH: int = 64
    NETWORK_Z_CHANNELS: int = 32
    NETWORK_Z_AMPLITUDE: float = 0.1
    NETWORK_HE_GAIN: float = 2.0
    LEAKY_RELU_SLOPE: float = 0.2

    DISPERSION_SHIFT: int = 1
    MASK_DENSITY: float = 0.5

    GAPTV_ITERATIONS: int = 50
    GAPTV_TV_WEIGHT_RATIO: float = 0.1
    GAPTV_TV_INNER_ITERATIONS: int = 5
    GAPTV_R_EPSILON: float = 1e-8

    PSNR_CAP_DB: float = 100.0
    SSIM_SIGMA: float = 1.5
    SSIM_K1: float = 0.01
    SSIM_K2: float = 0.03

    CUBE_MAGIC: str = "HSC1"
    WAVELENGTH_SIDECAR_SUFFIX: str = ".wavelengths.csv"

    model_config = SettingsConfigDict(
        env_file=f"{Path(__file__).parent.parent.parent}/.env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    @computed_field
    @property
    def CUBE_MAGIC_BYTES(self) -> bytes:
        return self.CUBE_MAGIC.encode("ascii")


settings = Settings()
