import numpy as np
import pytest

from app.domains.imaging import CassiOperator, generate_mask, synthetic_cube
from app.literals.imaging import MaskKind, SystemKind
from app.schemas.imaging import DispersionModel
from app.schemas.network import NetworkConfig
from app.schemas.recon import RunConfig


@pytest.fixture
def rng():
    """Seeded generator so every randomized test is reproducible."""
    return np.random.default_rng(20240917)


@pytest.fixture
def small_cube():
    """8x8 scene with 4 bands and a 400-700 nm wavelength grid."""
    return synthetic_cube(8, 8, 4, seed=3)


@pytest.fixture
def desk_cube():
    """32x32x4 scene used by the end-to-end pipeline tests."""
    return synthetic_cube(32, 32, 4, seed=11)


@pytest.fixture
def binary_mask():
    return generate_mask(seed=7, height=8, width=8, kind=MaskKind.BINARY)


@pytest.fixture
def gray_mask():
    return generate_mask(seed=8, height=8, width=8, kind=MaskKind.GRAY)


@pytest.fixture
def ss_operator(binary_mask):
    return CassiOperator(SystemKind.SS, binary_mask, bands=4)


@pytest.fixture
def sd_operator(binary_mask):
    return CassiOperator(SystemKind.SD, binary_mask, bands=4, dispersion=DispersionModel(shift_per_band=1))


@pytest.fixture
def tiny_network_config():
    """Narrow network that keeps forward and backward passes fast."""
    return NetworkConfig(bands=4, feature_width=8, z_channels=4, seed=5)


@pytest.fixture
def tiny_run_config():
    return RunConfig(iterations=6, log_every=4, feature_width=8, z_channels=4, seed=5)
