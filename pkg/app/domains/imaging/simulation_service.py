from typing import Optional

import numpy as np

from app.core.exceptions import InvalidParameterError, ShapeMismatchError
from app.core.logger import logger
from app.domains.imaging.forward_model import CassiOperator
from app.schemas.imaging import HsiCube, Snapshot, SnapshotProvenance


def simulate(
    cube: HsiCube,
    operator: CassiOperator,
    noise_sigma: float = 0.0,
    seed: Optional[int] = None,
) -> Snapshot:
    """Noisy snapshot y = Phi x + e with i.i.d. Gaussian e of standard deviation ``noise_sigma``."""
    if noise_sigma < 0:
        raise InvalidParameterError(f"Noise sigma must be non-negative, got {noise_sigma}")
    if cube.values.shape != operator.cube_shape:
        raise ShapeMismatchError(f"Cube shape {cube.values.shape} does not match operator {operator.cube_shape}")

    measurement = operator.forward_array(cube.values)
    if noise_sigma > 0:
        rng = np.random.default_rng(seed)
        measurement = measurement + rng.normal(0.0, noise_sigma, size=measurement.shape).astype(measurement.dtype)

    logger.info(
        "Simulated snapshot",
        extra={
            "system": operator.system.value,
            "shape": list(measurement.shape),
            "noise_sigma": noise_sigma,
            "seed": seed,
        },
    )
    return Snapshot(
        values=measurement,
        system=operator.system,
        provenance=SnapshotProvenance(seed=seed, noise_sigma=noise_sigma),
    )
