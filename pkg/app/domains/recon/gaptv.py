import logging
from typing import Optional
from uuid import uuid4

import numpy as np

from app.core.config import settings
from app.core.exceptions import InvalidParameterError
from app.core.logger import logger, run_id_var
from app.domains.imaging.forward_model import CassiOperator
from app.schemas.imaging import HsiCube, Snapshot
from app.schemas.recon import GapTvConfig


def _difference(values: np.ndarray, axis: int) -> np.ndarray:
    """Forward difference along ``axis`` with a zero last slice."""
    diff = np.zeros_like(values)
    head = [slice(None)] * values.ndim
    tail = [slice(None)] * values.ndim
    head[axis] = slice(None, -1)
    tail[axis] = slice(1, None)
    diff[tuple(head)] = values[tuple(tail)] - values[tuple(head)]
    return diff


def _difference_transpose(dual: np.ndarray, axis: int) -> np.ndarray:
    out = -dual
    head = [slice(None)] * dual.ndim
    tail = [slice(None)] * dual.ndim
    head[axis] = slice(None, -1)
    tail[axis] = slice(1, None)
    out[tuple(tail)] += dual[tuple(head)]
    return out


def total_variation(values: np.ndarray) -> float:
    """Anisotropic TV summed over every band."""
    values = np.asarray(values, dtype=np.float64)
    return float(np.abs(_difference(values, -2)).sum() + np.abs(_difference(values, -1)).sum())


def _tv_denoise_array(values: np.ndarray, weight: float, inner_iterations: int) -> np.ndarray:
    if weight == 0.0:
        return values.copy()

    step = 1.0 / (8.0 * weight)
    dual_h = np.zeros_like(values)
    dual_w = np.zeros_like(values)
    estimate = values
    for _ in range(inner_iterations):
        dual_h = np.clip(dual_h + step * _difference(estimate, -2), -1.0, 1.0)
        dual_w = np.clip(dual_w + step * _difference(estimate, -1), -1.0, 1.0)
        estimate = values - weight * (_difference_transpose(dual_h, -2) + _difference_transpose(dual_w, -1))
    return estimate


def tv_denoise(cube: HsiCube, weight: float, inner_iterations: Optional[int] = None) -> HsiCube:
    """
    Per-band anisotropic TV proximal step by projected gradient on the dual.

    Approximates argmin_x 0.5 * ||x - cube||^2 + weight * (|D_h x|_1 + |D_w x|_1).
    """
    if weight < 0:
        raise InvalidParameterError(f"TV weight must be non-negative, got {weight}")
    inner_iterations = settings.GAPTV_TV_INNER_ITERATIONS if inner_iterations is None else inner_iterations
    if inner_iterations < 1:
        raise InvalidParameterError(f"TV inner iterations must be at least 1, got {inner_iterations}")

    denoised = _tv_denoise_array(cube.values.astype(np.float64), float(weight), inner_iterations)
    return HsiCube(values=denoised, wavelengths=cube.wavelengths)


def gaptv_reconstruct(snapshot: Snapshot, operator: CassiOperator, config: Optional[GapTvConfig] = None) -> HsiCube:
    """
    Generalized alternating projection with a TV denoising step after every projection.

    Phi Phi^T is diagonal for both systems, so the projection only needs the
    per-pixel gram diagonal R. Pixels with R below the epsilon guard are skipped.
    """
    config = config or GapTvConfig()
    operator.check_snapshot(snapshot)

    gram = operator.gram_diagonal().astype(np.float64)
    covered = gram > settings.GAPTV_R_EPSILON
    if not np.any(covered):
        raise InvalidParameterError("Mask covers no measurement pixel; gram diagonal is zero everywhere")
    inverse_gram = np.where(covered, 1.0 / np.where(covered, gram, 1.0), 0.0)

    measurement = snapshot.values.astype(np.float64)
    tv_weight = config.resolved_tv_weight(measurement)

    token = run_id_var.set(uuid4().hex)
    try:
        logger.info(
            "Starting GAP-TV reconstruction",
            extra={
                "system": operator.system.value,
                "iterations": config.iterations,
                "tv_weight": tv_weight,
                "tv_inner_iterations": config.tv_inner_iterations,
                "accelerate": config.accelerate,
            },
        )

        estimate = np.zeros(operator.cube_shape, dtype=np.float64)
        accumulated = np.zeros_like(measurement)
        for iteration in range(1, config.iterations + 1):
            projected = operator.forward_array(estimate)
            if config.accelerate:
                accumulated = accumulated + (measurement - projected)
                target = accumulated
            else:
                target = measurement
            estimate = estimate + operator.adjoint_array((target - projected) * inverse_gram)
            estimate = _tv_denoise_array(estimate, tv_weight, config.tv_inner_iterations)

            if logger.isEnabledFor(logging.DEBUG):
                logger.debug(
                    "GAP-TV iteration",
                    extra={
                        "iteration": iteration,
                        "residual": float(np.linalg.norm(measurement - operator.forward_array(estimate))),
                    },
                )

        result = HsiCube(values=np.clip(estimate, 0.0, 1.0))
        logger.info("Finished GAP-TV reconstruction", extra={"iterations": config.iterations})
        return result
    finally:
        run_id_var.reset(token)
