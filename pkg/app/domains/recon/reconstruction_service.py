import time
from typing import Optional
from uuid import uuid4

import numpy as np

from app.core.exceptions import (
    InvalidParameterError,
    NonFiniteValueError,
    ReconstructionDivergedError,
    SystemMismatchError,
)
from app.core.logger import logger, run_id_var
from app.domains.imaging.forward_model import CassiOperator
from app.domains.metrics.metrics_service import psnr
from app.domains.network import build_network, draw_random_code, make_conditional_input, network_output
from app.domains.recon.loss import measurement_loss
from app.domains.tensor import AdamState, Tape, adam_step, backward
from app.literals.network import InputMode
from app.literals.tensor import Precision
from app.schemas.imaging import HsiCube, Snapshot
from app.schemas.recon import CurvePoint, ReconResult, RunConfig


def adjoint_initialization(snapshot: Snapshot, operator: CassiOperator) -> HsiCube:
    """Back-projection Phi^T Y with every band scaled to a peak of 1."""
    back = operator.adjoint(snapshot).values.astype(np.float64)
    peaks = back.reshape(back.shape[0], -1).max(axis=1)
    scale = np.where(peaks > 0, peaks, 1.0)
    return HsiCube(values=np.clip(back / scale[:, None, None], 0.0, 1.0))


def _check_inputs(snapshot: Snapshot, operator: CassiOperator, run: RunConfig, ground_truth: Optional[HsiCube]):
    if run.system is not operator.system:
        raise SystemMismatchError(f"Run configured for {run.system.value}, operator models {operator.system.value}")
    operator.check_snapshot(snapshot)
    if run.noise_free and snapshot.provenance.noise_sigma > 0:
        raise InvalidParameterError(
            f"Measurement was simulated with noise sigma {snapshot.provenance.noise_sigma}; "
            "set noise_free=False to fit a noisy measurement"
        )
    if not np.any(snapshot.values):
        raise InvalidParameterError("Measurement is zero everywhere; nothing to reconstruct")
    if ground_truth is not None and ground_truth.values.shape != operator.cube_shape:
        raise InvalidParameterError(
            f"Ground truth shape {ground_truth.values.shape} does not match operator {operator.cube_shape}"
        )


def reconstruct(
    snapshot: Snapshot,
    operator: CassiOperator,
    run: Optional[RunConfig] = None,
    ground_truth: Optional[HsiCube] = None,
    precision: Precision = Precision.FLOAT32,
) -> ReconResult:
    """
    Fit the conditional generator to a single snapshot.

    Z and the network weights are drawn from ``run.seed``; Z stays fixed while
    Adam updates the weights for ``run.iterations`` steps against the l1
    measurement loss. The returned cube is the generator output under the
    final weights.
    """
    run = run or RunConfig(system=operator.system)
    _check_inputs(snapshot, operator, run, ground_truth)

    config = run.network_config(operator.bands)
    params = build_network(config).astype(precision)
    code = None
    if config.input_mode is not InputMode.Y_ONLY:
        code = draw_random_code(config, operator.height, operator.width)
    inputs = make_conditional_input(
        code, snapshot, config.input_mode, config.bands, operator.dispersion, params.precision
    )
    state = AdamState.initial(params, run.adam_config())
    logged = set(run.logged_iterations())

    token = run_id_var.set(uuid4().hex)
    started = time.perf_counter()
    try:
        logger.info(
            "Starting reconstruction",
            extra={
                "system": operator.system.value,
                "cube_shape": list(operator.cube_shape),
                "iterations": run.iterations,
                "lr": run.lr,
                "seed": run.seed,
                "noise_free": run.noise_free,
                "input_mode": config.input_mode.value,
                "arch_mode": config.arch_mode.value,
                "parameters": params.count(),
                "precision": params.precision.value,
            },
        )

        history: list[float] = []
        curve: list[CurvePoint] = []
        estimate = None
        for step in range(run.iterations + 1):
            tape = Tape()
            try:
                estimate = network_output(inputs, params.watch(tape), config)
                loss = measurement_loss(estimate, snapshot, operator)
            except NonFiniteValueError as exc:
                logger.error("Reconstruction diverged", extra={"iteration": step, "reason": str(exc)})
                raise ReconstructionDivergedError(step, str(exc)) from exc

            loss_value = loss.item()
            history.append(loss_value)
            grads = backward(tape, loss) if step < run.iterations else None

            if step in logged:
                point_psnr = None
                if ground_truth is not None:
                    point_psnr = psnr(ground_truth, HsiCube(values=estimate.data)).mean
                curve.append(CurvePoint(iteration=step, loss=loss_value, psnr=point_psnr))
                logger.info(
                    "Reconstruction progress",
                    extra={
                        "iteration": step,
                        "loss": loss_value,
                        "psnr": point_psnr,
                        "grad_norm": grads.global_norm() if grads is not None else None,
                    },
                )

            if grads is None:
                break
            params, state = adam_step(params, grads, state)

        elapsed = time.perf_counter() - started
        digest = params.digest()
        logger.info(
            "Finished reconstruction",
            extra={"final_loss": history[-1], "wall_clock_seconds": elapsed, "parameter_digest": digest},
        )
        return ReconResult(
            cube=HsiCube(values=estimate.data),
            loss_curve=curve,
            loss_history=history,
            wall_clock_seconds=elapsed,
            parameter_digest=digest,
        )
    finally:
        run_id_var.reset(token)
