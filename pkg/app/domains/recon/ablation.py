from concurrent.futures import ThreadPoolExecutor
from itertools import product
from typing import Optional

from app.core.logger import logger
from app.domains.imaging.forward_model import CassiOperator
from app.domains.network import parameter_count
from app.domains.recon.reconstruction_service import reconstruct
from app.literals.network import ArchMode, InputMode
from app.schemas.imaging import HsiCube, Snapshot
from app.schemas.recon import AblationOutcome, RunConfig


def ablation_grid(run: RunConfig) -> list[RunConfig]:
    """Every (input mode, architecture mode) combination, input mode varying slowest."""
    return [
        run.model_copy(update={"input_mode": input_mode, "arch_mode": arch_mode})
        for input_mode, arch_mode in product(InputMode, ArchMode)
    ]


def _run_one(
    snapshot: Snapshot, operator: CassiOperator, run: RunConfig, ground_truth: Optional[HsiCube]
) -> AblationOutcome:
    result = reconstruct(snapshot, operator, run, ground_truth)
    return AblationOutcome(
        input_mode=run.input_mode,
        arch_mode=run.arch_mode,
        final_loss=result.final_loss,
        final_psnr=result.final_psnr,
        parameter_count=parameter_count(run.network_config(operator.bands)),
        wall_clock_seconds=result.wall_clock_seconds,
    )


def run_ablation_grid(
    snapshot: Snapshot,
    operator: CassiOperator,
    run: RunConfig,
    ground_truth: Optional[HsiCube] = None,
    max_workers: Optional[int] = None,
) -> list[AblationOutcome]:
    """
    Reconstruct once per ablation setting.

    Runs share only read-only inputs, so they may execute on a thread pool;
    outcomes come back in grid order whatever the completion order.
    """
    runs = ablation_grid(run)
    logger.info("Starting ablation grid", extra={"runs": len(runs), "max_workers": max_workers})

    if max_workers == 1:
        outcomes = [_run_one(snapshot, operator, item, ground_truth) for item in runs]
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            futures = [pool.submit(_run_one, snapshot, operator, item, ground_truth) for item in runs]
            outcomes = [future.result() for future in futures]

    for outcome in outcomes:
        logger.info(
            "Ablation outcome",
            extra={
                "input_mode": outcome.input_mode.value,
                "arch_mode": outcome.arch_mode.value,
                "final_loss": outcome.final_loss,
                "final_psnr": outcome.final_psnr,
            },
        )
    return outcomes
