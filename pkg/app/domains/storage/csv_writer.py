import csv
from pathlib import Path
from typing import Iterable, Sequence

from app.core.logger import logger
from app.schemas.metrics import MetricsReport
from app.schemas.recon import AblationOutcome, CurvePoint

CURVE_HEADER = ("iter", "loss", "psnr")
REPORT_HEADER = ("band", "psnr", "ssim")
CORRELATION_HEADER = ("h", "w", "correlation")
ABLATION_HEADER = ("input_mode", "arch_mode", "final_loss", "final_psnr", "parameters", "seconds")


def _optional(value) -> str:
    return "" if value is None else repr(float(value))


def _write_rows(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> int:
    path = Path(path)
    count = 0
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
            count += 1
    logger.info("Wrote CSV", extra={"path": str(path), "rows": count})
    return count


def write_curve(path: Path, curve: Sequence[CurvePoint]) -> int:
    """Loss curve; the psnr column is empty when no ground truth was given."""
    return _write_rows(path, CURVE_HEADER, ((p.iteration, repr(p.loss), _optional(p.psnr)) for p in curve))


def write_metrics_report(path: Path, report: MetricsReport) -> int:
    rows = [(b.band, repr(b.psnr), repr(b.ssim)) for b in report.bands]
    rows.append(("mean", repr(report.mean_psnr), repr(report.mean_ssim)))
    return _write_rows(path, REPORT_HEADER, rows)


def write_correlation_report(path: Path, report: MetricsReport) -> int:
    return _write_rows(
        path, CORRELATION_HEADER, ((c.h, c.w, repr(c.correlation)) for c in report.spectral_correlations)
    )


def write_ablation_report(path: Path, outcomes: Sequence[AblationOutcome]) -> int:
    rows = (
        (
            o.input_mode.value,
            o.arch_mode.value,
            repr(o.final_loss),
            _optional(o.final_psnr),
            o.parameter_count,
            f"{o.wall_clock_seconds:.3f}",
        )
        for o in outcomes
    )
    return _write_rows(path, ABLATION_HEADER, rows)
