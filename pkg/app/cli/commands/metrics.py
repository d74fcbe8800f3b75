import argparse
import json

from app.cli.utils.decorators import handle_cli_errors
from app.domains.metrics import evaluate
from app.domains.storage import cube_repository, write_correlation_report, write_metrics_report
from app.schemas.cli import MetricsArgs

NAME = "metrics"


def register(subparsers) -> None:
    parser = subparsers.add_parser(NAME, help="Compare an estimate against a reference cube")
    parser.add_argument("--ref", required=True)
    parser.add_argument("--est", required=True)
    parser.add_argument("--report", default=None, help="Per-band CSV report")
    parser.add_argument("--pixel", action="append", default=[], help="H,W pixel for spectral correlation")
    parser.add_argument("--correlation-report", default=None)
    parser.set_defaults(handler=run)


@handle_cli_errors(NAME)
def run(namespace: argparse.Namespace) -> int:
    args = MetricsArgs.model_validate(vars(namespace))
    report = evaluate(cube_repository.read_cube(args.ref), cube_repository.read_cube(args.est), args.pixel)

    if args.report is not None:
        write_metrics_report(args.report, report)
    if args.correlation_report is not None:
        write_correlation_report(args.correlation_report, report)
    print(json.dumps({"mean_psnr": report.mean_psnr, "mean_ssim": report.mean_ssim}))
    return 0
