import argparse

from app.cli.parser import add_network_flags, add_operator_flags
from app.cli.utils.decorators import handle_cli_errors
from app.cli.utils.loading import load_operator
from app.domains.recon import run_ablation_grid
from app.domains.storage import cube_repository, write_ablation_report
from app.schemas.cli import AblationArgs
from app.schemas.recon import RunConfig

NAME = "ablation"


def register(subparsers) -> None:
    parser = subparsers.add_parser(NAME, help="Run every input/architecture combination on one snapshot")
    parser.add_argument("--meas", required=True)
    add_operator_flags(parser)
    parser.add_argument("--bands", type=int, required=True)
    add_network_flags(parser)
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--report", required=True)
    parser.add_argument("--gt", default=None)
    parser.set_defaults(handler=run)


@handle_cli_errors(NAME)
def run(namespace: argparse.Namespace) -> int:
    args = AblationArgs.model_validate(vars(namespace))
    operator = load_operator(args, args.bands)
    snapshot = cube_repository.read_snapshot(args.meas, args.system)
    ground_truth = cube_repository.read_cube(args.gt) if args.gt is not None else None

    run_config = RunConfig(
        iterations=args.iters,
        lr=args.lr,
        seed=args.seed,
        log_every=args.log_every,
        system=args.system,
        feature_width=args.feature_width,
        z_channels=args.z_channels,
    )
    outcomes = run_ablation_grid(snapshot, operator, run_config, ground_truth, args.workers)
    write_ablation_report(args.report, outcomes)
    return 0
