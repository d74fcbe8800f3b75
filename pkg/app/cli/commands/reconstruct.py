import argparse

from app.cli.parser import add_network_flags, add_operator_flags, choices
from app.cli.utils.decorators import handle_cli_errors
from app.cli.utils.loading import load_operator
from app.domains.recon import reconstruct
from app.domains.storage import cube_repository, write_curve
from app.literals.network import ArchMode, InputMode
from app.literals.tensor import Precision
from app.schemas.cli import ReconstructArgs
from app.schemas.recon import RunConfig

NAME = "reconstruct"


def register(subparsers) -> None:
    parser = subparsers.add_parser(NAME, help="Reconstruct a cube from one snapshot with the generative network")
    parser.add_argument("--meas", required=True)
    add_operator_flags(parser)
    parser.add_argument("--bands", type=int, required=True)
    add_network_flags(parser)
    parser.add_argument("--input-mode", choices=choices(InputMode), default=InputMode.Z_AND_Y.value)
    parser.add_argument("--arch-mode", choices=choices(ArchMode), default=ArchMode.FULL.value)
    parser.add_argument("--precision", choices=choices(Precision), default=Precision.FLOAT32.value)
    parser.add_argument("--out", required=True)
    parser.add_argument("--log", default=None, help="CSV file for the loss curve")
    parser.add_argument("--gt", default=None, help="Ground-truth cube; adds PSNR to the curve")
    parser.set_defaults(handler=run)


@handle_cli_errors(NAME)
def run(namespace: argparse.Namespace) -> int:
    args = ReconstructArgs.model_validate(vars(namespace))
    operator = load_operator(args, args.bands)
    snapshot = cube_repository.read_snapshot(args.meas, args.system)
    ground_truth = cube_repository.read_cube(args.gt) if args.gt is not None else None

    run_config = RunConfig(
        iterations=args.iters,
        lr=args.lr,
        seed=args.seed,
        log_every=args.log_every,
        system=args.system,
        input_mode=args.input_mode,
        arch_mode=args.arch_mode,
        feature_width=args.feature_width,
        z_channels=args.z_channels,
    )
    result = reconstruct(snapshot, operator, run_config, ground_truth, args.precision)

    cube_repository.write_cube(args.out, result.cube)
    if args.log is not None:
        write_curve(args.log, result.loss_curve)
    return 0
