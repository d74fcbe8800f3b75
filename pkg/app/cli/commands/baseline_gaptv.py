import argparse

from app.cli.parser import add_operator_flags
from app.cli.utils.decorators import handle_cli_errors
from app.cli.utils.loading import load_operator
from app.core.config import settings
from app.domains.recon import gaptv_reconstruct
from app.domains.storage import cube_repository
from app.schemas.cli import GapTvArgs
from app.schemas.recon import GapTvConfig

NAME = "baseline-gaptv"


def register(subparsers) -> None:
    parser = subparsers.add_parser(NAME, help="Reconstruct with GAP-TV")
    parser.add_argument("--meas", required=True)
    add_operator_flags(parser)
    parser.add_argument("--bands", type=int, required=True)
    parser.add_argument("--iters", type=int, default=settings.GAPTV_ITERATIONS)
    parser.add_argument("--tv-weight", type=float, default=None, help="Defaults to a fraction of the measurement peak")
    parser.add_argument("--tv-inner-iters", type=int, default=settings.GAPTV_TV_INNER_ITERATIONS)
    parser.add_argument("--accelerate", action="store_true")
    parser.add_argument("--out", required=True)
    parser.set_defaults(handler=run)


@handle_cli_errors(NAME)
def run(namespace: argparse.Namespace) -> int:
    args = GapTvArgs.model_validate(vars(namespace))
    operator = load_operator(args, args.bands)
    snapshot = cube_repository.read_snapshot(args.meas, args.system)
    config = GapTvConfig(
        iterations=args.iters,
        tv_weight=args.tv_weight,
        tv_inner_iterations=args.tv_inner_iters,
        accelerate=args.accelerate,
    )
    cube_repository.write_cube(args.out, gaptv_reconstruct(snapshot, operator, config))
    return 0
