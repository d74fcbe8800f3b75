import argparse

from app.cli.parser import add_operator_flags
from app.cli.utils.decorators import handle_cli_errors
from app.cli.utils.loading import load_operator
from app.domains.imaging import simulate
from app.domains.storage import cube_repository
from app.schemas.cli import SimulateArgs

NAME = "simulate"


def register(subparsers) -> None:
    parser = subparsers.add_parser(NAME, help="Simulate a snapshot measurement of a cube")
    parser.add_argument("--cube", required=True)
    add_operator_flags(parser)
    parser.add_argument("--noise-sigma", type=float, default=0.0)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--out", required=True)
    parser.set_defaults(handler=run)


@handle_cli_errors(NAME)
def run(namespace: argparse.Namespace) -> int:
    args = SimulateArgs.model_validate(vars(namespace))
    cube = cube_repository.read_cube(args.cube)
    operator = load_operator(args, cube.bands)
    snapshot = simulate(cube, operator, args.noise_sigma, args.seed)
    cube_repository.write_snapshot(args.out, snapshot)
    return 0
