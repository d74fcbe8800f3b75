import argparse

from app.cli.utils.decorators import handle_cli_errors
from app.domains.imaging import synthetic_cube
from app.domains.storage import cube_repository
from app.schemas.cli import MakeCubeArgs

NAME = "make-cube"


def register(subparsers) -> None:
    parser = subparsers.add_parser(NAME, help="Write a synthetic piecewise-smooth reflectance cube")
    parser.add_argument("--height", type=int, required=True)
    parser.add_argument("--width", type=int, required=True)
    parser.add_argument("--bands", type=int, required=True)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--wl-start", type=float, default=400.0)
    parser.add_argument("--wl-end", type=float, default=700.0)
    parser.add_argument("--out", required=True)
    parser.set_defaults(handler=run)


@handle_cli_errors(NAME)
def run(namespace: argparse.Namespace) -> int:
    args = MakeCubeArgs.model_validate(vars(namespace))
    cube = synthetic_cube(args.height, args.width, args.bands, args.seed, (args.wl_start, args.wl_end))
    cube_repository.write_cube(args.out, cube)
    return 0
