import argparse

from app.cli.parser import choices
from app.cli.utils.decorators import handle_cli_errors
from app.core.config import settings
from app.domains.imaging import generate_mask
from app.domains.storage import cube_repository
from app.literals.imaging import MaskKind
from app.schemas.cli import MakeMaskArgs

NAME = "make-mask"


def register(subparsers) -> None:
    parser = subparsers.add_parser(NAME, help="Draw a random coded aperture")
    parser.add_argument("--height", type=int, required=True)
    parser.add_argument("--width", type=int, required=True)
    parser.add_argument("--kind", choices=choices(MaskKind), default=MaskKind.BINARY.value)
    parser.add_argument("--density", type=float, default=settings.MASK_DENSITY)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", required=True)
    parser.set_defaults(handler=run)


@handle_cli_errors(NAME)
def run(namespace: argparse.Namespace) -> int:
    args = MakeMaskArgs.model_validate(vars(namespace))
    mask = generate_mask(args.seed, args.height, args.width, args.kind, args.density)
    cube_repository.write_mask(args.out, mask)
    return 0
