import argparse

from app.cli.utils.decorators import handle_cli_errors
from app.domains.storage import cube_repository, image_exporter
from app.schemas.cli import ExportPngArgs

NAME = "export-png"


def register(subparsers) -> None:
    parser = subparsers.add_parser(NAME, help="Render one band or an RGB composite as PNG")
    parser.add_argument("--cube", required=True)
    parser.add_argument("--out", required=True)
    parser.add_argument("--band", type=int, default=None)
    parser.add_argument("--rgb", action="store_true")
    parser.add_argument("--wl-start", type=float, default=None, help="First band wavelength when no sidecar exists")
    parser.add_argument("--wl-step", type=float, default=None)
    parser.set_defaults(handler=run)


@handle_cli_errors(NAME)
def run(namespace: argparse.Namespace) -> int:
    args = ExportPngArgs.model_validate(vars(namespace))
    cube = cube_repository.read_cube(args.cube)
    if args.rgb:
        image_exporter.export_rgb_png(cube, cube.wavelengths or args.wavelengths(cube.bands), args.out)
    else:
        image_exporter.export_band_png(cube, args.band, args.out)
    return 0
