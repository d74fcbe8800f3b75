from app.domains.imaging import CassiOperator
from app.domains.storage import cube_repository
from app.schemas.cli import OperatorArgs
from app.schemas.imaging import DispersionModel


def load_operator(args: OperatorArgs, bands: int) -> CassiOperator:
    mask = cube_repository.read_mask(args.mask)
    return CassiOperator(args.system, mask, bands, DispersionModel(shift_per_band=args.shift))
