from app.schemas.cli import *  # noqa
from app.schemas.imaging import *  # noqa
from app.schemas.metrics import *  # noqa
from app.schemas.network import *  # noqa
from app.schemas.recon import *  # noqa
from app.schemas.tensor import *  # noqa

from . import cli, imaging, metrics, network, recon, tensor

__all__ = cli.__all__ + imaging.__all__ + metrics.__all__ + network.__all__ + recon.__all__ + tensor.__all__
