from app.literals.imaging import *  # noqa
from app.literals.network import *  # noqa
from app.literals.tensor import *  # noqa

from . import imaging, network, tensor

__all__ = imaging.__all__ + network.__all__ + tensor.__all__
