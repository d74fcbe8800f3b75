from app.core.config import settings
from app.core.logger import logger, run_id_var

__all__ = [
    "settings",
    "logger",
    "run_id_var",
]
