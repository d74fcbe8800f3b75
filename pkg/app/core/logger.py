import datetime
import json
import logging
from contextvars import ContextVar

import numpy as np

from app.core.config import settings

run_id_var: ContextVar[str] = ContextVar("run_id", default="")

# attributes every LogRecord carries; anything else came in through extra=
RESERVED_ATTRIBUTES = frozenset(logging.LogRecord("", 0, "", 0, "", None, None).__dict__) | {
    "message",
    "asctime",
    "run_id",
}


class RunIDFilter(logging.Filter):
    def filter(self, record):
        record.run_id = run_id_var.get("")
        return True


def _jsonable(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    return str(value)


class JSONFormatter(logging.Formatter):
    """One JSON object per line: fixed fields, then every extra= key as given."""

    def formatTime(self, record, datefmt=None):
        stamp = datetime.datetime.fromtimestamp(record.created)
        return stamp.strftime(datefmt) if datefmt else stamp.isoformat()

    def format(self, record):
        payload = {
            "timestamp": self.formatTime(record, self.datefmt),
            "level": record.levelname,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
            "run_id": getattr(record, "run_id", ""),
        }
        payload.update({key: value for key, value in record.__dict__.items() if key not in RESERVED_ATTRIBUTES})
        if record.exc_info:
            payload["exception"] = self.formatException(record.exc_info)
        return json.dumps(payload, default=_jsonable)


def setup_logger(name: str = __name__, level: int | str = logging.INFO, json_output: bool = True):
    logger = logging.getLogger(name)
    logger.setLevel(level)
    logger.handlers.clear()
    logger.propagate = False

    handler = logging.StreamHandler()
    if json_output:
        handler.setFormatter(JSONFormatter())
    else:
        handler.setFormatter(logging.Formatter("%(levelname)s [%(run_id)s] %(message)s"))
    handler.addFilter(RunIDFilter())

    logger.addHandler(handler)
    return logger


logger = setup_logger("app", settings.LOG_LEVEL, settings.LOG_JSON)
