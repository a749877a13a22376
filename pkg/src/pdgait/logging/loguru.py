"""Loguru sinks for the terminal and for the log file of a run"""
import contextlib
import functools
import logging as _logging
from pathlib import Path
from typing import Iterator, Union

import tqdm as _tqdm
from loguru import logger

# Library loggers reach our sinks through InterceptHandler, only their warnings are kept
LIBRARY_LEVELS = {
    "ignite": "WARNING",
    "matplotlib": "WARNING",
    "joblib": "WARNING",
}

TERMINAL_FORMAT = (
    "<green>{time:HH:mm:ss}</green> | "
    "<level>{level: <8}</level> | "
    "<level>{message}</level>"
)

# Time in UTC
FILE_FORMAT = (
    "{time:YYYY-MM-DD HH:mm:ss.SSS!UTC} | {level: <8} | "
    "{name}:{function}:{line} - {message}"
)


def _filter():
    return {"": True, **LIBRARY_LEVELS}


class InterceptHandler(_logging.Handler):
    def emit(self, record):
        try:
            level = logger.level(record.levelname).name
        except ValueError:
            level = record.levelno

        # Find caller from where originated the logged message
        frame, depth = _logging.currentframe(), 2
        while frame.f_code.co_filename == _logging.__file__:
            frame = frame.f_back
            depth += 1

        logger.opt(depth=depth, exception=record.exc_info).log(level, record.getMessage())


def setup_logging(level: Union[str, int] = "INFO"):
    """Terminal sink that writes through tqdm, so progress bars stay at the bottom"""
    logger.remove()
    logger.add(
        sink=functools.partial(_tqdm.tqdm.write, end=""),
        colorize=True,
        level=level,
        filter=_filter(),
        format=TERMINAL_FORMAT,
    )
    _logging.basicConfig(handlers=[InterceptHandler()], level=0, force=True)


def add_logfile(path: Union[str, Path], level: Union[str, int] = "DEBUG") -> int:
    """Append to ``path``, returns the sink id for ``logger.remove``"""
    return logger.add(
        sink=path,
        level=level,
        format=FILE_FORMAT,
        filter=_filter(),
        colorize=False,
        mode="a",
        encoding="utf-8",
    )


@contextlib.contextmanager
def logfile(path: Union[str, Path], level: Union[str, int] = "DEBUG") -> Iterator[Path]:
    sink = add_logfile(path, level)
    try:
        yield Path(path)
    finally:
        logger.remove(sink)
