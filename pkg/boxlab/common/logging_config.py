"""
Logging configuration for the boxlab command line.

Library modules only call ``logging.getLogger(__name__)``; the handlers
below are attached to the ``boxlab`` logger by :func:`setup_logging`.
"""
from __future__ import annotations

import logging
import logging.config
import os
import pathlib
import re
import sys

FILE_FORMAT = (
    "%(asctime)s %(levelname)s %(threadName)s %(name)s:%(lineno)d %(funcName)s %(message)s"
)
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
LOGFILE_MAX_BYTES = 100 * 1024 * 1024

_reset = "\033[m"
_spec = "\033[93m"
LEVEL_COLORS = {
    logging.ERROR: "\033[41m",
    logging.WARNING: "\033[43m",
    logging.INFO: "\033[37m",
    logging.DEBUG: "\033[37;40m",
}
_BASE = f"\033[33m%(asctime)s{_reset} \033[3m%(levelname)s{_reset} %(name)s:\033[36m%(lineno)d{_reset}"

# group specs as GroupSpec.__str__ renders them: sol(25), wreath-z4(8), sl(2,9)
SPEC_RE = re.compile(r"\b((?:cyclic|sol|sl|wreath-[a-z0-9]+|lamplighter|heisenberg|zxz2)\([0-9, None]*\))")
ANSI_RE = re.compile("\033\\[[0-9;]*m")


def _level_color(levelno: int) -> str:
    for level in (logging.ERROR, logging.WARNING, logging.INFO):
        if levelno >= level:
            return LEVEL_COLORS[level]
    return LEVEL_COLORS[logging.DEBUG]


class BoxlabConsoleFormatter(logging.Formatter):
    """
    Formats records for stderr.

    Without ``debug`` progress messages (INFO and below) are printed as
    ``> message`` and warnings, such as findings of the verification suites,
    get the full format. With ``debug`` every record gets the full format and,
    on a terminal, group specs in the message are highlighted.
    """

    def __init__(self, debug: bool = False, no_color: bool = False) -> None:
        super().__init__(datefmt=DATE_FORMAT)
        self.debug = debug
        self.use_color = debug and not no_color and sys.stderr.isatty()
        self._terse = logging.Formatter(fmt="> %(message)s")

    def _full(self, levelno: int) -> logging.Formatter:
        fmt = f"{_BASE} {_level_color(levelno)}%(message)s{_reset}"
        if not self.use_color:
            fmt = ANSI_RE.sub("", fmt)
        return logging.Formatter(fmt=fmt, datefmt=DATE_FORMAT)

    def format(self, record: logging.LogRecord) -> str:
        if not self.debug and record.levelno <= logging.INFO:
            return self._terse.format(record)
        if self.use_color:
            message = record.getMessage()
            record = logging.makeLogRecord(record.__dict__)
            record.msg = SPEC_RE.sub(f"{_spec}\\1{_reset}{_level_color(record.levelno)}", message)
            record.args = None
        return self._full(record.levelno).format(record)


def _dict_config(
    logfile: str | None, console_enabled: bool, debug: bool, no_color: bool
) -> dict:
    handlers = {}
    if console_enabled:
        handlers["console"] = {
            "class": "logging.StreamHandler",
            "level": "DEBUG" if debug else "INFO",
            "formatter": "console",
            "stream": "ext://sys.stderr",
        }
    if logfile is not None:
        logdir = os.path.dirname(logfile)
        if logdir:
            os.makedirs(logdir, exist_ok=True)
        handlers["logfile"] = {
            "class": "logging.handlers.RotatingFileHandler",
            "level": "DEBUG",
            "filename": logfile,
            "formatter": "file",
            "maxBytes": LOGFILE_MAX_BYTES,
            "backupCount": 1,
        }
    return {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "console": {
                "()": "boxlab.common.logging_config.BoxlabConsoleFormatter",
                "debug": debug,
                "no_color": no_color,
            },
            "file": {"format": FILE_FORMAT, "datefmt": DATE_FORMAT},
        },
        "handlers": handlers,
        "loggers": {
            "boxlab": {
                "level": "DEBUG" if debug or logfile is not None else "INFO",
                "handlers": list(handlers),
            },
        },
    }


def setup_logging(
    *,
    logfile: pathlib.Path | str | None = None,
    console_enabled: bool = True,
    debug: bool = False,
    no_color: bool = False,
) -> None:
    """Configures the ``boxlab`` logger tree; a log file always records DEBUG"""
    logging.config.dictConfig(
        _dict_config(None if logfile is None else str(logfile), console_enabled, debug, no_color)
    )
