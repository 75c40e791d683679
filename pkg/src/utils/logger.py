"""Centralized logging for the K3 lattice toolkit.

All module loggers hang below one package logger, which owns the handlers.
Console output goes to stderr so reports printed on stdout stay
byte-identical between runs. Every record carries the running CLI command
(``-`` outside the CLI), e.g.::

    WARNING | bm | src.k3.beauville_mukai | no dual divisor within bound 3

Environment:
    LOG_LEVEL: package level (default WARNING)
    LOG_FILE: optional file that receives DEBUG and above
"""

import logging
import os
import sys
from pathlib import Path
from typing import Optional

PACKAGE_LOGGER = "src"

CONSOLE_FORMAT = "%(levelname)s | %(command)s | %(name)s | %(message)s"
PLAIN_FORMAT = "%(asctime)s | " + CONSOLE_FORMAT
FILE_FORMAT = "%(asctime)s | %(levelname)-8s | %(command)s | %(name)s | %(funcName)s:%(lineno)d | %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


class ColoredFormatter(logging.Formatter):
    """Level names in ANSI colors, for terminals only."""

    COLORS = {
        "DEBUG": "\033[36m",
        "INFO": "\033[32m",
        "WARNING": "\033[33m",
        "ERROR": "\033[31m",
        "CRITICAL": "\033[35m",
    }
    RESET = "\033[0m"

    def format(self, record):
        levelname = record.levelname
        if levelname in self.COLORS:
            record.levelname = f"{self.COLORS[levelname]}{levelname}{self.RESET}"
        try:
            return super().format(record)
        finally:
            record.levelname = levelname


class CommandFilter(logging.Filter):
    """Stamps the active CLI command onto each record."""

    def __init__(self):
        super().__init__()
        self.command = "-"

    def filter(self, record):
        record.command = self.command
        return True


_command_filter = CommandFilter()


def _level(name: str) -> int:
    return getattr(logging, name.upper())


def setup_logger(
    level: Optional[str] = None,
    log_file: Optional[str] = None,
    colored: Optional[bool] = None,
) -> logging.Logger:
    """(Re)configure the package logger.

    Args:
        level: Console level; defaults to $LOG_LEVEL or WARNING
        log_file: Optional log file path; defaults to $LOG_FILE
        colored: Force colors on or off; by default only when stderr is a tty

    Returns:
        The package logger
    """
    level = level or os.getenv("LOG_LEVEL", "WARNING")
    log_file = log_file if log_file is not None else os.getenv("LOG_FILE")
    if colored is None:
        colored = sys.stderr.isatty()

    root = logging.getLogger(PACKAGE_LOGGER)
    root.handlers.clear()

    console = logging.StreamHandler(sys.stderr)
    console.setLevel(_level(level))
    formatter_cls = ColoredFormatter if colored else logging.Formatter
    console.setFormatter(formatter_cls(CONSOLE_FORMAT if colored else PLAIN_FORMAT, datefmt=DATE_FORMAT))
    console.addFilter(_command_filter)
    root.addHandler(console)

    root_level = _level(level)
    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(path, encoding="utf-8")
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(FILE_FORMAT, datefmt=DATE_FORMAT))
        file_handler.addFilter(_command_filter)
        root.addHandler(file_handler)
        root_level = logging.DEBUG

    root.setLevel(root_level)
    root.propagate = False
    return root


def get_logger(name: str) -> logging.Logger:
    """Logger for a module below the package; configures the package on first use."""
    if not logging.getLogger(PACKAGE_LOGGER).handlers:
        setup_logger()
    return logging.getLogger(name)


def set_package_level(level: str) -> None:
    """Change the console level, e.g. from ``--log-level``."""
    root = logging.getLogger(PACKAGE_LOGGER)
    if not root.handlers:
        setup_logger(level=level)
        return
    for handler in root.handlers:
        if isinstance(handler, logging.StreamHandler) and not isinstance(handler, logging.FileHandler):
            handler.setLevel(_level(level))
    has_file = any(isinstance(h, logging.FileHandler) for h in root.handlers)
    root.setLevel(logging.DEBUG if has_file else _level(level))


def bind_command(command: str) -> None:
    """Name the CLI command shown in subsequent records."""
    _command_filter.command = command
