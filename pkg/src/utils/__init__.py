"""Utility modules for the K3 lattice toolkit."""

from .config import config, Config, SearchConfig, OracleConfig, OutputConfig
from .logger import bind_command, get_logger, set_package_level, setup_logger

__all__ = [
    "config",
    "Config",
    "SearchConfig",
    "OracleConfig",
    "OutputConfig",
    "get_logger",
    "setup_logger",
    "set_package_level",
    "bind_command",
]
