"""Command-line front end for the K3 lattice toolkit."""

from .main import build_parser, main

__all__ = ["build_parser", "main"]
