"""Command-line entry point: ``k3lat``.

Commands:
    k3lat lat {info,snf,disc,comp,sat,div} --lattice L [--sub B] [--v V] [--matrix A]
    k3lat moduli [report|hilbert|k3] --model M --v V [--bound N]
    k3lat bm [check|birational|sha|twist] (--config C | --g G) --d D [--e E] [--bound N]
    k3lat extmukai --g G
    k3lat verify {glue,cokernel} (--lattice L --sub B [--v V] | --random N [--seed S])

Every command accepts --json. Exit codes: 0 success, 1 domain error,
2 parse or schema error.
"""

import argparse
import json
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from .commands import run_bm, run_extmukai, run_lat, run_moduli, run_verify
from .output_formatter import OutputMode, get_formatter
from .response_models import ErrorDetail, ErrorResponse
from .schemas import MissingInputError
from ..lattice.errors import LatticeError
from ..utils.logger import bind_command, set_package_level

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_PARSE_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit machine-readable JSON")
    common.add_argument(
        "--log-level", type=str.upper, default=None, choices=["DEBUG", "INFO", "WARNING", "ERROR"]
    )

    parser = argparse.ArgumentParser(
        prog="k3lat",
        description="Exact lattice computations for moduli of sheaves on K3 surfaces",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    lat = commands.add_parser("lat", parents=[common], help="Lattice operations")
    lat.add_argument("action", choices=["info", "snf", "disc", "comp", "sat", "div"])
    lat.add_argument("--lattice", type=str, help="Lattice JSON (inline or file)")
    lat.add_argument("--matrix", type=str, help="Integer matrix for snf")
    lat.add_argument("--sub", type=str, help="Sublattice basis as a JSON list of vectors")
    lat.add_argument("--v", type=str, help="Vector as a JSON integer array")
    lat.set_defaults(handler=run_lat)

    moduli = commands.add_parser("moduli", parents=[common], help="Moduli spaces M_H(v)")
    moduli.add_argument("mode", nargs="?", default="report", choices=["report", "hilbert", "k3"])
    moduli.add_argument("--model", type=str, help="K3 model JSON (inline or file)")
    moduli.add_argument("--v", type=str, help='Mukai vector, e.g. {"r":0,"E":[1],"s":0}')
    moduli.add_argument("--bound", type=int, default=None, help="Search box for U ⊂ NS")
    moduli.set_defaults(handler=run_moduli)

    bm = commands.add_parser("bm", parents=[common], help="Beauville-Mukai systems Pic^d")
    bm.add_argument("mode", nargs="?", default="check", choices=["check", "birational", "sha", "twist"])
    bm.add_argument("--config", type=str, help="BM config JSON (inline or file)")
    bm.add_argument("--g", type=int, default=None, help="Picard rank one of genus g")
    bm.add_argument("--d", type=int, default=None)
    bm.add_argument("--e", type=int, default=None)
    bm.add_argument("--bound", type=int, default=None, help="Search box for divisors")
    bm.set_defaults(handler=run_bm)

    ext = commands.add_parser("extmukai", parents=[common], help="Extended Mukai discriminants")
    ext.add_argument("--g", type=int, default=None)
    ext.set_defaults(handler=run_extmukai)

    verify = commands.add_parser("verify", parents=[common], help="Glue and cokernel oracles")
    verify.add_argument("what", choices=["glue", "cokernel"])
    verify.add_argument("--lattice", type=str, help="Unimodular ambient lattice JSON")
    verify.add_argument("--sub", type=str, help="Sublattice basis as a JSON list of vectors")
    verify.add_argument("--v", type=str, help="Vector in the coordinates of the sublattice")
    verify.add_argument("--random", type=int, default=None, help="Run a seeded sweep of N samples")
    verify.add_argument("--seed", type=int, default=None)
    verify.set_defaults(handler=run_verify)

    return parser


def _emit_error(mode: OutputMode, code: str, message: str) -> None:
    response = ErrorResponse(error=ErrorDetail(code=code, message=message))
    sys.stdout.write(get_formatter(mode).format(response))


def _field_path(err: ValidationError) -> str:
    first = err.errors()[0]
    path = ".".join(str(p) for p in first.get("loc", ()))
    return f"{path}: {first.get('msg', 'invalid value')}" if path else first.get("msg", "invalid value")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK

    bind_command(args.command)
    if args.log_level:
        set_package_level(args.log_level)
    mode = OutputMode.from_flag(args.json)

    try:
        response = args.handler(args)
    except LatticeError as exc:
        _emit_error(mode, exc.code, str(exc))
        return EXIT_DOMAIN_ERROR
    except ValidationError as exc:
        _emit_error(mode, "schema", _field_path(exc))
        return EXIT_PARSE_ERROR
    except (json.JSONDecodeError, OSError) as exc:
        _emit_error(mode, "parse", str(exc))
        return EXIT_PARSE_ERROR
    except MissingInputError as exc:
        _emit_error(mode, exc.code, str(exc))
        return EXIT_PARSE_ERROR
    except ValueError as exc:
        # unknown names and out-of-range flags
        _emit_error(mode, "parse", str(exc))
        return EXIT_PARSE_ERROR

    sys.stdout.write(get_formatter(mode).format(response))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
