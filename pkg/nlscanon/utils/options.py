import argparse
import re
import sys
import tomllib
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from nlscanon.utils.errors import ConfigError
from nlscanon.utils.misc import get_thread_cap
from nlscanon.utils.registry import COMMAND_REGISTRY

# flags whose values may start with '-', e.g. --grid -10:10:401,0:1:11
SIGNED_FLAGS = ("--grid", "--zeta", "--init", "--eigenvalues", "--norming", "--lambda", "--window")
_SIGNED_VALUE = re.compile(r"^-[\d.ij]")


def toml_load(f: str | Path) -> dict[str, Any]:
    """Load TOML file
    Args:
        f (str): File path.

    Returns
    -------
        dict: Loaded dict.

    """
    path = Path(f).expanduser()
    if path.suffix != ".toml":
        msg = f"option files must be TOML, got '{path}'. See the templates in options/."
        raise ConfigError(msg, path=str(path))
    try:
        with path.open("rb") as fh:
            return tomllib.load(fh)
    except (OSError, tomllib.TOMLDecodeError) as err:
        msg = f"error decoding TOML file '{path}': {err}"
        raise ConfigError(msg, path=str(path))


class OptionParser(argparse.ArgumentParser):
    """ArgumentParser that raises ConfigError instead of exiting on bad input."""

    def error(self, message: str):
        msg = f"{self.prog}: {message}"
        raise ConfigError(msg)


def join_signed_values(argv: Sequence[str]) -> list[str]:
    """Rewrite `--grid -10:10:...` as `--grid=-10:10:...` so argparse does
    not read the value as a flag.
    """
    out: list[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in SIGNED_FLAGS and i + 1 < len(argv) and _SIGNED_VALUE.match(argv[i + 1]):
            out.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def _resolve(opt_path: str, root_path: str | Path | None) -> Path:
    path = Path(opt_path).expanduser()
    if not path.exists() and root_path is not None and (Path(root_path) / path).exists():
        return Path(root_path) / path
    return path


def build_parser() -> tuple[OptionParser, dict[str, argparse.ArgumentParser]]:
    common = OptionParser(add_help=False)
    common.add_argument("-opt", type=str, default=None, help="Path to option TOML file.")
    common.add_argument(
        "--threads", type=int, default=None,
        help="Worker cap for grid evaluation (falls back to $NLS_CANON_THREADS, then 1).",
    )
    common.add_argument("--log-file", type=str, default=None, help="Also log to this file.")
    common.add_argument("--debug", action="store_true", default=False, help="Debug logging.")

    parser = OptionParser(
        prog="nlscanon",
        description="-------- nlscanon command-line options --------",
    )
    sub = parser.add_subparsers(
        dest="command", metavar="command", required=True, parser_class=OptionParser
    )
    subparsers: dict[str, argparse.ArgumentParser] = {}
    for name, command in COMMAND_REGISTRY:
        p = sub.add_parser(
            name,
            help=command.help,
            description=command.help,
            parents=[common],
            formatter_class=argparse.ArgumentDefaultsHelpFormatter,
        )
        command.add_arguments(p)
        subparsers[name] = p
    return parser, subparsers


def parse_options(
    argv: Sequence[str] | None = None, root_path: str | Path | None = None
) -> argparse.Namespace:
    """Parse the command line. Keys of an `-opt` TOML file become defaults of
    the chosen subcommand, so explicit flags override the file.
    """
    argv = join_signed_values(list(sys.argv[1:] if argv is None else argv))
    parser, subparsers = build_parser()
    args = parser.parse_args(argv)

    if args.opt is not None:
        opt = {str(k).replace("-", "_"): v for k, v in toml_load(_resolve(args.opt, root_path)).items()}
        sub = subparsers[args.command]
        known = {action.dest for action in sub._actions}
        unknown = sorted(set(opt) - known)
        if unknown:
            msg = f"unknown keys for '{args.command}' in {args.opt}: {unknown}"
            raise ConfigError(msg, keys=unknown)
        sub.set_defaults(**opt)
        args = parser.parse_args(argv)

    try:
        args.threads = get_thread_cap(args.threads)
    except ValueError as err:
        raise ConfigError(str(err))
    return args
