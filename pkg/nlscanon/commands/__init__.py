import argparse
import importlib
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from nlscanon.utils import get_root_logger, scandir
from nlscanon.utils.errors import NlsCanonError
from nlscanon.utils.options import parse_options
from nlscanon.utils.registry import COMMAND_REGISTRY

__all__ = ["main", "run"]

# automatically scan and import command modules for registry
# scan all the files under the 'commands' folder and collect files ending with '_command.py'
command_folder = Path(Path(__file__).resolve()).parent
command_filenames = [
    Path(Path(v).name).stem for v in scandir(str(command_folder)) if v.endswith("_command.py")
]
# import all the command modules
_command_modules = [
    importlib.import_module(f"nlscanon.commands.{file_name}") for file_name in command_filenames
]


def run(args: argparse.Namespace) -> int:
    """Run the parsed subcommand and return its exit code."""
    logger = get_root_logger(log_file=args.log_file)
    logger.setLevel(logging.DEBUG if args.debug else logging.INFO)
    command = COMMAND_REGISTRY.get(args.command)()
    logger.debug(f"Running [{args.command}] with {args.threads} worker(s).")
    return int(command(args))


def main(argv: Sequence[str] | None = None, root_path: str | Path | None = None) -> int:
    """Command line entry point.

    Exit codes: 0 on success, 1 when a computation fails or a check does not
    pass, 2 on configuration errors. Errors are also written to stderr as
    one JSON object.
    """
    try:
        return run(parse_options(argv, root_path))
    except NlsCanonError as err:
        payload = {**err.to_dict(), "exit_code": err.exit_code}
        sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")
        return err.exit_code
    except SystemExit as err:
        # --help
        return err.code if isinstance(err.code, int) else 0
