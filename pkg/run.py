import sys
from os import path as osp
from pathlib import Path

from nlscanon.commands import main
from nlscanon.utils import get_root_logger, tc

# minimum supported python version
if sys.version_info < (3, 12):  # noqa: UP036
    msg = f"{tc.red}Python version >=3.12 is required.{tc.end}"
    raise ValueError(msg)


def run_pipeline(root_path: str) -> None:
    # option files given as options/<name>.toml resolve against the repository root
    try:
        code = main(sys.argv[1:], root_path=root_path)
    except KeyboardInterrupt:
        get_root_logger().info(f"{tc.red}Interrupted.{tc.end}")
        code = 130
    sys.exit(code)


if __name__ == "__main__":
    root_path = Path.resolve(Path(__file__) / osp.pardir)
    run_pipeline(str(root_path))
