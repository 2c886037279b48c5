from nlscanon.utils.errors import NlsCanonError
from nlscanon.utils.logger import AvgTimer, ProgressLogger, get_root_logger
from nlscanon.utils.misc import (
    fmt_float,
    get_thread_cap,
    map_rows,
    scandir,
    tc,
    write_csv,
    write_json,
)
from nlscanon.utils.registry import Registry
from nlscanon.utils.report import Grid2D, ResidualReport

__all__ = [
    # logger.py
    "AvgTimer",
    # report.py
    "Grid2D",
    # errors.py
    "NlsCanonError",
    "ProgressLogger",
    "ResidualReport",
    # registry
    "Registry",
    # misc.py
    "fmt_float",
    "get_root_logger",
    "get_thread_cap",
    "map_rows",
    "scandir",
    "tc",
    "write_csv",
    "write_json",
]
