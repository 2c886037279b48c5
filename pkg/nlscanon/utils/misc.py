import json
import os
from collections.abc import Callable, Iterable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from os import path as osp
from pathlib import Path
from typing import Any

import numpy as np

THREADS_ENV = "NLS_CANON_THREADS"


class tc:
    # ansi color codes
    red = "\033[1;31m"
    light_green = "\033[1;32m"
    light_blue = "\033[1;34m"
    end = "\033[0m"


def scandir(
    dir_path: str,
    suffix: str | None = None,
    recursive: bool = False,
    full_path: bool = False,
) -> Iterator[Any]:
    """Scan a directory to find the interested files.

    Args:
    ----
        dir_path (str): Path of the directory.
        suffix (str | tuple(str), optional): File suffix that we are
            interested in. Default: None.
        recursive (bool, optional): If set to True, recursively scan the
            directory. Default: False.
        full_path (bool, optional): If set to True, include the dir_path.
            Default: False.

    Returns:
    -------
        A generator for all the interested files with relative paths.

    """
    if (suffix is not None) and not isinstance(suffix, str | tuple):
        msg = '"suffix" must be a string or tuple of strings'
        raise TypeError(msg)

    root = dir_path

    def _scandir(dir_path, suffix, recursive):
        for entry in sorted(os.scandir(dir_path), key=lambda e: e.name):
            if not entry.name.startswith(".") and entry.is_file():
                return_path = entry.path if full_path else osp.relpath(entry.path, root)

                if suffix is None or return_path.endswith(suffix):
                    yield return_path
            elif recursive:
                yield from _scandir(entry.path, suffix=suffix, recursive=recursive)

    return _scandir(dir_path, suffix=suffix, recursive=recursive)


def get_thread_cap(threads: int | None = None) -> int:
    """Resolve the worker cap: explicit value, then $NLS_CANON_THREADS, then 1."""
    if threads is None:
        env = os.environ.get(THREADS_ENV)
        if env is None or not env.strip():
            return 1
        try:
            threads = int(env)
        except ValueError:
            msg = f"{THREADS_ENV} must be an integer, got '{env}'"
            raise ValueError(msg)
    if threads < 1:
        msg = f"thread cap must be >= 1, got {threads}"
        raise ValueError(msg)
    return threads


def map_rows(
    func: Callable[[np.ndarray, np.ndarray], np.ndarray],
    x: np.ndarray,
    t: np.ndarray,
    threads: int | None = None,
) -> np.ndarray:
    """Evaluate `func` on 2D arrays row by row, spread over a thread pool.

    Rows are independent, so the result does not depend on the worker count.
    """
    x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    if x.ndim != 2:
        return np.asarray(func(x, t))
    workers = min(get_thread_cap(threads), x.shape[0])
    if workers <= 1:
        return np.asarray(func(x, t))
    chunks = np.array_split(np.arange(x.shape[0]), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda idx: np.asarray(func(x[idx], t[idx])), chunks))
    return np.concatenate(parts, axis=0)


def fmt_float(value: float) -> str:
    return f"{float(value):.17g}"


def ensure_parent(path: str | Path) -> Path:
    path = Path(path).expanduser()
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def write_csv(
    path: str | Path | None, header: Sequence[str], rows: Iterable[Sequence[float]]
) -> str:
    """Write rows with 17 significant digits. Returns the text as well, so
    callers without an output path can print it.
    """
    lines = [",".join(header)]
    lines.extend(",".join(fmt_float(v) for v in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if path is not None:
        with ensure_parent(path).open("w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    return text


def write_json(path: str | Path | None, payload: dict[str, Any]) -> str:
    text = json.dumps(payload, indent=2, sort_keys=True, allow_nan=True) + "\n"
    if path is not None:
        with ensure_parent(path).open("w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    return text
