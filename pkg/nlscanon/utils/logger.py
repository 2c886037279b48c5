import datetime
import logging
import time
from pathlib import Path
from typing import Any

initialized_logger: dict[str, set[str]] = {}
FORMAT = "%(asctime)s %(levelname)s: %(message)s"


class AvgTimer:
    """Moving average of the time between `record` calls over `window` steps."""

    def __init__(self, window: int = 200) -> None:
        self.window = window
        self.tic = time.perf_counter()
        self.samples: list[float] = []

    def record(self) -> None:
        toc = time.perf_counter()
        self.samples.append(toc - self.tic)
        if len(self.samples) > self.window:
            del self.samples[0]
        self.tic = toc

    def get_avg_time(self) -> float:
        return sum(self.samples) / len(self.samples) if self.samples else 0.0


class ProgressLogger:
    """Message logger for long running evolutions.

    Args:
    ----
        name (str): Run name shown in front of every message.
        total_steps (int): Number of steps the run will take.
        interval (int): Log every `interval` steps. Default: 1000.

    """

    def __init__(self, name: str, total_steps: int, interval: int = 1000) -> None:
        self.name = name
        self.total_steps = total_steps
        self.interval = max(1, interval)
        self.start_time = time.perf_counter()
        self.logger = get_root_logger()

    def __call__(self, log_vars: dict[str, Any]) -> None:
        """Log one progress line.

        Args:
        ----
            log_vars (dict): It contains the following keys:
                step (int): Current step.
                time (float): Average step time, optional.
            every other key is printed as a float.

        """
        log_vars = dict(log_vars)
        step = int(log_vars.pop("step"))
        if step % self.interval != 0 and step != self.total_steps:
            return

        message = f"[ {self.name} ] [ step:{step:8,d}/{self.total_steps:,d} ]"
        if "time" in log_vars:
            step_time = log_vars.pop("time")
            rate = 1 / step_time if step_time > 0 else float("inf")
            elapsed = time.perf_counter() - self.start_time
            eta = datetime.timedelta(seconds=int(elapsed / max(step, 1) * (self.total_steps - step)))
            message += f" [ performance: {rate:.1f} step/s ] [ eta: {eta} ]"

        for k, v in log_vars.items():
            message += f" [ {k}: {v:.4e} ]"
        self.logger.info(message)


def get_root_logger(
    logger_name: str = "nlscanon",
    log_level: int = logging.INFO,
    log_file: str | None = None,
) -> logging.Logger:
    """Get the root logger.

    The first call adds a StreamHandler. Each distinct `log_file`, on the
    first call or later, adds one FileHandler.

    Args:
    ----
        logger_name (str): root logger name. Default: 'nlscanon'.
        log_level (int): Level set on the first call.
        log_file (str | None): Also log to this file.

    Returns:
    -------
        logging.Logger: The root logger.

    """
    logger = logging.getLogger(logger_name)
    files = initialized_logger.get(logger_name)
    if files is None:
        stream_handler = logging.StreamHandler()
        stream_handler.setFormatter(logging.Formatter(FORMAT, datefmt="%d-%m-%Y %I:%M %p |"))
        logger.addHandler(stream_handler)
        logger.propagate = False
        logger.setLevel(log_level)
        files = initialized_logger[logger_name] = set()

    if log_file is not None and str(Path(log_file).resolve()) not in files:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file, "w", encoding="utf-8")
        file_handler.setFormatter(logging.Formatter(FORMAT))
        logger.addHandler(file_handler)
        files.add(str(Path(log_file).resolve()))
    return logger
