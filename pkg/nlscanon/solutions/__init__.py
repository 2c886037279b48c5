import importlib
from copy import deepcopy
from pathlib import Path
from typing import Any

from nlscanon.solutions.base import FORMS, AutonomousSolution
from nlscanon.utils import get_root_logger, scandir
from nlscanon.utils.errors import ConfigError
from nlscanon.utils.registry import SOLUTION_REGISTRY

__all__ = ["FORMS", "AutonomousSolution", "build_solution"]

# automatically scan and import solution modules for registry
# scan all the files under the 'solutions' folder and collect files ending with '_solution.py'
solution_folder = Path(Path(__file__).resolve()).parent
solution_filenames = [
    Path(Path(v).name).stem for v in scandir(str(solution_folder)) if v.endswith("_solution.py")
]
# import all the solution modules
_solution_modules = [
    importlib.import_module(f"nlscanon.solutions.{file_name}") for file_name in solution_filenames
]


def build_solution(opt: dict[str, Any]) -> AutonomousSolution:
    """Build an exact solution from options.

    Args:
    ----
        opt (dict): Configuration. It must contain:
            type (str): Solution family.
        Remaining keys are the family's parameters.

    """
    opt = deepcopy(opt)
    family = opt.pop("type")
    try:
        factory = SOLUTION_REGISTRY.get(family)
    except KeyError as err:
        raise ConfigError(str(err), family=family)
    try:
        solution = factory(**opt)
    except TypeError as err:
        msg = f"bad parameters for solution '{family}': {err}"
        raise ConfigError(msg, family=family)
    logger = get_root_logger()
    logger.debug(f"Solution [{solution.family}] built with {solution.params}.")
    return solution
