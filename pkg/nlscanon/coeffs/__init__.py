from copy import deepcopy
from typing import Any

from nlscanon.coeffs import presets
from nlscanon.coeffs.base import (
    COEFF_NAMES,
    Coefficient,
    CoefficientSet,
    CoeffValues,
    eval_coeffs,
    tau_sigma,
)
from nlscanon.coeffs.custom import coefficients_from_dict, load_coefficients, parse_terms
from nlscanon.utils import get_root_logger
from nlscanon.utils.errors import ConfigError
from nlscanon.utils.registry import PRESET_REGISTRY

__all__ = [
    "COEFF_NAMES",
    "CoeffValues",
    "Coefficient",
    "CoefficientSet",
    "build_coefficients",
    "coefficients_from_dict",
    "eval_coeffs",
    "load_coefficients",
    "parse_terms",
    "presets",
    "tau_sigma",
]


def build_coefficients(opt: dict[str, Any]) -> CoefficientSet:
    """Build a coefficient set from options.

    Args:
    ----
        opt (dict): Configuration. It must contain:
            type (str): Preset name, or 'custom' together with 'path'.
        Remaining keys are passed to the preset.

    """
    opt = deepcopy(opt)
    preset_type = opt.pop("type")
    if preset_type == "custom":
        coeffs = load_coefficients(opt.pop("path"))
        if "h0" in opt:
            coeffs = coeffs.with_h0(opt.pop("h0"))
    else:
        try:
            preset = PRESET_REGISTRY.get(preset_type)
        except KeyError as err:
            raise ConfigError(str(err), preset=preset_type)
        try:
            coeffs = preset(**opt)
        except TypeError as err:
            msg = f"bad parameters for preset '{preset_type}': {err}"
            raise ConfigError(msg, preset=preset_type)
    logger = get_root_logger()
    logger.debug(f"Coefficient set [{coeffs.name}] built with {coeffs.describe()}.")
    return coeffs
