from copy import deepcopy
from typing import Any

from nlscanon.utils.registry import RESIDUAL_REGISTRY
from nlscanon.utils.report import ResidualReport
from nlscanon.verify.compare import FieldComparison, FieldSamples, compare_fields
from nlscanon.verify.diff_util import DIFF_METHODS, FieldDerivatives, field_derivatives
from nlscanon.verify.residual import (
    residual_autonomous,
    residual_nonautonomous,
    residual_standard,
)
from nlscanon.verify.split_step import split_step_simulate, upper_band_fraction

__all__ = [
    "DIFF_METHODS",
    "FieldComparison",
    "FieldDerivatives",
    "FieldSamples",
    "calculate_residual",
    "compare_fields",
    "field_derivatives",
    "residual_autonomous",
    "residual_nonautonomous",
    "residual_standard",
    "split_step_simulate",
    "upper_band_fraction",
]


def calculate_residual(data: dict[str, Any], opt: dict[str, Any]) -> ResidualReport:
    """Calculate a PDE residual from data and options.

    Args:
    ----
        data (dict): Field and equation inputs, e.g. {'psi': ..., 'coeffs': ...}.
        opt (dict): Configuration. It must contain:
            type (str): Equation, one of 'autonomous', 'standard',
                'nonautonomous'.

    """
    opt = deepcopy(opt)
    equation = opt.pop("type")
    return RESIDUAL_REGISTRY.get(equation)(**data, **opt)
