from nlscanon.transform.field import ComplexField, gaussian, plane_wave, zero_field
from nlscanon.transform.frame import (
    TransformFrame,
    branch_of,
    build_frame,
    coupling_from_kernel,
    from_standard,
    integrability_coupling,
    lift_solution,
    pull_back,
    to_standard,
)
from nlscanon.transform.green import (
    build_fundamental,
    green_asymptotic,
    green_function,
    lift_free_propagator,
    propagate_linear,
)

__all__ = [
    "ComplexField",
    "TransformFrame",
    "branch_of",
    "build_frame",
    "build_fundamental",
    "coupling_from_kernel",
    "from_standard",
    "gaussian",
    "green_asymptotic",
    "green_function",
    "integrability_coupling",
    "lift_free_propagator",
    "lift_solution",
    "plane_wave",
    "propagate_linear",
    "pull_back",
    "to_standard",
    "zero_field",
]
