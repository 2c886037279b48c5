from nlscanon.riccati.characteristic import (
    CharacteristicBasis,
    integral_of_tau,
    solve_characteristic,
    wronskian_check,
)
from nlscanon.riccati.closed_forms import (
    ExponentialTrajectory,
    HarmonicTrajectory,
    PlasmaTrajectory,
    closed_form_basis,
    closed_form_trajectory,
    has_closed_form,
)
from nlscanon.riccati.fundamental import (
    FundamentalSolution,
    FundamentalValues,
    fundamental_solution,
    lambda_factor,
)
from nlscanon.riccati.general import (
    CompositionTrajectory,
    DirectTrajectory,
    build_trajectory,
    general_solution,
)
from nlscanon.riccati.residual import riccati_residual
from nlscanon.riccati.state import STATE_NAMES, RiccatiState, Trajectory, riccati_rate

__all__ = [
    "STATE_NAMES",
    "CharacteristicBasis",
    "CompositionTrajectory",
    "DirectTrajectory",
    "ExponentialTrajectory",
    "FundamentalSolution",
    "FundamentalValues",
    "HarmonicTrajectory",
    "PlasmaTrajectory",
    "RiccatiState",
    "Trajectory",
    "build_trajectory",
    "closed_form_basis",
    "closed_form_trajectory",
    "fundamental_solution",
    "general_solution",
    "has_closed_form",
    "integral_of_tau",
    "lambda_factor",
    "riccati_rate",
    "riccati_residual",
    "solve_characteristic",
    "wronskian_check",
]
