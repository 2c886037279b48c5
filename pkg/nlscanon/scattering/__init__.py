from nlscanon.scattering.glm import (
    GLMSolution,
    ScatteringData,
    centered_norming_constant,
    evolve_scattering_data,
    fit_norming_constants,
    glm_field,
    glm_reconstruct,
    glm_solve,
)
from nlscanon.scattering.lax import (
    BRANCHES,
    PAULI,
    LaxMatrices,
    flatness_residual,
    lax_matrices,
    zs_apply,
)

__all__ = [
    "BRANCHES",
    "PAULI",
    "GLMSolution",
    "LaxMatrices",
    "ScatteringData",
    "centered_norming_constant",
    "evolve_scattering_data",
    "fit_norming_constants",
    "flatness_residual",
    "glm_field",
    "glm_reconstruct",
    "glm_solve",
    "lax_matrices",
    "zs_apply",
]
