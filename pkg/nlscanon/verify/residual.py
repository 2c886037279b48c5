from collections.abc import Callable

import numpy as np

from nlscanon.coeffs import CoefficientSet, eval_coeffs
from nlscanon.transform.field import ComplexField
from nlscanon.utils.registry import RESIDUAL_REGISTRY
from nlscanon.utils.report import Grid2D, ResidualReport
from nlscanon.verify.diff_util import field_derivatives

Coupling = float | Callable[[np.ndarray], np.ndarray]


def _coupling_values(h: Coupling, t: np.ndarray) -> np.ndarray:
    if callable(h):
        return np.asarray(h(t), dtype=float)
    return np.full(t.shape, float(h))


@RESIDUAL_REGISTRY.register(name="autonomous")
def residual_autonomous(
    chi: ComplexField,
    h0: float,
    grid: Grid2D,
    method: str = "auto",
    step=None,
    threads: int | None = None,
    **kwargs,
) -> ResidualReport:
    """Residual of iχ_τ + h₀|χ|²χ − χ_ξξ = 0."""
    xx, tt = grid.mesh()
    d = field_derivatives(chi, grid, method=method, step=step, threads=threads)
    res = 1j * d.dt + h0 * np.abs(d.value) ** 2 * d.value - d.dxx
    return ResidualReport.from_samples(res, xx, tt, method=d.method, grid=grid)


@RESIDUAL_REGISTRY.register(name="standard")
def residual_standard(
    psi: ComplexField,
    grid: Grid2D,
    branch: str = "focusing",
    method: str = "auto",
    step=None,
    threads: int | None = None,
    **kwargs,
) -> ResidualReport:
    """Residual of iΨ_T + Ψ_XX ± 2|Ψ|²Ψ = 0, '+' on the focusing branch."""
    sign = 1.0 if branch == "focusing" else -1.0
    xx, tt = grid.mesh()
    d = field_derivatives(psi, grid, method=method, step=step, threads=threads)
    res = 1j * d.dt + d.dxx + sign * 2 * np.abs(d.value) ** 2 * d.value
    return ResidualReport.from_samples(res, xx, tt, method=d.method, grid=grid)


@RESIDUAL_REGISTRY.register(name="nonautonomous")
def residual_nonautonomous(
    psi: ComplexField,
    coeffs: CoefficientSet,
    h: Coupling,
    grid: Grid2D,
    method: str = "auto",
    step=None,
    threads: int | None = None,
    **kwargs,
) -> ResidualReport:
    """Residual of

        iψ_t + aψ_xx − bx²ψ + icxψ_x + idψ + fxψ − igψ_x − h(t)|ψ|²ψ = 0.

    `h` is a constant or a function of t.
    """
    xx, tt = grid.mesh()
    d = field_derivatives(psi, grid, method=method, step=step, threads=threads)
    v = eval_coeffs(coeffs, tt)
    hv = _coupling_values(h, tt)
    u = d.value
    res = (
        1j * d.dt
        + v.a * d.dxx
        - v.b * xx**2 * u
        + 1j * v.c * xx * d.dx
        + 1j * v.d * u
        + v.f * xx * u
        - 1j * v.g * d.dx
        - hv * np.abs(u) ** 2 * u
    )
    return ResidualReport.from_samples(res, xx, tt, method=d.method, grid=grid)
