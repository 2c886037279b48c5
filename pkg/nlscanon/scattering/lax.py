from dataclasses import dataclass

import numpy as np

from nlscanon.transform.field import ComplexField
from nlscanon.utils.errors import ConfigError
from nlscanon.utils.report import Grid2D, ResidualReport
from nlscanon.verify.diff_util import field_derivatives

PAULI = {
    "sigma1": np.array([[0, 1], [1, 0]], dtype=complex),
    "sigma2": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "sigma3": np.array([[1, 0], [0, -1]], dtype=complex),
    "sigma_plus": np.array([[0, 1], [0, 0]], dtype=complex),
    "sigma_minus": np.array([[0, 0], [1, 0]], dtype=complex),
}
BRANCHES = ("focusing", "defocusing")


def _sign(branch: str) -> int:
    if branch not in BRANCHES:
        msg = f"unknown branch '{branch}', expected one of {BRANCHES}"
        raise ConfigError(msg, branch=branch)
    return 1 if branch == "focusing" else -1


@dataclass(frozen=True)
class LaxMatrices:
    """U and V of shape (..., 2, 2) at one spectral parameter."""

    U: np.ndarray
    V: np.ndarray
    lam: complex
    branch: str = "focusing"


def lax_matrices(psi, psi_x, lam: complex, branch: str = "focusing") -> LaxMatrices:
    """Zakharov–Shabat pair; the upper signs are the focusing branch:

        U = −iλσ₃ + Ψσ₊ ∓ Ψ*σ₋,
        V = i(−2λ² ± |Ψ|²)σ₃ + (2λΨ + iΨ_X)σ₊ ± (−2λΨ* + iΨ*_X)σ₋.
    """
    s = _sign(branch)
    psi, psi_x = np.broadcast_arrays(np.asarray(psi, dtype=complex), np.asarray(psi_x, dtype=complex))
    shape = psi.shape
    u = np.empty((*shape, 2, 2), dtype=complex)
    v = np.empty((*shape, 2, 2), dtype=complex)
    mod2 = np.abs(psi) ** 2
    u[..., 0, 0] = -1j * lam
    u[..., 0, 1] = psi
    u[..., 1, 0] = -s * np.conj(psi)
    u[..., 1, 1] = 1j * lam
    v[..., 0, 0] = 1j * (-2 * lam**2 + s * mod2)
    v[..., 0, 1] = 2 * lam * psi + 1j * psi_x
    v[..., 1, 0] = s * (-2 * lam * np.conj(psi) + 1j * np.conj(psi_x))
    v[..., 1, 1] = 1j * (2 * lam**2 - s * mod2)
    return LaxMatrices(u, v, lam, branch)


def zs_apply(matrices: LaxMatrices, phi) -> tuple[np.ndarray, np.ndarray]:
    """Φ_X = UΦ and Φ_T = VΦ for Φ of shape (..., 2)."""
    phi = np.asarray(phi, dtype=complex)
    dx = np.einsum("...ij,...j->...i", matrices.U, phi)
    dt = np.einsum("...ij,...j->...i", matrices.V, phi)
    return dx, dt


def flatness_residual(
    solution: ComplexField,
    lam: complex,
    grid: Grid2D,
    branch: str | None = None,
    method: str = "auto",
    step: float | None = None,
) -> ResidualReport:
    """Sup over the grid of the entrywise max of U_T − V_X + UV − VU.

    Only Ψ, Ψ_X, Ψ_XX and Ψ_T enter, taken from the solution's analytic
    derivatives when it has them.
    """
    if branch is None:
        branch = solution.meta.get("branch", "focusing")
    s = _sign(branch)
    xx, tt = grid.mesh()
    d = field_derivatives(solution, grid, method=method, step=step)
    psi, px, pxx, pt = d.value, d.dx, d.dxx, d.dt
    m = lax_matrices(psi, px, lam, branch)

    u_t = np.zeros((*psi.shape, 2, 2), dtype=complex)
    u_t[..., 0, 1] = pt
    u_t[..., 1, 0] = -s * np.conj(pt)
    mod2_x = 2 * np.real(np.conj(psi) * px)
    v_x = np.empty_like(u_t)
    v_x[..., 0, 0] = 1j * s * mod2_x
    v_x[..., 0, 1] = 2 * lam * px + 1j * pxx
    v_x[..., 1, 0] = s * (-2 * lam * np.conj(px) + 1j * np.conj(pxx))
    v_x[..., 1, 1] = -1j * s * mod2_x

    curvature = u_t - v_x + m.U @ m.V - m.V @ m.U
    pointwise = np.max(np.abs(curvature), axis=(-2, -1))
    return ResidualReport.from_samples(pointwise, xx, tt, method=d.method, grid=grid)
