import numpy as np
from scipy.integrate import quad_vec

from nlscanon.coeffs import CoefficientSet, eval_coeffs
from nlscanon.riccati import (
    FundamentalSolution,
    closed_form_basis,
    solve_characteristic,
)
from nlscanon.transform.field import ComplexField
from nlscanon.transform.frame import TransformFrame
from nlscanon.utils import get_root_logger
from nlscanon.utils.errors import DegenerateKernelError, FocalPointError

FOCAL_TOL = 1e-12
DECAY_TOL = 1e-12


def build_fundamental(coeffs: CoefficientSet, t_end: float, t_min: float | None = None) -> FundamentalSolution:
    """Fundamental solution on [0, t_end] from the closed-form basis when
    there is one, from the integrated characteristic equation otherwise.
    """
    basis = closed_form_basis(coeffs) or solve_characteristic(coeffs, t_end)
    if t_min is None:
        return FundamentalSolution(coeffs, basis, t_end=t_end)
    return FundamentalSolution(coeffs, basis, t_min=t_min, t_end=t_end)


def green_function(
    coeffs: CoefficientSet, fundamental: FundamentalSolution, x, y, t
) -> np.ndarray:
    """G(x, y, t) = (2πiμ₀)^{−1/2} exp[i(α₀x² + β₀xy + γ₀y² + δ₀x + ε₀y + κ₀)].

    The principal branch of the square root is used at every t. It is
    continuous between focal times, where μ₀ keeps its sign, but no phase is
    carried across a zero of μ₀, so past the first focal time the result is
    the principal value and not the continued propagator.
    """
    x, y, t = np.broadcast_arrays(
        np.asarray(x, dtype=float), np.asarray(y, dtype=float), np.asarray(t, dtype=float)
    )
    fv = fundamental(t)
    bad = np.abs(fv.mu0) <= FOCAL_TOL
    if np.any(bad):
        t_bad = float(t[bad].flat[0])
        msg = f"mu0 vanishes at t={t_bad}: the Green function has a focal point there"
        raise FocalPointError(msg, t=t_bad)
    phase = (
        fv.alpha0 * x**2 + fv.beta0 * x * y + fv.gamma0 * y**2
        + fv.delta0 * x + fv.epsilon0 * y + fv.kappa0
    )
    return np.power(2j * np.pi * fv.mu0, -0.5) * np.exp(1j * phase)


def green_asymptotic(coeffs: CoefficientSet, x, y, t) -> np.ndarray:
    """Leading small-time behavior of the Green function:

        (4πia(0)t)^{−1/2} exp[i(x − y)²/(4a(0)t)]
        × exp[−i(a'(0)(x − y)²/(8a(0)²) + c(0)(x² − y²)/(4a(0)) − g(0)(x − y)/(2a(0)))].
    """
    v = eval_coeffs(coeffs, 0.0)
    a0, da0, c0, g0 = float(v.a), float(v.da), float(v.c), float(v.g)
    x, y, t = np.broadcast_arrays(
        np.asarray(x, dtype=float), np.asarray(y, dtype=float), np.asarray(t, dtype=float)
    )
    d = x - y
    leading = np.power(4j * np.pi * a0 * t, -0.5) * np.exp(1j * d**2 / (4 * a0 * t))
    correction = da0 * d**2 / (8 * a0**2) + c0 * (x**2 - y**2) / (4 * a0) - g0 * d / (2 * a0)
    return leading * np.exp(-1j * correction)


def lift_free_propagator(frame: TransformFrame, x, y, t) -> np.ndarray:
    """Free-particle kernel (−4πiΔ)^{−1/2} exp[−i(ξ − η)²/(4Δ)] carried to the
    frame's equation, with ξ = βx + ε, η = β(0)y + ε(0) and Δ = γ(t) − γ(0):

        K = |β(0)| (μ(0)/μ)^{1/2} e^{i(S(x, t) − S(y, 0))} (−4πiΔ)^{−1/2} exp[−i(ξ − η)²/(4Δ)].
    """
    x, y, t = np.broadcast_arrays(
        np.asarray(x, dtype=float), np.asarray(y, dtype=float), np.asarray(t, dtype=float)
    )
    s = frame.state(t)
    i = frame.init
    delta = s.gamma - i.gamma
    bad = delta == 0
    if np.any(bad):
        t_bad = float(t[bad].flat[0])
        msg = f"gamma(t) = gamma(0) at t={t_bad}: the lifted kernel degenerates"
        raise DegenerateKernelError(msg, t=t_bad)
    xi = s.beta * x + s.epsilon
    eta = i.beta * y + i.epsilon
    phase = (
        s.alpha * x**2 + s.delta * x + s.kappa
        - (i.alpha * y**2 + i.delta * y + i.kappa)
        - (xi - eta) ** 2 / (4 * delta)
    )
    scale = abs(i.beta) * np.sqrt((i.mu / s.mu) + 0j)
    return scale * np.power(-4j * np.pi * delta, -0.5) * np.exp(1j * phase)


def _panels(fv, x: np.ndarray, window: float) -> np.ndarray:
    """Breakpoints keeping the kernel phase change below π per panel."""
    slope = (
        2 * abs(float(fv.gamma0)) * window
        + abs(float(fv.beta0)) * float(np.max(np.abs(x)))
        + abs(float(fv.epsilon0))
    )
    n = max(1, int(np.ceil(2 * window * slope / np.pi)))
    return np.linspace(-window, window, n + 1)[1:-1]


def propagate_linear(
    coeffs: CoefficientSet,
    phi: ComplexField,
    x,
    t: float,
    window: float,
    fundamental: FundamentalSolution | None = None,
    epsabs: float = 1e-9,
) -> np.ndarray:
    """ψ(x, t) = ∫ G(x, y, t) φ(y) dy over [−window, window] for the linear
    (h = 0) equation.

    Args:
    ----
        coeffs (CoefficientSet): Coefficients of the equation.
        phi (ComplexField): Initial data, evaluated at t = 0.
        x (array): Positions at which ψ is wanted.
        t (float): Time, strictly between 0 and the first focal time.
        window (float): Half width of the integration interval.
        fundamental (FundamentalSolution): Reused when given.
        epsabs (float): Absolute tolerance of the adaptive quadrature.

    Returns:
    -------
        array: ψ at the positions x.

    """
    logger = get_root_logger()
    x = np.atleast_1d(np.asarray(x, dtype=float))
    edge = float(np.max(np.abs(phi(np.array([-window, window]), 0.0))))
    if edge >= DECAY_TOL:
        logger.warning(
            f"initial data is not negligible at the window boundary: |phi(+-{window})| = {edge:.3e}"
        )
    if fundamental is None:
        fundamental = build_fundamental(coeffs, t_end=max(float(t), 1e-3))
    fv = fundamental(np.asarray(float(t)))
    if abs(float(fv.mu0)) <= FOCAL_TOL:
        msg = f"mu0 vanishes at t={t}: the Green function has a focal point there"
        raise FocalPointError(msg, t=float(t))
    prefactor = np.power(2j * np.pi * float(fv.mu0), -0.5)
    x_phase = float(fv.alpha0) * x**2 + float(fv.delta0) * x + float(fv.kappa0)

    def integrand(y: float) -> np.ndarray:
        phase = x_phase + float(fv.beta0) * x * y + float(fv.gamma0) * y**2 + float(fv.epsilon0) * y
        values = np.exp(1j * phase) * complex(phi(y, 0.0))
        return np.concatenate([values.real, values.imag])

    points = _panels(fv, x, window)
    result, _ = quad_vec(
        integrand, -window, window, epsabs=epsabs, epsrel=1e-10, norm="max",
        points=points if points.size else None, limit=max(2000, 4 * points.size),
    )
    n = x.size
    return prefactor * (result[:n] + 1j * result[n:])
