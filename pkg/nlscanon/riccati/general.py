import numpy as np
from scipy.integrate import solve_ivp

from nlscanon.coeffs import CoefficientSet
from nlscanon.riccati.characteristic import (
    DEFAULT_ATOL,
    DEFAULT_RTOL,
    CharacteristicBasis,
    solve_characteristic,
)
from nlscanon.riccati.closed_forms import (
    FOCAL_TOL,
    closed_form_basis,
    closed_form_trajectory,
    has_closed_form,
)
from nlscanon.riccati.fundamental import FundamentalSolution
from nlscanon.riccati.state import RiccatiState, Trajectory, riccati_rate
from nlscanon.utils import get_root_logger
from nlscanon.utils.errors import ConfigError, DomainError, FocalPointError, IntegrationError
from nlscanon.utils.registry import PRESET_REGISTRY

METHODS = ("auto", "closed_form", "composition", "direct")
DIRECT_RTOL = 1e-11
DIRECT_ATOL = 1e-13


class CompositionTrajectory(Trajectory):
    """General solution composed from the fundamental one. With
    D = α(0) + γ₀(t):

        μ = 2μ(0)μ₀D,  α = α₀ − β₀²/(4D),  β = −β(0)β₀/(2D),
        γ = γ(0) − β(0)²/(4D),  δ = δ₀ − β₀(δ(0) + ε₀)/(2D),
        ε = ε(0) − β(0)(δ(0) + ε₀)/(2D),  κ = κ(0) + κ₀ − (δ(0) + ε₀)²/(4D).

    Every term is rewritten through N = μ₀D = (α(0) + d(0)/(2a(0)))μ₀ + μ₁/2,
    which is finite at t = 0 where α₀, β₀, γ₀ are not.
    """

    kind = "composition"

    def __init__(
        self, coeffs: CoefficientSet, init: RiccatiState, fundamental: FundamentalSolution
    ) -> None:
        t_end = fundamental.t_end if fundamental.t_end is not None else np.inf
        super().__init__(coeffs, init, (0.0, t_end))
        self.fundamental = fundamental

    def state(self, t) -> RiccatiState:
        t = self.check_span(t)
        i, fs = self.init, self.fundamental
        r = fs.regular(t)
        shift = i.alpha + fs.d0 / (2 * fs.a0)
        n = shift * r.mu0 + r.mu1 / 2
        bad = np.abs(n) < FOCAL_TOL * np.abs(r.mu0)
        if np.any(bad):
            t_bad = float(np.broadcast_to(t, bad.shape)[bad].flat[0])
            msg = f"alpha(0) + gamma0(t) vanishes at t={t_bad} (focal point)"
            raise FocalPointError(msg, t=t_bad)
        offset = i.delta + r.epsilon0
        return RiccatiState(
            t,
            2 * i.mu * n,
            (shift * r.dmu0 + r.dmu1 / 2) / (4 * r.a * n) - r.d / (2 * r.a),
            i.beta * r.lam / (2 * n),
            i.gamma - i.beta**2 * r.mu0 / (4 * n),
            r.delta0 + r.lam * offset / (2 * n),
            i.epsilon - i.beta * offset * r.mu0 / (2 * n),
            i.kappa + r.kappa0 - offset**2 * r.mu0 / (4 * n),
        )


class DirectTrajectory(Trajectory):
    """Adaptive DOP853 integration of the seven Riccati equations."""

    kind = "direct"

    def __init__(
        self,
        coeffs: CoefficientSet,
        init: RiccatiState,
        t_end: float,
        rtol: float = DIRECT_RTOL,
        atol: float = DIRECT_ATOL,
    ) -> None:
        super().__init__(coeffs, init, (0.0, t_end))

        def rhs(t: float, y: np.ndarray) -> np.ndarray:
            rate = riccati_rate(coeffs, RiccatiState.from_array(t, y))
            return rate.as_array()

        sol = solve_ivp(
            rhs, (0.0, t_end), init.as_array(), method="DOP853",
            rtol=rtol, atol=atol, dense_output=True,
        )
        if sol.status != 0:
            last = float(sol.t[-1])
            msg = f"direct integration of the Riccati system failed at t={last}: {sol.message}"
            raise IntegrationError(msg, t_last=last)
        self._dense = sol.sol

    def state(self, t) -> RiccatiState:
        t = self.check_span(t)
        flat = np.clip(t.ravel(), *self.t_span)
        values = np.asarray(self._dense(flat)).reshape((7, *t.shape))
        init = self.init.as_array().reshape((7,) + (1,) * t.ndim)
        values = np.where(t == 0, init, values)
        return RiccatiState.from_array(t, values)


def _check_init(init: RiccatiState) -> None:
    if init.mu == 0 or init.beta == 0:
        msg = f"initial data needs mu(0) != 0 and beta(0) != 0, got mu={init.mu}, beta={init.beta}"
        raise DomainError(msg, inequality="mu(0) != 0, beta(0) != 0")


def resolve_method(coeffs: CoefficientSet, method: str) -> str:
    if method not in METHODS:
        msg = f"unknown Riccati method '{method}', expected one of {', '.join(METHODS)}"
        raise ConfigError(msg)
    if method != "auto":
        return method
    if has_closed_form(coeffs):
        return "closed_form"
    # presets have analytic derivatives and known μ₀' behavior
    return "composition" if coeffs.name in PRESET_REGISTRY else "direct"


def build_trajectory(
    coeffs: CoefficientSet,
    init: RiccatiState | None = None,
    t_end: float = 1.0,
    method: str = "auto",
    basis: CharacteristicBasis | None = None,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
) -> Trajectory:
    """Build a Riccati trajectory on [0, t_end].

    Args:
    ----
        coeffs (CoefficientSet): Coefficients of the equation.
        init (RiccatiState): Values at t = 0, identity data by default.
        t_end (float): Right end of the interval.
        method (str): 'closed_form', 'composition' (fundamental-solution
            formulas), 'direct' (integration of the system) or 'auto'.
        basis (CharacteristicBasis): Reused by 'composition' when given.

    """
    init = init if init is not None else RiccatiState.identity()
    _check_init(init)
    method = resolve_method(coeffs, method)
    match method:
        case "closed_form":
            trajectory = closed_form_trajectory(coeffs, init, t_end)
        case "composition":
            if basis is None:
                basis = closed_form_basis(coeffs) or solve_characteristic(
                    coeffs, t_end, rtol=rtol, atol=atol
                )
            fundamental = FundamentalSolution(coeffs, basis, t_end=t_end)
            trajectory = CompositionTrajectory(coeffs, init, fundamental)
        case _:
            trajectory = DirectTrajectory(coeffs, init, t_end)
    get_root_logger().debug(
        f"Riccati trajectory [{trajectory.kind}] of [{coeffs.name}] on [0, {t_end}]."
    )
    return trajectory


def general_solution(
    coeffs: CoefficientSet,
    init: RiccatiState | None,
    t,
    method: str = "auto",
    t_end: float | None = None,
) -> RiccatiState:
    """Evaluate the general solution of the Riccati-type system at t."""
    t_arr = np.asarray(t, dtype=float)
    if t_end is None:
        t_end = float(np.max(t_arr)) if np.max(t_arr) > 0 else 1.0
    return build_trajectory(coeffs, init, t_end=t_end, method=method)(t_arr)
