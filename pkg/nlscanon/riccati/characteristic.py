from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad, solve_ivp

from nlscanon.coeffs import CoefficientSet, eval_coeffs, tau_sigma
from nlscanon.utils import get_root_logger
from nlscanon.utils.errors import DomainError, IntegrationError, OutOfChartError
from nlscanon.utils.report import ResidualReport

DEFAULT_RTOL = 1e-10
DEFAULT_ATOL = 1e-12


@dataclass(frozen=True)
class CharacteristicBasis:
    """Standard solutions μ₀, μ₁ of μ'' − τμ' + 4σμ = 0 with
    μ₀(0)=0, μ₀'(0)=2a(0), μ₁(0)=1, μ₁'(0)=0.

    `evaluator` maps an array of times to a (4, ...) array holding
    μ₀, μ₀', μ₁, μ₁'.
    """

    coeffs: CoefficientSet
    t_span: tuple[float, float]
    evaluator: Callable[[np.ndarray], np.ndarray]
    rtol: float = DEFAULT_RTOL
    atol: float = DEFAULT_ATOL
    source: str = "numeric"

    @property
    def t_end(self) -> float:
        return self.t_span[1]

    def initial_state(self) -> np.ndarray:
        a0 = float(eval_coeffs(self.coeffs, 0.0).a)
        return np.array([0.0, 2 * a0, 1.0, 0.0])

    def states(self, t: float | np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.source == "numeric":
            lo, hi = self.t_span
            slack = 1e-12 * max(1.0, abs(hi))
            if np.any(t < lo - slack) or np.any(t > hi + slack):
                msg = f"time outside the characteristic basis span [{lo}, {hi}]"
                raise OutOfChartError(msg, t_min=float(np.min(t)), t_max=float(np.max(t)))
            flat = np.clip(t.ravel(), lo, hi)
            out = np.asarray(self.evaluator(flat)).reshape((4, *t.shape))
        else:
            out = np.asarray(self.evaluator(t)).reshape((4, *t.shape))
        # initial conditions hold exactly at t=0
        init = self.initial_state().reshape((4,) + (1,) * t.ndim)
        return np.where(t == 0, init, out)

    def mu0(self, t):
        return self.states(t)[0]

    def mu0_prime(self, t):
        return self.states(t)[1]

    def mu1(self, t):
        return self.states(t)[2]

    def mu1_prime(self, t):
        return self.states(t)[3]

    def wronskian(self, t):
        m0, dm0, m1, dm1 = self.states(t)
        return m0 * dm1 - m1 * dm0

    def sign_changes(
        self, which: str = "mu0", samples: int = 4097, t_end: float | None = None
    ) -> list[float]:
        """Approximate times where μ₀ (or μ₀') changes sign, located post hoc
        on a uniform sample grid; the origin is excluded.
        """
        row = {"mu0": 0, "mu0_prime": 1, "mu1": 2, "mu1_prime": 3}[which]
        hi = self.t_span[1] if t_end is None else t_end
        if not np.isfinite(hi):
            msg = "sign_changes needs a finite t_end on an unbounded basis"
            raise DomainError(msg, inequality="t_end < inf")
        ts = np.linspace(self.t_span[0], hi, samples)
        vals = self.states(ts)[row]
        ts, vals = ts[1:], vals[1:]
        flips = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) <= 0)[0]
        return [float(ts[i]) for i in flips]


def solve_characteristic(
    coeffs: CoefficientSet,
    t_end: float,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
) -> CharacteristicBasis:
    """Integrate both standard solutions with DOP853 and dense output.

    Raises
    ------
        IntegrationError: when the step size collapses, with the last time
            the integrator reached.

    """
    if t_end <= 0:
        msg = f"t_end must be positive, got {t_end}"
        raise DomainError(msg)
    if rtol <= 0 or atol <= 0:
        msg = f"tolerances must be positive, got rtol={rtol}, atol={atol}"
        raise DomainError(msg)

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        tau, sigma = tau_sigma(coeffs, t)
        tau, sigma = float(tau), float(sigma)
        return np.array([
            y[1],
            tau * y[1] - 4 * sigma * y[0],
            y[3],
            tau * y[3] - 4 * sigma * y[2],
        ])

    a0 = float(eval_coeffs(coeffs, 0.0).a)
    y0 = np.array([0.0, 2 * a0, 1.0, 0.0])
    sol = solve_ivp(
        rhs, (0.0, t_end), y0, method="DOP853", rtol=rtol, atol=atol, dense_output=True
    )
    if sol.status != 0:
        last = float(sol.t[-1])
        msg = f"characteristic equation of '{coeffs.name}' failed at t={last}: {sol.message}"
        raise IntegrationError(msg, t_last=last)

    logger = get_root_logger()
    logger.debug(
        f"Characteristic basis of [{coeffs.name}] on [0, {t_end}] "
        f"with {sol.t.size - 1} steps (rtol={rtol:.1e})."
    )
    return CharacteristicBasis(
        coeffs=coeffs,
        t_span=(0.0, float(t_end)),
        evaluator=sol.sol,
        rtol=rtol,
        atol=atol,
    )


def integral_of_tau(coeffs: CoefficientSet, t: float) -> float:
    value, _ = quad(lambda s: float(tau_sigma(coeffs, s)[0]), 0.0, t, epsabs=1e-13, limit=200)
    return value


def wronskian_check(basis: CharacteristicBasis, t_grid) -> ResidualReport:
    """Max relative deviation of W(t)·exp(−∫τ) from W(0) = −2a(0)."""
    t_grid = np.asarray(t_grid, dtype=float)
    w0 = -2 * float(eval_coeffs(basis.coeffs, 0.0).a)
    w = basis.wronskian(t_grid)
    scale = np.exp(-np.array([integral_of_tau(basis.coeffs, float(t)) for t in t_grid]))
    deviation = np.abs(w * scale - w0) / abs(w0)
    return ResidualReport.from_samples(
        deviation, np.zeros_like(t_grid), t_grid, method="analytic_derivatives"
    )
