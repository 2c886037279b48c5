from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.optimize import brentq

from nlscanon.coeffs import CoefficientSet, eval_coeffs, tau_sigma
from nlscanon.riccati.characteristic import CharacteristicBasis
from nlscanon.utils import get_root_logger
from nlscanon.utils.errors import DomainError, IntegrationError, SingularQuadratureError

T_MIN = 1e-3
# tolerances of the cumulative quadratures; atol stays tiny so that the
# ratios λI₁/μ₀ keep their relative accuracy close to t = 0
QUAD_RTOL = 1e-12
QUAD_ATOL = 1e-20


def lambda_factor(coeffs: CoefficientSet, t) -> np.ndarray:
    """λ(t) = exp(−∫₀ᵗ (c − 2d) ds) by adaptive quadrature (epsabs 1e-12)."""
    t_arr = np.asarray(t, dtype=float)
    if coeffs.c.is_zero and coeffs.d.is_zero:
        return np.ones(t_arr.shape)

    def integrand(s: float) -> float:
        v = eval_coeffs(coeffs, s)
        return float(v.c - 2 * v.d)

    out = np.empty(t_arr.shape)
    for idx, ti in np.ndenumerate(t_arr):
        result = quad(integrand, 0.0, float(ti), epsabs=1e-12, limit=200, full_output=1)
        if len(result) > 3:
            info = result[2]
            last = int(info.get("last", 0))
            trace = list(zip(info["alist"][:last], info["blist"][:last], strict=True))[-8:]
            msg = f"quadrature of c - 2d on [0, {float(ti)}] failed: {result[3]}"
            raise IntegrationError(msg, t=float(ti), intervals=[list(map(float, p)) for p in trace])
        out[idx] = np.exp(-result[0])
    return out


@dataclass(frozen=True)
class FundamentalValues:
    t: np.ndarray
    alpha0: np.ndarray
    beta0: np.ndarray
    gamma0: np.ndarray
    delta0: np.ndarray
    epsilon0: np.ndarray
    kappa0: np.ndarray
    lam: np.ndarray
    mu0: np.ndarray


@dataclass(frozen=True)
class RegularParts:
    """Ingredients of the fundamental solution that stay finite at t = 0:
    the basis, λ, λI₁ = μ₀δ₀, δ₀, ε₀, κ₀ and the coefficients a, d.
    """

    t: np.ndarray
    mu0: np.ndarray
    dmu0: np.ndarray
    mu1: np.ndarray
    dmu1: np.ndarray
    lam: np.ndarray
    mu0_delta0: np.ndarray
    delta0: np.ndarray
    epsilon0: np.ndarray
    kappa0: np.ndarray
    a: np.ndarray
    d: np.ndarray


class FundamentalSolution:
    """Fundamental solution α₀ … κ₀ of the Riccati-type system built on a
    characteristic basis:

        α₀ = μ₀'/(4aμ₀) − d/(2a),  β₀ = −λ/μ₀,  γ₀ = μ₁/(2μ₀) + d(0)/(2a(0)),
        δ₀ = λI₁/μ₀,  I₁' = [(f − dg/a)μ₀ + gμ₀'/(2a)]/λ,
        ε₀ = −2aλδ₀/μ₀' + I₂,  κ₀ = aμ₀δ₀²/μ₀' + I₃.

    I₂ and I₃ have μ₀'² in their denominators; they are integrated up to the
    first zero of μ₀' and evaluation beyond it raises SingularQuadratureError.
    """

    def __init__(
        self,
        coeffs: CoefficientSet,
        basis: CharacteristicBasis,
        t_min: float = T_MIN,
        t_end: float | None = None,
    ) -> None:
        self.coeffs = coeffs
        self.basis = basis
        self.t_min = t_min
        v0 = eval_coeffs(coeffs, 0.0)
        self.a0, self.c0, self.d0, self.g0 = float(v0.a), float(v0.c), float(v0.d), float(v0.g)
        self.da0 = float(v0.da)
        if t_end is None and np.isfinite(basis.t_end):
            t_end = basis.t_end
        self.t_end = None if t_end is None else float(t_end)
        self.trivial_lambda = coeffs.c.is_zero and coeffs.d.is_zero
        self.trivial_drive = coeffs.f.is_zero and coeffs.g.is_zero
        self.t_singular = np.inf
        self._first = None
        self._second = None
        if not self.trivial_drive or not self.trivial_lambda:
            self._integrate()

    def _horizon(self) -> float:
        if self.t_end is not None:
            return self.t_end
        msg = "an unbounded closed-form basis needs explicit t_end for the quadratures"
        raise DomainError(msg, inequality="t_end < inf")

    def _integrate(self) -> None:
        coeffs, basis = self.coeffs, self.basis
        t_end = self._horizon()

        def first(t: float, y: np.ndarray) -> np.ndarray:
            v = eval_coeffs(coeffs, t)
            mu0, dmu0 = basis.states(t)[:2]
            lam = np.exp(y[0])
            drive = (v.f - v.d * v.g / v.a) * mu0 + v.g * dmu0 / (2 * v.a)
            return np.array([-(float(v.c) - 2 * float(v.d)), float(drive / lam)])

        sol = solve_ivp(
            first, (0.0, t_end), [0.0, 0.0], method="DOP853",
            rtol=QUAD_RTOL, atol=QUAD_ATOL, dense_output=True,
        )
        if sol.status != 0:
            msg = f"cumulative quadrature of λ, I1 failed at t={sol.t[-1]}: {sol.message}"
            raise IntegrationError(msg, t_last=float(sol.t[-1]))
        self._first = sol.sol

        if self.trivial_drive:
            return
        zeros = basis.sign_changes("mu0_prime", t_end=t_end)
        t_stop = t_end
        if zeros:
            ts = np.linspace(0.0, t_end, 4097)
            i = int(np.searchsorted(ts, zeros[0]))
            self.t_singular = float(
                brentq(lambda s: float(basis.mu0_prime(s)), ts[i - 1], ts[i], xtol=1e-14)
            )
            t_stop = self.t_singular * (1 - 1e-6)
            get_root_logger().warning(
                f"mu0' vanishes at t={self.t_singular:.6g}; epsilon0 and kappa0 "
                "are only available before that time."
            )

        def second(t: float, y: np.ndarray) -> np.ndarray:
            v = eval_coeffs(coeffs, t)
            _, sigma = tau_sigma(coeffs, t)
            dmu0 = basis.states(t)[1]
            lnlam, i1 = self._first(t)
            lam = np.exp(lnlam)
            p = v.f - v.d * v.g / v.a
            m = lam * i1
            return np.array([
                float(8 * v.a * sigma * lam * m / dmu0**2 + 2 * v.a * lam * p / dmu0),
                float(-4 * v.a * sigma * m**2 / dmu0**2 - 2 * v.a * m * p / dmu0),
            ])

        sol = solve_ivp(
            second, (0.0, t_stop), [0.0, 0.0], method="DOP853",
            rtol=QUAD_RTOL, atol=QUAD_ATOL, dense_output=True,
        )
        if sol.status != 0:
            msg = f"cumulative quadrature of I2, I3 failed at t={sol.t[-1]}: {sol.message}"
            raise IntegrationError(msg, t_last=float(sol.t[-1]))
        self._second = (sol.sol, t_stop)

    def _cumulative(self, t: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """λ, I₁, I₂, I₃ at t."""
        zero = np.zeros(t.shape)
        if self._first is None:
            lam, i1 = np.ones(t.shape), zero
        else:
            lnlam, i1 = np.asarray(self._first(t.ravel())).reshape((2, *t.shape))
            lam = np.ones(t.shape) if self.trivial_lambda else np.exp(lnlam)
        if self.trivial_drive:
            return lam, zero, zero, zero
        dense, t_stop = self._second
        if np.any(t > t_stop):
            t_bad = float(np.max(t))
            msg = (
                f"epsilon0/kappa0 quadrature crosses the zero of mu0' at t={self.t_singular:.6g} "
                f"(requested t={t_bad}); use direct integration of the Riccati system instead"
            )
            raise SingularQuadratureError(msg, t=t_bad, t_singular=self.t_singular)
        i2, i3 = np.asarray(dense(t.ravel())).reshape((2, *t.shape))
        return lam, i1, i2, i3

    def regular(self, t) -> RegularParts:
        t = np.asarray(t, dtype=float)
        mu0, dmu0, mu1, dmu1 = self.basis.states(t)
        lam, i1, i2, i3 = self._cumulative(t)
        v = eval_coeffs(self.coeffs, t)
        m = lam * i1
        limit = self.g0 / (2 * self.a0)
        with np.errstate(divide="ignore", invalid="ignore"):
            delta0 = np.where(t > 1e-10, m / np.where(mu0 == 0, 1.0, mu0), limit)
            epsilon0 = -2 * v.a * lam * delta0 / dmu0 + i2
            kappa0 = v.a * m * delta0 / dmu0 + i3
        return RegularParts(t, mu0, dmu0, mu1, dmu1, lam, m, delta0, epsilon0, kappa0, v.a, v.d)

    def asymptotic(self, t) -> FundamentalValues:
        """Small-time expansion of the fundamental solution."""
        t = np.asarray(t, dtype=float)
        a0, c0, da0, g0 = self.a0, self.c0, self.da0, self.g0
        base = 1 / (4 * a0 * t)
        shift = da0 / (8 * a0**2)
        return FundamentalValues(
            t=t,
            alpha0=base - c0 / (4 * a0) - shift,
            beta0=-2 * base + 2 * shift,
            gamma0=base + c0 / (4 * a0) - shift,
            delta0=np.full(t.shape, g0 / (2 * a0)),
            epsilon0=np.full(t.shape, -g0 / (2 * a0)),
            kappa0=np.zeros(t.shape),
            lam=np.ones(t.shape),
            mu0=2 * a0 * t,
        )

    def values(self, t) -> FundamentalValues:
        """α₀ … κ₀ and λ at t > 0; the small-time expansion is used for t ≤ t_min."""
        t = np.asarray(t, dtype=float)
        if np.any(t <= 0):
            msg = "the fundamental solution is singular at t <= 0"
            raise DomainError(msg, inequality="t > 0")
        r = self.regular(np.maximum(t, self.t_min))
        exact = FundamentalValues(
            t=t,
            alpha0=r.dmu0 / (4 * r.a * r.mu0) - r.d / (2 * r.a),
            beta0=-r.lam / r.mu0,
            gamma0=r.mu1 / (2 * r.mu0) + self.d0 / (2 * self.a0),
            delta0=r.delta0,
            epsilon0=r.epsilon0,
            kappa0=r.kappa0,
            lam=r.lam,
            mu0=r.mu0,
        )
        if np.all(t > self.t_min):
            return exact
        small = self.asymptotic(t)
        near = t <= self.t_min
        return FundamentalValues(
            t=t,
            **{
                name: np.where(near, getattr(small, name), getattr(exact, name))
                for name in ("alpha0", "beta0", "gamma0", "delta0", "epsilon0", "kappa0", "lam", "mu0")
            },
        )

    def __call__(self, t) -> FundamentalValues:
        return self.values(t)


def fundamental_solution(
    coeffs: CoefficientSet, basis: CharacteristicBasis, t, t_min: float = T_MIN
) -> FundamentalValues:
    t_end = float(np.max(t)) if not np.isfinite(basis.t_end) else None
    return FundamentalSolution(coeffs, basis, t_min=t_min, t_end=t_end).values(t)
