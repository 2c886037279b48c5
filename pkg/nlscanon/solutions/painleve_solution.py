from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq
from scipy.special import airy, loggamma

from nlscanon.solutions.base import AutonomousSolution
from nlscanon.utils import get_root_logger
from nlscanon.utils.errors import DivergenceError, DomainError, OutOfChartError
from nlscanon.utils.registry import SOLUTION_REGISTRY

ZETA_START = 8.0
PII_RTOL = 1e-12
PII_ATOL = 1e-20
BLOWUP = 1e6
PHASE_RTOL = 0.05


def asymptotic_amplitude(k0: float) -> float:
    """r with r² = −ln(1 − k₀²)/π."""
    return float(np.sqrt(-np.log1p(-(k0**2)) / np.pi))


def asymptotic_phase(k0: float) -> float:
    """θ₀ = (3/2)r² ln 2 + arg Γ(1 − ir²/2) + (π/4)(1 − 2 sign k₀)."""
    r2 = asymptotic_amplitude(k0) ** 2
    return float(1.5 * r2 * np.log(2) + loggamma(1 - 0.5j * r2).imag + np.pi / 4 * (1 - 2 * np.sign(k0)))


def _check_k0(k0: float) -> None:
    if not 0 < abs(k0) < 1:
        msg = f"nonlinear Airy profile needs 0 < |k0| < 1, got k0={k0}"
        raise DomainError(msg, k0=k0, inequality="0 < |k0| < 1")


@dataclass(frozen=True)
class PainleveFit:
    amplitude: float
    phase: float
    expected_amplitude: float
    expected_phase: float
    window: tuple[float, float]
    extrema: int

    @property
    def amplitude_error(self) -> float:
        return abs(self.amplitude - self.expected_amplitude) / self.expected_amplitude

    @property
    def phase_discrepancy(self) -> float:
        """|θ̂₀ − θ₀| reduced modulo 2π."""
        return float(abs(np.angle(np.exp(1j * (self.phase - self.expected_phase)))))

    def to_dict(self) -> dict:
        return {
            "amplitude": self.amplitude,
            "expected_amplitude": self.expected_amplitude,
            "amplitude_error": self.amplitude_error,
            "phase": self.phase,
            "expected_phase": self.expected_phase,
            "phase_discrepancy": self.phase_discrepancy,
            "window": list(self.window),
            "extrema": self.extrema,
        }


class PainleveProfile:
    """Nonlinear Airy function A_k₀: the solution of u'' = ζu + 2u³ decaying
    like k₀Ai(ζ) as ζ → +∞.

    The equation is integrated from ζ_start down to ζ_end; above ζ_start the
    Airy tail k₀Ai(ζ) is used.
    """

    def __init__(
        self,
        k0: float,
        zeta_end: float = -60.0,
        zeta_start: float = ZETA_START,
        rtol: float = PII_RTOL,
        atol: float = PII_ATOL,
    ) -> None:
        _check_k0(k0)
        if zeta_start < ZETA_START:
            msg = f"integration must start at zeta >= {ZETA_START}, got {zeta_start}"
            raise DomainError(msg, inequality=f"zeta_start >= {ZETA_START}")
        if zeta_end >= zeta_start:
            msg = f"zeta_end={zeta_end} must lie below zeta_start={zeta_start}"
            raise DomainError(msg, inequality="zeta_end < zeta_start")
        self.k0 = float(k0)
        self.zeta_start = float(zeta_start)
        self.zeta_end = float(zeta_end)
        ai, aip, _, _ = airy(zeta_start)

        def rhs(z: float, y: np.ndarray) -> np.ndarray:
            return np.array([y[1], z * y[0] + 2 * y[0] ** 3])

        def blowup(z: float, y: np.ndarray) -> float:
            return BLOWUP - abs(y[0])

        blowup.terminal = True
        sol = solve_ivp(
            rhs, (zeta_start, zeta_end), [k0 * ai, k0 * aip], method="DOP853",
            rtol=rtol, atol=atol, dense_output=True, events=blowup,
        )
        if sol.status != 0:
            last = float(sol.t[-1])
            msg = f"Painleve II integration diverged near zeta={last}"
            raise DivergenceError(msg, zeta=last, k0=k0)
        self._dense = sol.sol
        get_root_logger().debug(
            f"Painleve II profile k0={k0} on [{zeta_end}, {zeta_start}] in {sol.nfev} evaluations."
        )

    def evaluate(self, zeta) -> tuple[np.ndarray, np.ndarray]:
        """A and A' at zeta."""
        shape = np.shape(zeta)
        flat = np.atleast_1d(np.asarray(zeta, dtype=float)).ravel()
        if np.any(flat < self.zeta_end):
            msg = f"zeta below the integrated range [{self.zeta_end}, {self.zeta_start}]"
            raise OutOfChartError(msg, zeta=float(np.min(flat)))
        inside = flat <= self.zeta_start
        u = np.empty(flat.shape)
        du = np.empty(flat.shape)
        if np.any(inside):
            vals = np.asarray(self._dense(flat[inside]))
            u[inside], du[inside] = vals[0], vals[1]
        if np.any(~inside):
            ai, aip, _, _ = airy(flat[~inside])
            u[~inside], du[~inside] = self.k0 * ai, self.k0 * aip
        return u.reshape(shape), du.reshape(shape)

    def __call__(self, zeta) -> np.ndarray:
        return self.evaluate(zeta)[0]

    def fit(self, window: tuple[float, float] | None = None, samples: int = 20001) -> PainleveFit:
        """Fit u ≈ r|ζ|^{−1/4} sin(s(ζ) − θ₀) with s = (2/3)|ζ|^{3/2} − (3/4)r² ln|ζ|
        to the extrema of the profile on the window.
        """
        if window is None:
            window = (self.zeta_end, self.zeta_end / 2)
        lo, hi = window
        if lo < self.zeta_end or hi > -1:
            msg = f"fit window {window} must lie in [{self.zeta_end}, -1]"
            raise DomainError(msg, inequality="zeta_end <= window <= -1")
        zs = np.linspace(lo, hi, samples)
        du = self.evaluate(zs)[1]
        flips = np.flatnonzero(np.sign(du[:-1]) * np.sign(du[1:]) < 0)
        if flips.size < 4:
            msg = f"only {flips.size} extrema in the fit window {window}"
            raise DomainError(msg, window=list(window))
        ext = np.array([
            brentq(lambda z: float(self.evaluate(z)[1]), zs[i], zs[i + 1], xtol=1e-13)
            for i in flips
        ])
        u_ext = self(ext)
        w = np.abs(ext) ** -0.25
        r = float(np.sum(np.abs(u_ext) * w) / np.sum(w**2))
        s = (2 / 3) * np.abs(ext) ** 1.5 - 0.75 * r**2 * np.log(np.abs(ext))
        theta = s - np.sign(u_ext) * np.pi / 2
        phase = float(np.angle(np.mean(np.exp(1j * theta))))
        result = PainleveFit(
            amplitude=r,
            phase=phase,
            expected_amplitude=asymptotic_amplitude(self.k0),
            expected_phase=asymptotic_phase(self.k0),
            window=(float(lo), float(hi)),
            extrema=int(ext.size),
        )
        if result.phase_discrepancy > PHASE_RTOL * abs(result.expected_phase):
            get_root_logger().warning(
                f"Painleve fit phase {phase:.5f} differs from the asymptotic "
                f"{result.expected_phase:.5f} by {result.phase_discrepancy:.3e} (mod 2pi)."
            )
        return result


@dataclass(frozen=True)
class PainleveSamples:
    zeta: np.ndarray
    values: np.ndarray
    derivative: np.ndarray
    fit: PainleveFit | None


def painleve_profile(
    k0: float,
    zeta_grid,
    window: tuple[float, float] | None = None,
    zeta_start: float = ZETA_START,
) -> PainleveSamples:
    """Samples of A_k₀ on the grid and, when the grid reaches far enough into
    the oscillatory region, the fitted asymptotic amplitude and phase.
    """
    zeta = np.asarray(zeta_grid, dtype=float)
    profile = PainleveProfile(k0, zeta_end=min(float(np.min(zeta)), -1.0), zeta_start=zeta_start)
    u, du = profile.evaluate(zeta)
    fit = None
    if window is not None or profile.zeta_end <= -20:
        fit = profile.fit(window)
    return PainleveSamples(zeta, u, du, fit)


def example3_coupling(alpha0: float, beta0: float, h0: float, mu0: float = 1.0):
    """H(t) = h₀μ₀β₀²/(1 + 4α₀t)."""

    def coupling(t):
        return h0 * mu0 * beta0**2 / (1 + 4 * alpha0 * np.asarray(t, dtype=float))

    return coupling


def example3_solution(
    alpha0: float,
    beta0: float,
    gamma0: float,
    g0: float,
    h0: float,
    k0: float,
    y: float = 0.0,
    mu0: float = 1.0,
    gauge: bool = False,
    zeta_end: float = -60.0,
) -> AutonomousSolution:
    """Soliton-like field built on the nonlinear Airy profile:

        χ = e^{iS} (μ₀u)^{−1/2} g₀^{1/3} (2/h₀)^{1/2} A_k₀(g₀^{1/3}z),  u = 1 + 4α₀t,
        z = [β₀x + 2(γ₀ − (β₀² − 4α₀γ₀)t)y]/u,
        S = [α₀x² + β₀xy + (γ₀ − (β₀² − 4α₀γ₀)t)y²]/u + yE(t),
        E = g₀β₀²t(2γ₀ − (β₀² − 8α₀γ₀)t)/u².

    It solves iχ_t + χ_xx − g₀β₀³x/u³ χ = h₀μ₀β₀²/u |χ|²χ (the example3
    preset with `example3_coupling`). With `gauge` the phase yE(t) is
    removed, giving the form whose potential is g₀β₀²z/u².
    """
    if h0 <= 0:
        msg = f"the Airy soliton needs h0 > 0, got {h0}"
        raise DomainError(msg, inequality="h0 > 0")
    if mu0 <= 0:
        msg = f"the Airy soliton needs mu0 > 0, got {mu0}"
        raise DomainError(msg, inequality="mu0 > 0")
    profile = PainleveProfile(k0, zeta_end=zeta_end)
    g3 = float(np.cbrt(g0))
    amp = g3 * np.sqrt(2 / h0)

    def value(x, t):
        u = 1 + 4 * alpha0 * t
        if np.any(u <= 0):
            msg = "the Airy soliton needs 1 + 4*alpha0*t > 0"
            raise DomainError(msg, inequality="1 + 4*alpha0*t > 0")
        shift = gamma0 - (beta0**2 - 4 * alpha0 * gamma0) * t
        z = (beta0 * x + 2 * shift * y) / u
        s = (alpha0 * x**2 + beta0 * x * y + shift * y**2) / u
        if not gauge:
            s = s + y * g0 * beta0**2 * t * (2 * gamma0 - (beta0**2 - 8 * alpha0 * gamma0) * t) / u**2
        return np.exp(1j * s) / np.sqrt(mu0 * u) * amp * profile(g3 * z)

    params = {
        "alpha0": alpha0, "beta0": beta0, "gamma0": gamma0, "g0": g0,
        "h0": h0, "k0": k0, "y": y, "mu0": mu0,
    }
    return AutonomousSolution(
        value, label="painleve2", meta={"gauge": gauge},
        family="painleve2", params=params, form="nonautonomous", profile=profile,
    )


SOLUTION_REGISTRY.register(example3_solution, name="painleve2")
