from dataclasses import dataclass

import numpy as np

from nlscanon.coeffs import CoefficientSet, eval_coeffs
from nlscanon.riccati import RiccatiState, Trajectory, build_trajectory, lambda_factor
from nlscanon.transform.field import ComplexField
from nlscanon.utils.errors import ConfigError, NormalizationError

NORMALIZATIONS = ("plain", "scaled")
SQRT2 = np.sqrt(2.0)


def branch_of(h0: float) -> str:
    """Branch of the standard form iΨ_T + Ψ_XX ± 2|Ψ|²Ψ = 0 reached from h0."""
    return "focusing" if h0 < 0 else "defocusing"


@dataclass(frozen=True)
class TransformFrame:
    """Gauge, scaling and change of variables

        ψ(x, t) = μ^{−1/2} e^{i(αx² + δx + κ)} χ(βx + ε, γ)

    taking solutions of iχ_τ + h₀|χ|²χ = χ_ξξ to the nonautonomous
    equation with coupling h = h₀aβ²μ. With the 'scaled' normalization the
    autonomous field is given in standard form Ψ(X, T) and

        ψ = |h₀μ|^{−1/2} e^{iS} Ψ((βx + ε)/√2, −γ/2).
    """

    trajectory: Trajectory
    h0: float
    normalization: str = "plain"
    t_max: float | None = None

    def __post_init__(self) -> None:
        if self.normalization not in NORMALIZATIONS:
            msg = f"unknown normalization '{self.normalization}', expected one of {NORMALIZATIONS}"
            raise ConfigError(msg)
        if self.normalization == "scaled" and self.h0 == 0:
            msg = "scaled normalization needs h0 != 0"
            raise NormalizationError(msg, inequality="h0 != 0")

    @property
    def coeffs(self) -> CoefficientSet:
        return self.trajectory.coeffs

    @property
    def init(self) -> RiccatiState:
        return self.trajectory.init

    @property
    def branch(self) -> str:
        return branch_of(self.h0)

    def state(self, t) -> RiccatiState:
        """Trajectory values at t of any shape, one evaluation per distinct time."""
        t = np.asarray(t, dtype=float)
        uniq, inverse = np.unique(t, return_inverse=True)
        s = self.trajectory(uniq)
        return RiccatiState.from_array(t, s.as_array()[:, inverse.reshape(t.shape)])

    def rate(self, t) -> RiccatiState:
        t = np.asarray(t, dtype=float)
        uniq, inverse = np.unique(t, return_inverse=True)
        s = self.trajectory.rate(uniq)
        return RiccatiState.from_array(t, s.as_array()[:, inverse.reshape(t.shape)])

    def inverse_time(self, tau: float) -> float:
        return self.trajectory.inverse_time(tau, t_max=self.t_max)


def build_frame(
    coeffs: CoefficientSet,
    init: RiccatiState | None = None,
    h0: float | None = None,
    normalization: str = "plain",
    t_end: float = 1.0,
    method: str = "auto",
) -> TransformFrame:
    """Frame over [0, t_end]; h0 defaults to the coefficient set's own."""
    trajectory = build_trajectory(coeffs, init, t_end=t_end, method=method)
    h0 = coeffs.h0 if h0 is None else float(h0)
    return TransformFrame(trajectory, h0, normalization, t_max=t_end)


def integrability_coupling(frame: TransformFrame, t) -> np.ndarray:
    """h(t) = h₀aβ²μ."""
    s = frame.state(t)
    a = eval_coeffs(frame.coeffs, s.t).a
    return frame.h0 * a * s.beta**2 * s.mu


def coupling_from_kernel(frame: TransformFrame, t) -> np.ndarray:
    """h(t) = h₀β(0)²μ(0)²aλ²/μ."""
    s = frame.state(t)
    i = frame.init
    a = eval_coeffs(frame.coeffs, s.t).a
    lam = lambda_factor(frame.coeffs, s.t)
    return frame.h0 * i.beta**2 * i.mu**2 * a * lam**2 / s.mu


def to_standard(chi: ComplexField, h0: float) -> ComplexField:
    """Ψ(X, T) = √|h₀| χ(√2X, −2T)."""
    if h0 == 0:
        msg = "standard form needs h0 != 0"
        raise NormalizationError(msg, inequality="h0 != 0")
    r = np.sqrt(abs(h0))

    def value(x, t):
        return r * chi(SQRT2 * x, -2 * t)

    def part(name, factor):
        if getattr(chi, name) is None:
            return None
        return lambda x, t: factor * chi.derivative(name, SQRT2 * x, -2 * t)

    return ComplexField(
        value, part("dx", r * SQRT2), part("dxx", 2 * r), part("dt", -2 * r),
        label=f"standard({chi.label})", meta={**chi.meta, "branch": branch_of(h0)},
    )


def from_standard(psi: ComplexField, h0: float) -> ComplexField:
    """χ(ξ, τ) = Ψ(ξ/√2, −τ/2)/√|h₀|, the inverse of `to_standard`."""
    if h0 == 0:
        msg = "standard form needs h0 != 0"
        raise NormalizationError(msg, inequality="h0 != 0")
    r = 1 / np.sqrt(abs(h0))

    def value(x, t):
        return r * psi(x / SQRT2, -t / 2)

    def part(name, factor):
        if getattr(psi, name) is None:
            return None
        return lambda x, t: factor * psi.derivative(name, x / SQRT2, -t / 2)

    return ComplexField(
        value, part("dx", r / SQRT2), part("dxx", r / 2), part("dt", -r / 2),
        label=f"autonomous({psi.label})", meta=dict(psi.meta),
    )


def _check_normalization(frame: TransformFrame, s: RiccatiState) -> None:
    if frame.normalization != "scaled":
        return
    bad = np.asarray(s.mu) <= 0
    if np.any(bad):
        t_bad = float(np.broadcast_to(s.t, bad.shape)[bad].flat[0])
        msg = f"scaled normalization needs mu > 0, mu vanishes or changes sign at t={t_bad}"
        raise NormalizationError(msg, t=t_bad, inequality="mu > 0")


def lift_solution(chi: ComplexField, frame: TransformFrame) -> ComplexField:
    """Lift an autonomous solution to the frame's nonautonomous equation.

    Derivatives of the lifted field follow from the chain rule through the
    trajectory and its rates, so they exist whenever `chi` has them.
    """
    if frame.normalization == "scaled":
        chi = from_standard(chi, frame.h0)

    def geometry(x, t):
        x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
        s = frame.state(t)
        _check_normalization(frame, s)
        phase = s.alpha * x**2 + s.delta * x + s.kappa
        pre = np.power(s.mu + 0j, -0.5) * np.exp(1j * phase)
        return x, t, s, pre, s.beta * x + s.epsilon, s.gamma

    def value(x, t):
        _, _, _, pre, xi, tau = geometry(x, t)
        return pre * chi(xi, tau)

    def dx(x, t):
        x, _, s, pre, xi, tau = geometry(x, t)
        grad = 2 * s.alpha * x + s.delta
        return pre * (1j * grad * chi(xi, tau) + s.beta * chi.derivative("dx", xi, tau))

    def dxx(x, t):
        x, _, s, pre, xi, tau = geometry(x, t)
        grad = 2 * s.alpha * x + s.delta
        return pre * (
            (2j * s.alpha - grad**2) * chi(xi, tau)
            + 2j * grad * s.beta * chi.derivative("dx", xi, tau)
            + s.beta**2 * chi.derivative("dxx", xi, tau)
        )

    def dt(x, t):
        x, t, s, pre, xi, tau = geometry(x, t)
        r = frame.rate(t)
        growth = -r.mu / (2 * s.mu) + 1j * (r.alpha * x**2 + r.delta * x + r.kappa)
        return pre * (
            growth * chi(xi, tau)
            + (r.beta * x + r.epsilon) * chi.derivative("dx", xi, tau)
            + r.gamma * chi.derivative("dt", xi, tau)
        )

    has_dx = chi.dx is not None
    return ComplexField(
        value,
        dx if has_dx else None,
        dxx if has_dx and chi.dxx is not None else None,
        dt if has_dx and chi.dt is not None else None,
        label=f"lift({chi.label})",
        meta={**chi.meta, "frame": frame.coeffs.name, "normalization": frame.normalization},
    )


def pull_back(psi: ComplexField, frame: TransformFrame) -> ComplexField:
    """χ(ξ, τ) = √μ e^{−iS} ψ((ξ − ε)/β, t(τ)) with t(τ) the inverse of γ.

    Under the 'scaled' normalization the result is returned in standard form.
    """

    def value(xi, tau):
        xi, tau = np.broadcast_arrays(np.asarray(xi, dtype=float), np.asarray(tau, dtype=float))
        uniq, inverse = np.unique(tau, return_inverse=True)
        times = np.array([frame.inverse_time(float(v)) for v in uniq])[inverse.reshape(tau.shape)]
        s = frame.state(times)
        _check_normalization(frame, s)
        x = (xi - s.epsilon) / s.beta
        phase = s.alpha * x**2 + s.delta * x + s.kappa
        return np.sqrt(s.mu + 0j) * np.exp(-1j * phase) * psi(x, times)

    chi = ComplexField(value, label=f"pull_back({psi.label})", meta=dict(psi.meta))
    if frame.normalization == "scaled":
        return to_standard(chi, frame.h0)
    return chi
