"""Exact characteristic bases and general Riccati solutions of the presets."""

import numpy as np

from nlscanon.coeffs import CoefficientSet
from nlscanon.riccati.characteristic import CharacteristicBasis
from nlscanon.riccati.state import RiccatiState, Trajectory
from nlscanon.utils.errors import ConfigError, FocalPointError

FOCAL_TOL = 1e-12


def _plasma_k(coeffs: CoefficientSet) -> float:
    return coeffs.params.get("k", 0.0) if coeffs.name == "plasma" else 0.0


def _linear_basis(t):
    t = np.asarray(t, dtype=float)
    return np.stack([2 * t, np.full(t.shape, 2.0), np.ones(t.shape), np.zeros(t.shape)])


def closed_form_basis(coeffs: CoefficientSet) -> CharacteristicBasis | None:
    """Standard solutions μ₀, μ₁ in closed form, or None for sets without one."""
    match coeffs.name:
        case "free_particle" | "plasma" | "example3":
            evaluator = _linear_basis
        case "harmonic":
            w = coeffs.params["omega"]

            def evaluator(t):
                t = np.asarray(t, dtype=float)
                s, c = np.sin(w * t), np.cos(w * t)
                return np.stack([2 * s / w, 2 * c, c, -w * s])

        case "exponential":
            k = coeffs.params["k"]

            def evaluator(t):
                t = np.asarray(t, dtype=float)
                e = np.exp(-4 * k * t)
                return np.stack([(1 - e) / (2 * k), 2 * e, np.ones(t.shape), np.zeros(t.shape)])

        case _:
            return None
    return CharacteristicBasis(
        coeffs=coeffs, t_span=(0.0, np.inf), evaluator=evaluator, source="closed_form"
    )


def _refuse_focal(denominator, t, what: str) -> None:
    bad = np.abs(denominator) < FOCAL_TOL
    if np.any(bad):
        t_bad = float(np.broadcast_to(t, np.shape(bad))[bad].flat[0])
        msg = f"focal point of the {what} trajectory at t={t_bad}"
        raise FocalPointError(msg, t=t_bad)


class HarmonicTrajectory(Trajectory):
    """b = ω²/4: with D = 4α(0) sin ωt + ω cos ωt

        μ = μ(0)D/ω,  α = (ω/4)(4α(0) cos ωt − ω sin ωt)/D,  β = ωβ(0)/D,
        γ = γ(0) − β(0)² sin ωt/D,  δ = ωδ(0)/D,
        ε = ε(0) − 2β(0)δ(0) sin ωt/D,  κ = κ(0) − δ(0)² sin ωt/D.
    """

    kind = "closed_form"

    def state(self, t) -> RiccatiState:
        t = self.check_span(t)
        w = self.coeffs.params["omega"]
        i = self.init
        s, c = np.sin(w * t), np.cos(w * t)
        den = 4 * i.alpha * s + w * c
        _refuse_focal(den / w, t, "harmonic")
        return RiccatiState(
            t,
            i.mu * den / w,
            (w / 4) * (4 * i.alpha * c - w * s) / den,
            w * i.beta / den,
            i.gamma - i.beta**2 * s / den,
            w * i.delta / den,
            i.epsilon - 2 * i.beta * i.delta * s / den,
            i.kappa - i.delta**2 * s / den,
        )


class ExponentialTrajectory(Trajectory):
    """b = −k², d = −k: μ = μ(0)[k + 2α(0) + (k − 2α(0))e^{−4kt}]/(2k),
    α = μ'/(4μ) + k/2, β = β(0)μ(0)e^{−2kt}/μ and, with
    q = tanh 2kt/(4α(0) tanh 2kt + 2k), γ = γ(0) − β(0)²q,
    δ = δ(0)β/β(0), ε = ε(0) − 2β(0)δ(0)q, κ = κ(0) − δ(0)²q.
    """

    kind = "closed_form"

    def state(self, t) -> RiccatiState:
        t = self.check_span(t)
        k = self.coeffs.params["k"]
        i = self.init
        e = np.exp(-4 * k * t)
        mu = i.mu * (k + 2 * i.alpha + (k - 2 * i.alpha) * e) / (2 * k)
        _refuse_focal(mu / i.mu, t, "exponential")
        dmu = -2 * i.mu * (k - 2 * i.alpha) * e
        th = np.tanh(2 * k * t)
        den = 4 * i.alpha * th + 2 * k
        _refuse_focal(den, t, "exponential")
        q = th / den
        beta = i.beta * i.mu * np.exp(-2 * k * t) / mu
        return RiccatiState(
            t,
            mu,
            dmu / (4 * mu) + k / 2,
            beta,
            i.gamma - i.beta**2 * q,
            i.delta * beta / i.beta,
            i.epsilon - 2 * i.beta * i.delta * q,
            i.kappa - i.delta**2 * q,
        )


class PlasmaTrajectory(Trajectory):
    """f = 2k (k = 0 is the free particle): with u = 1 + 4α(0)t

        μ = μ(0)u,  α = α(0)/u,  β = β(0)/u,  γ = γ(0) − β(0)²t/u,
        δ = kt + (δ(0) + kt)/u,  ε = ε(0) − 2β(0)t(δ(0) + kt)/u,
        κ = κ(0) − k²t³/3 − t(δ(0) + kt)²/u.
    """

    kind = "closed_form"

    def state(self, t) -> RiccatiState:
        t = self.check_span(t)
        k = _plasma_k(self.coeffs)
        i = self.init
        u = 1 + 4 * i.alpha * t
        _refuse_focal(u, t, self.coeffs.name)
        shift = i.delta + k * t
        return RiccatiState(
            t,
            i.mu * u,
            i.alpha / u,
            i.beta / u,
            i.gamma - i.beta**2 * t / u,
            k * t + shift / u,
            i.epsilon - 2 * i.beta * t * shift / u,
            i.kappa - k**2 * t**3 / 3 - t * shift**2 / u,
        )


_CLOSED_FORMS: dict[str, type[Trajectory]] = {
    "free_particle": PlasmaTrajectory,
    "plasma": PlasmaTrajectory,
    "harmonic": HarmonicTrajectory,
    "exponential": ExponentialTrajectory,
}


def has_closed_form(coeffs: CoefficientSet) -> bool:
    return coeffs.name in _CLOSED_FORMS


def closed_form_trajectory(
    coeffs: CoefficientSet, init: RiccatiState, t_end: float = np.inf
) -> Trajectory:
    try:
        cls = _CLOSED_FORMS[coeffs.name]
    except KeyError:
        msg = f"no closed-form Riccati solution for '{coeffs.name}'"
        raise ConfigError(msg, preset=coeffs.name)
    return cls(coeffs, init, (0.0, t_end))
