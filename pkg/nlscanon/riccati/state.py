from dataclasses import dataclass, fields
from typing import Any

import numpy as np
from scipy.optimize import brentq

from nlscanon.coeffs import CoefficientSet, eval_coeffs
from nlscanon.utils.errors import ConfigError, DomainError, OutOfChartError

STATE_NAMES = ("mu", "alpha", "beta", "gamma", "delta", "epsilon", "kappa")


@dataclass(frozen=True)
class RiccatiState:
    """The seven transformation functions at one time (or a vector of times)."""

    t: Any
    mu: Any
    alpha: Any
    beta: Any
    gamma: Any
    delta: Any
    epsilon: Any
    kappa: Any

    @classmethod
    def identity(cls) -> "RiccatiState":
        return cls(0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0)

    @classmethod
    def from_sequence(cls, values, t: float = 0.0) -> "RiccatiState":
        values = [float(v) for v in values]
        if len(values) != len(STATE_NAMES):
            msg = f"initial state needs {len(STATE_NAMES)} values ({','.join(STATE_NAMES)}), got {len(values)}"
            raise ConfigError(msg)
        return cls(t, *values)

    def as_array(self) -> np.ndarray:
        return np.stack([np.asarray(getattr(self, k), dtype=float) for k in STATE_NAMES])

    @classmethod
    def from_array(cls, t, arr: np.ndarray) -> "RiccatiState":
        return cls(t, *arr)

    def map(self, func) -> "RiccatiState":
        return RiccatiState(self.t, *(func(getattr(self, k)) for k in STATE_NAMES))

    def to_dict(self) -> dict[str, Any]:
        out = {}
        for f in fields(self):
            v = np.asarray(getattr(self, f.name))
            out[f.name] = float(v) if v.ndim == 0 else v.tolist()
        return out


def riccati_rate(coeffs: CoefficientSet, state: RiccatiState) -> RiccatiState:
    """Right-hand side of the Riccati-type system at `state`.

        μ' = (4aα + 2d)μ          α' = −b − 2cα − 4aα²
        β' = −(c + 4aα)β          γ' = −aβ²
        δ' = −(c + 4aα)δ + f + 2gα
        ε' = (g − 2aδ)β           κ' = gδ − aδ²
    """
    v = eval_coeffs(coeffs, state.t)
    a, b, c, d, f, g = v.a, v.b, v.c, v.d, v.f, v.g
    mu, al, be, de = state.mu, state.alpha, state.beta, state.delta
    drift = c + 4 * a * al
    return RiccatiState(
        state.t,
        (4 * a * al + 2 * d) * mu,
        -b - 2 * c * al - 4 * a * al**2,
        -drift * be,
        -a * be**2,
        -drift * de + f + 2 * g * al,
        (g - 2 * a * de) * be,
        g * de - a * de**2,
    )


class Trajectory:
    """A solution of the Riccati-type system as a function of time.

    Subclasses implement `state`; `rate` evaluates the system's right-hand
    side on that state, which equals the time derivative for an exact
    trajectory.
    """

    kind = "abstract"

    def __init__(self, coeffs: CoefficientSet, init: RiccatiState, t_span=(0.0, np.inf)) -> None:
        self.coeffs = coeffs
        self.init = init
        self.t_span = (float(t_span[0]), float(t_span[1]))

    def state(self, t) -> RiccatiState:
        raise NotImplementedError

    def __call__(self, t) -> RiccatiState:
        return self.state(t)

    def rate(self, t) -> RiccatiState:
        return riccati_rate(self.coeffs, self.state(t))

    def check_span(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        lo, hi = self.t_span
        slack = 1e-12 * max(1.0, abs(hi)) if np.isfinite(hi) else 0.0
        if np.any(t < lo - slack) or np.any(t > hi + slack):
            msg = f"time outside the trajectory interval [{lo}, {hi}]"
            raise OutOfChartError(msg, t_min=float(np.min(t)), t_max=float(np.max(t)))
        return t

    def inverse_time(self, tau: float, t_max: float | None = None, samples: int = 512) -> float:
        """Solve γ(t) = τ on the trajectory interval; γ is monotone while aβ²
        keeps its sign.
        """
        hi = t_max if t_max is not None else self.t_span[1]
        if not np.isfinite(hi):
            msg = "inverse_time needs a finite upper time"
            raise DomainError(msg, inequality="t_max < inf")
        ts = np.linspace(self.t_span[0], hi, samples)
        gam = np.asarray(self.state(ts).gamma, dtype=float) - tau
        if np.any(gam == 0):
            return float(ts[np.flatnonzero(gam == 0)[0]])
        flips = np.flatnonzero(np.sign(gam[:-1]) != np.sign(gam[1:]))
        if flips.size == 0:
            msg = f"tau={tau} is outside the range of gamma on [{self.t_span[0]}, {hi}]"
            raise OutOfChartError(msg, tau=tau)
        i = int(flips[0])
        return float(
            brentq(
                lambda s: float(self.state(s).gamma) - tau,
                ts[i], ts[i + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps,
            )
        )
