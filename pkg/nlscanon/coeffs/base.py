from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from nlscanon.utils.errors import EvaluationError, SingularCoefficientError

ArrayLike = float | np.ndarray
TimeFunc = Callable[[np.ndarray], np.ndarray]

COEFF_NAMES = ("a", "b", "c", "d", "f", "g")
# step of the central-difference fallback for coefficients without derivative
FALLBACK_STEP = 1e-6


@dataclass(frozen=True)
class Coefficient:
    """A real function of time together with its first derivative.

    `derivative` may be omitted for user supplied coefficients, in which case a
    central difference with step 1e-6 is used (accuracy ~1e-10 relative).
    """

    value: TimeFunc
    derivative: TimeFunc | None = None
    label: str = ""
    # set only when the function is known to vanish identically
    zero: bool = False

    @classmethod
    def constant(cls, c: float) -> "Coefficient":
        c = float(c)
        return cls(
            lambda t: np.full(np.shape(t), c),
            lambda t: np.zeros(np.shape(t)),
            label=repr(c),
            zero=(c == 0),
        )

    @property
    def is_zero(self) -> bool:
        return self.zero

    def __call__(self, t: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
        t = np.asarray(t, dtype=float)
        val = np.asarray(self.value(t), dtype=float) + np.zeros(t.shape)
        if self.derivative is not None:
            der = np.asarray(self.derivative(t), dtype=float) + np.zeros(t.shape)
        else:
            h = FALLBACK_STEP
            der = (np.asarray(self.value(t + h)) - np.asarray(self.value(t - h))) / (2 * h)
            der = der + np.zeros(t.shape)
        return val, der


@dataclass(frozen=True)
class CoefficientSet:
    """Coefficients a, b, c, d, f, g of

        iψ_t = −aψ_xx + bx²ψ − icxψ_x − idψ − fxψ + igψ_x + h|ψ|²ψ

    and the nonlinearity constant h0 of the autonomous target equation.
    Immutable once built; evaluation is pure.
    """

    a: Coefficient
    b: Coefficient
    c: Coefficient
    d: Coefficient
    f: Coefficient
    g: Coefficient
    h0: float = 0.0
    name: str = "custom"
    params: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        a0, _ = self.a(0.0)
        if not np.isfinite(a0) or a0 == 0:
            msg = f"coefficient a must be finite and nonzero at t=0, got a(0)={float(a0)}"
            raise SingularCoefficientError(msg, coefficient="a", t=0.0)

    def with_h0(self, h0: float) -> "CoefficientSet":
        return CoefficientSet(
            self.a, self.b, self.c, self.d, self.f, self.g,
            h0=float(h0), name=self.name, params=dict(self.params),
        )

    def describe(self) -> dict[str, Any]:
        return {"name": self.name, "h0": self.h0, **self.params}


@dataclass(frozen=True)
class CoeffValues:
    t: np.ndarray
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    f: np.ndarray
    g: np.ndarray
    da: np.ndarray
    dd: np.ndarray


def eval_coeffs(coeffs: CoefficientSet, t: ArrayLike) -> CoeffValues:
    """Evaluate all six coefficients and the derivatives a', d' at t."""
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t)):
        msg = "coefficients can only be evaluated at finite times"
        raise EvaluationError(msg)
    values: dict[str, np.ndarray] = {}
    for name in COEFF_NAMES:
        val, der = getattr(coeffs, name)(t)
        for arr, what in ((val, name), (der, f"{name}'")):
            bad = ~np.isfinite(arr)
            if np.any(bad):
                t_bad = float(np.broadcast_to(t, arr.shape)[bad].flat[0])
                msg = f"coefficient {what} of '{coeffs.name}' is not finite at t={t_bad}"
                raise EvaluationError(msg, coefficient=what, t=t_bad)
        values[name] = val
        if name in {"a", "d"}:
            values[f"d{name}"] = der
    return CoeffValues(t=t, **values)


def tau_sigma(coeffs: CoefficientSet, t: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients of the characteristic equation μ'' − τμ' + 4σμ = 0.

    σ is used in the expanded form ab − cd + d² + d·a'/(2a) − d'/2, which is
    finite when d vanishes identically.
    """
    v = eval_coeffs(coeffs, t)
    if np.any(v.a == 0):
        t_bad = float(np.broadcast_to(v.t, v.a.shape)[v.a == 0].flat[0])
        msg = f"coefficient a of '{coeffs.name}' vanishes at t={t_bad}"
        raise SingularCoefficientError(msg, coefficient="a", t=t_bad)
    tau = v.da / v.a - 2 * v.c + 4 * v.d
    sigma = v.a * v.b - v.c * v.d + v.d**2 + v.d * v.da / (2 * v.a) - v.dd / 2
    return tau, sigma
