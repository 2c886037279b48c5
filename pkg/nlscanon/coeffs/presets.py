import numpy as np

from nlscanon.coeffs.base import Coefficient, CoefficientSet
from nlscanon.utils.errors import DomainError
from nlscanon.utils.registry import PRESET_REGISTRY

_zero = Coefficient.constant(0.0)
_one = Coefficient.constant(1.0)


@PRESET_REGISTRY.register()
def free_particle(h0: float = 0.0) -> CoefficientSet:
    """iψ_t = −ψ_xx + h|ψ|²ψ."""
    return CoefficientSet(_one, _zero, _zero, _zero, _zero, _zero, h0=h0, name="free_particle")


@PRESET_REGISTRY.register()
def harmonic(omega: float, h0: float = 0.0) -> CoefficientSet:
    """iψ_t = −ψ_xx + (ω²/4)x²ψ + h|ψ|²ψ."""
    if omega == 0:
        msg = "harmonic preset requires omega != 0"
        raise DomainError(msg, inequality="omega != 0")
    b = Coefficient.constant(omega**2 / 4)
    return CoefficientSet(
        _one, b, _zero, _zero, _zero, _zero,
        h0=h0, name="harmonic", params={"omega": float(omega)},
    )


@PRESET_REGISTRY.register()
def exponential(k: float, h0: float = 0.0) -> CoefficientSet:
    """iψ_t + ψ_xx + (k²x² − ik)ψ = h|ψ|²ψ, i.e. b = −k², d = −k."""
    if k == 0:
        msg = "exponential preset requires k != 0"
        raise DomainError(msg, inequality="k != 0")
    return CoefficientSet(
        _one,
        Coefficient.constant(-(k**2)),
        _zero,
        Coefficient.constant(-k),
        _zero,
        _zero,
        h0=h0,
        name="exponential",
        params={"k": float(k)},
    )


@PRESET_REGISTRY.register()
def plasma(k: float, h0: float = 0.0) -> CoefficientSet:
    """iψ_t + ψ_xx + 2kxψ = h|ψ|²ψ, a soliton under constant acceleration."""
    if k == 0:
        msg = "plasma preset requires k != 0"
        raise DomainError(msg, inequality="k != 0")
    return CoefficientSet(
        _one, _zero, _zero, _zero, Coefficient.constant(2 * k), _zero,
        h0=h0, name="plasma", params={"k": float(k)},
    )


@PRESET_REGISTRY.register()
def example3(
    alpha0: float, beta0: float, gamma0: float, g0: float, h0: float = 0.0
) -> CoefficientSet:
    """Linear potential decaying like (1+4α₀t)⁻³:

        iχ_t + χ_xx − g₀β₀³x/(1+4α₀t)³ χ = H|χ|²χ,

    so f(t) = −g₀β₀³/(1+4α₀t)³. Valid while 1+4α₀t > 0.
    """
    if beta0 == 0:
        msg = "example3 preset requires beta0 != 0"
        raise DomainError(msg, inequality="beta0 != 0")
    drive = g0 * beta0**3

    def value(t):
        u = 1 + 4 * alpha0 * np.asarray(t, dtype=float)
        return -drive / u**3

    def derivative(t):
        u = 1 + 4 * alpha0 * np.asarray(t, dtype=float)
        return 12 * alpha0 * drive / u**4

    f = Coefficient(value, derivative, label="example3_drive")
    return CoefficientSet(
        _one, _zero, _zero, _zero, f, _zero,
        h0=h0,
        name="example3",
        params={"alpha0": float(alpha0), "beta0": float(beta0), "gamma0": float(gamma0), "g0": float(g0)},
    )
