"""Traveling waves χ = e^{i(ξy + τ(y² − g₀) + φ)} F(ξ + 2τy) of
iχ_τ + h₀|χ|²χ = χ_ξξ.

The real profile solves F'' = g₀F + h₀F³, with first integral

    F'² = g₀F² + (h₀/2)F⁴ + C₀.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import ellipj

from nlscanon.solutions.base import AutonomousSolution
from nlscanon.utils.errors import ConfigError, DomainError
from nlscanon.utils.registry import SOLUTION_REGISTRY

FAMILIES = ("bright", "dark", "cn", "dn")
C0_RTOL = 1e-10


@dataclass(frozen=True)
class Profile:
    """F(z) = amplitude · shape(kappa z) for one of the four families."""

    family: str
    amplitude: float
    kappa: float
    m: float
    g0: float
    h0: float
    c0: float

    def __call__(self, z) -> tuple[np.ndarray, np.ndarray]:
        """F and F' at z."""
        z = np.asarray(z, dtype=float)
        amp, k = self.amplitude, self.kappa
        u = k * z
        match self.family:
            case "bright":
                sech = 1 / np.cosh(u)
                return amp * sech, -amp * k * sech * np.tanh(u)
            case "dark":
                sech = 1 / np.cosh(u)
                return amp * np.tanh(u), amp * k * sech**2
            case "cn":
                sn, cn, dn, _ = ellipj(u, self.m)
                return amp * cn, -amp * k * sn * dn
            case _:
                sn, cn, dn, _ = ellipj(u, self.m)
                return amp * dn, -amp * k * self.m * sn * cn

    def second(self, f) -> np.ndarray:
        return self.g0 * f + self.h0 * f**3

    def residual(self, z) -> np.ndarray:
        """Pointwise residual of F'² = g₀F² + (h₀/2)F⁴ + C₀."""
        f, df = self(z)
        return np.abs(df**2 - (self.g0 * f**2 + 0.5 * self.h0 * f**4 + self.c0))


def _require(ok: bool, family: str, inequality: str) -> None:
    if not ok:
        msg = f"{family} wave needs {inequality}"
        raise DomainError(msg, family=family, inequality=inequality)


def _check_c0(family: str, given: float | None, required: float) -> float:
    if given is None:
        return required
    if abs(given - required) > C0_RTOL * max(1.0, abs(required)):
        msg = f"{family} wave needs C0 = {required!r}, got {given!r}"
        raise DomainError(msg, family=family, inequality=f"C0 = {required!r}")
    return required


def wave_profile(family: str, g0: float, h0: float, c0: float | None = None) -> Profile:
    """Profile parameters (amplitude, κ, m) that make F solve the first integral.

    Existence regions:
        bright  g₀ > 0, h₀ < 0, C₀ = 0                 F = A sech κz
        dark    g₀ < 0, h₀ > 0, C₀ = g₀²/(2h₀)         F = A tanh κz
        cn      h₀ < 0, C₀ > 0                         F = A cn(κz, m)
        dn      g₀ > 0, h₀ < 0, 0 < C₀h₀/(2g₀²) < 1/4  F = A dn(κz, m)
    """
    match family:
        case "bright":
            _require(g0 > 0, family, "g0 > 0")
            _require(h0 < 0, family, "h0 < 0")
            c0 = _check_c0(family, c0, 0.0)
            return Profile(family, np.sqrt(-2 * g0 / h0), np.sqrt(g0), 1.0, g0, h0, c0)
        case "dark":
            _require(g0 < 0, family, "g0 < 0")
            _require(h0 > 0, family, "h0 > 0")
            c0 = _check_c0(family, c0, g0**2 / (2 * h0))
            return Profile(family, np.sqrt(-g0 / h0), np.sqrt(-g0 / 2), 1.0, g0, h0, c0)
        case "cn":
            _require(h0 < 0, family, "h0 < 0")
            _require(c0 is not None and c0 > 0, family, "C0 > 0")
            p = np.sqrt(g0**2 - 2 * c0 * h0)
            m = (1 + g0 / p) / 2
            return Profile(family, np.sqrt(-2 * m * p / h0), np.sqrt(p), m, g0, h0, c0)
        case "dn":
            _require(g0 > 0, family, "g0 > 0")
            _require(h0 < 0, family, "h0 < 0")
            _require(c0 is not None and c0 < 0, family, "C0 < 0")
            r = c0 * h0 / (2 * g0**2)
            _require(r < 0.25, family, "C0*h0/(2*g0^2) < 1/4")
            w = 2 * r / ((1 - 2 * r) + np.sqrt(1 - 4 * r))
            p = g0 / (1 + w)
            return Profile(family, np.sqrt(-2 * p / h0), np.sqrt(p), 1 - w, g0, h0, c0)
    msg = f"unknown traveling wave family '{family}', expected one of {FAMILIES}"
    raise ConfigError(msg)


def traveling_wave(
    family: str,
    y: float = 0.0,
    g0: float = 1.0,
    h0: float = -2.0,
    c0: float | None = None,
    phi: float = 0.0,
) -> AutonomousSolution:
    prof = wave_profile(family, g0, h0, c0)

    def parts(x, t):
        theta = x * y + t * (y**2 - g0) + phi
        f, df = prof(x + 2 * t * y)
        return np.exp(1j * theta), f, df

    def value(x, t):
        e, f, _ = parts(x, t)
        return e * f

    def dx(x, t):
        e, f, df = parts(x, t)
        return e * (1j * y * f + df)

    def dxx(x, t):
        e, f, df = parts(x, t)
        return e * (-(y**2) * f + 2j * y * df + prof.second(f))

    def dt(x, t):
        e, f, df = parts(x, t)
        return e * (1j * (y**2 - g0) * f + 2 * y * df)

    return AutonomousSolution(
        value, dx, dxx, dt,
        label=family,
        meta={"m": prof.m},
        family=family,
        params={"y": y, "g0": g0, "h0": h0, "c0": prof.c0, "phi": phi},
        form="autonomous",
        profile=prof,
    )


@SOLUTION_REGISTRY.register()
def bright(y: float = 0.0, g0: float = 1.0, h0: float = -2.0, c0: float | None = None, phi: float = 0.0):
    return traveling_wave("bright", y, g0, h0, c0, phi)


@SOLUTION_REGISTRY.register()
def dark(y: float = 0.0, g0: float = -2.0, h0: float = 2.0, c0: float | None = None, phi: float = 0.0):
    return traveling_wave("dark", y, g0, h0, c0, phi)


@SOLUTION_REGISTRY.register()
def cn(y: float = 0.0, g0: float = 0.5, h0: float = -2.0, c0: float = 0.5, phi: float = 0.0):
    return traveling_wave("cn", y, g0, h0, c0, phi)


@SOLUTION_REGISTRY.register()
def dn(y: float = 0.0, g0: float = 1.5, h0: float = -2.0, c0: float = -0.25, phi: float = 0.0):
    return traveling_wave("dn", y, g0, h0, c0, phi)


@SOLUTION_REGISTRY.register()
def breather(g0: float = 1.0, h0: float = -2.0, phi: float = 0.0):
    """Stationary bright wave located about ξ = 0, oscillating at frequency g₀."""
    sol = traveling_wave("bright", 0.0, g0, h0, 0.0, phi)
    return AutonomousSolution(
        sol.value, sol.dx, sol.dxx, sol.dt,
        label="breather", meta=sol.meta, family="breather",
        params=sol.params, form="autonomous", profile=sol.profile,
    )
