"""One- and two-soliton solutions of the focusing standard form
iΨ_T + Ψ_XX + 2|Ψ|²Ψ = 0.
"""

import numpy as np

from nlscanon.solutions.base import AutonomousSolution
from nlscanon.utils.registry import SOLUTION_REGISTRY


def one_soliton_value(x, t) -> np.ndarray:
    """Ψ₁ = e^{iT}/cosh X."""
    return np.exp(1j * t) / np.cosh(x)


def two_soliton_value(x, t) -> np.ndarray:
    """Ψ₂ = 4e^{iT}(cosh 3X + 3e^{8iT} cosh X)/(cosh 4X + 4 cosh 2X + 3 cos 8T)."""
    num, _, _, _ = _two_soliton_numerator(x, t)
    den, _, _, _ = _two_soliton_denominator(x, t)
    return num / den


def _hyperbolic(x, k):
    """cosh kX and sinh kX times 2e^{−4|X|}, finite for every real X when k ≤ 4."""
    s = np.abs(x)
    grow, decay = np.exp((k - 4) * s), np.exp(-(k + 4) * s)
    return grow + decay, np.sign(x) * (grow - decay)


# numerator and denominator share the factor 2e^{−4|X|}, which cancels in
# the quotient and in every derivative formula built from them
def _two_soliton_numerator(x, t):
    x = np.asarray(x, dtype=float)
    e = np.exp(1j * t)
    w = 3 * np.exp(8j * t)
    c1, s1 = _hyperbolic(x, 1)
    c3, s3 = _hyperbolic(x, 3)
    n = 4 * e * (c3 + w * c1)
    nx = 4 * e * (3 * s3 + w * s1)
    nxx = 4 * e * (9 * c3 + w * c1)
    nt = 1j * n + 32j * e * w * c1
    return n, nx, nxx, nt


def _two_soliton_denominator(x, t):
    x = np.asarray(x, dtype=float)
    c0, _ = _hyperbolic(x, 0)
    c2, s2 = _hyperbolic(x, 2)
    c4, s4 = _hyperbolic(x, 4)
    d = c4 + 4 * c2 + 3 * np.cos(8 * t) * c0
    dx = 4 * s4 + 8 * s2
    dxx = 16 * c4 + 16 * c2
    dt = -24 * np.sin(8 * t) * c0
    return d, dx, dxx, dt


@SOLUTION_REGISTRY.register()
def one_soliton() -> AutonomousSolution:
    def dx(x, t):
        return -np.tanh(x) * one_soliton_value(x, t)

    def dxx(x, t):
        sech = 1 / np.cosh(x)
        return (np.tanh(x) ** 2 - sech**2) * one_soliton_value(x, t)

    def dt(x, t):
        return 1j * one_soliton_value(x, t)

    return AutonomousSolution(
        one_soliton_value, dx, dxx, dt,
        label="one_soliton", meta={"branch": "focusing"},
        family="one_soliton", form="standard",
    )


@SOLUTION_REGISTRY.register()
def two_soliton() -> AutonomousSolution:
    """Satsuma–Yajima breather, Ψ₂(X, 0) = 2 sech X."""

    def dx(x, t):
        n, nx, _, _ = _two_soliton_numerator(x, t)
        d, ddx, _, _ = _two_soliton_denominator(x, t)
        return (nx * d - n * ddx) / d**2

    def dxx(x, t):
        n, nx, nxx, _ = _two_soliton_numerator(x, t)
        d, ddx, ddxx, _ = _two_soliton_denominator(x, t)
        return nxx / d - (2 * nx * ddx + n * ddxx) / d**2 + 2 * n * ddx**2 / d**3

    def dt(x, t):
        n, _, _, nt = _two_soliton_numerator(x, t)
        d, _, _, ddt = _two_soliton_denominator(x, t)
        return (nt * d - n * ddt) / d**2

    return AutonomousSolution(
        two_soliton_value, dx, dxx, dt,
        label="two_soliton", meta={"branch": "focusing"},
        family="two_soliton", form="standard",
    )
