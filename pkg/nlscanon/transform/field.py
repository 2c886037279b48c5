from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from nlscanon.utils.errors import EvaluationError
from nlscanon.utils.misc import map_rows
from nlscanon.utils.report import Grid2D

FieldFunc = Callable[[np.ndarray, np.ndarray], np.ndarray]
DERIVATIVES = ("dx", "dxx", "dt")


@dataclass(frozen=True)
class ComplexField:
    """Complex amplitude u(x, t) with optional analytic derivatives.

    The evaluators take broadcastable arrays of positions and times. For an
    autonomous solution x, t stand for ξ, τ (or X, T in standard form).
    """

    value: FieldFunc
    dx: FieldFunc | None = None
    dxx: FieldFunc | None = None
    dt: FieldFunc | None = None
    label: str = ""
    meta: dict[str, Any] = field(default_factory=dict)

    @property
    def has_derivatives(self) -> bool:
        return all(getattr(self, name) is not None for name in DERIVATIVES)

    def __call__(self, x, t) -> np.ndarray:
        x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
        out = np.asarray(self.value(x, t), dtype=complex)
        bad = ~np.isfinite(out)
        if np.any(bad):
            idx = np.argwhere(bad)[0]
            point = (float(x[tuple(idx)]), float(t[tuple(idx)]))
            msg = f"field '{self.label}' is not finite at (x, t) = {point}"
            raise EvaluationError(msg, point=point)
        return out

    def derivative(self, name: str, x, t) -> np.ndarray:
        func = getattr(self, name)
        if func is None:
            msg = f"field '{self.label}' has no analytic '{name}' derivative"
            raise AttributeError(msg)
        x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
        return np.asarray(func(x, t), dtype=complex)

    def sample(self, grid: Grid2D, threads: int | None = None) -> np.ndarray:
        """Values on the grid as an (nt, nx) array."""
        xx, tt = grid.mesh()
        return map_rows(self, xx, tt, threads)

    def scaled(self, factor: complex, label: str | None = None) -> "ComplexField":
        """The field multiplied by a constant, derivatives included."""

        def wrap(func):
            return None if func is None else (lambda x, t: factor * func(x, t))

        return ComplexField(
            wrap(self.value), wrap(self.dx), wrap(self.dxx), wrap(self.dt),
            label=label or f"{factor}*{self.label}", meta=dict(self.meta),
        )


def zero_field() -> ComplexField:
    def zero(x, t):
        return np.zeros(np.broadcast(x, t).shape, dtype=complex)

    return ComplexField(zero, zero, zero, zero, label="zero")


def plane_wave(amplitude: float = 1.0, frequency: float = 1.0) -> ComplexField:
    """A e^{iωt}, constant in x."""

    def value(x, t):
        return amplitude * np.exp(1j * frequency * (t + 0 * x))

    def zero(x, t):
        return np.zeros(np.broadcast(x, t).shape, dtype=complex)

    return ComplexField(
        value, zero, zero, lambda x, t: 1j * frequency * value(x, t),
        label="plane_wave", meta={"amplitude": amplitude, "frequency": frequency},
    )


def gaussian(width: float = 1.0, center: float = 0.0) -> ComplexField:
    """exp(−(x − center)²/width²), time independent."""

    def value(x, t):
        return np.exp(-((x - center) ** 2) / width**2) + 0j * t

    def dx(x, t):
        return -2 * (x - center) / width**2 * value(x, t)

    def dxx(x, t):
        s = (x - center) / width**2
        return (4 * s**2 - 2 / width**2) * value(x, t)

    return ComplexField(
        value, dx, dxx, lambda x, t: 0 * value(x, t),
        label="gaussian", meta={"width": width, "center": center},
    )
