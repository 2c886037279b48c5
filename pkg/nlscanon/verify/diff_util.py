from dataclasses import dataclass

import numpy as np

from nlscanon.transform.field import ComplexField
from nlscanon.utils import get_root_logger
from nlscanon.utils.errors import ConfigError
from nlscanon.utils.misc import map_rows
from nlscanon.utils.report import Grid2D

# sixth-order central stencils on offsets -3..3
FIRST6 = np.array([-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0]) / 60.0
SECOND6 = np.array([2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0]) / 180.0
OFFSETS = np.arange(-3, 4)
SPECTRAL_EDGE_TOL = 1e-10
DIFF_METHODS = ("auto", "analytic_derivatives", "central6", "spectral")


@dataclass(frozen=True)
class FieldDerivatives:
    """Field values and ∂x, ∂xx, ∂t on a grid, arrays of shape (nt, nx)."""

    value: np.ndarray
    dx: np.ndarray
    dxx: np.ndarray
    dt: np.ndarray
    method: str


def _steps(grid: Grid2D, step) -> tuple[float, float]:
    if step is None:
        return grid.dx, grid.dt if grid.dt > 0 else grid.dx
    if np.ndim(step) == 0:
        return float(step), float(step)
    hx, ht = step
    return float(hx), float(ht)


def central6_x(field: ComplexField, xx, tt, h: float, threads=None) -> tuple[np.ndarray, np.ndarray]:
    """First and second x-derivatives from field values on the halo x + jh."""
    samples = [map_rows(field, xx + j * h, tt, threads) for j in OFFSETS]
    first = sum(c * s for c, s in zip(FIRST6, samples, strict=True) if c != 0) / h
    second = sum(c * s for c, s in zip(SECOND6, samples, strict=True)) / h**2
    return first, second


def central6_t(field: ComplexField, xx, tt, h: float, threads=None) -> np.ndarray:
    total = 0
    for j, c in zip(OFFSETS, FIRST6, strict=True):
        if c != 0:
            total = total + c * map_rows(field, xx, tt + j * h, threads)
    return total / h


def spectral_x(samples: np.ndarray, dx: float) -> tuple[np.ndarray, np.ndarray]:
    """Fourier derivatives along the last axis of samples of a field that
    vanishes at both ends of the window.
    """
    k = 2 * np.pi * np.fft.fftfreq(samples.shape[-1], d=dx)
    spec = np.fft.fft(samples, axis=-1)
    return np.fft.ifft(1j * k * spec, axis=-1), np.fft.ifft(-(k**2) * spec, axis=-1)


def edge_magnitude(samples: np.ndarray) -> float:
    return float(max(np.max(np.abs(samples[..., 0])), np.max(np.abs(samples[..., -1]))))


def field_derivatives(
    field: ComplexField,
    grid: Grid2D,
    method: str = "auto",
    step=None,
    threads: int | None = None,
) -> FieldDerivatives:
    """Values and derivatives of a field on the grid.

    Args:
    ----
        field (ComplexField): The field.
        grid (Grid2D): Sample points.
        method (str): 'analytic_derivatives', 'central6', 'spectral' or
            'auto' (analytic when the field has all derivatives, central6
            otherwise).
        step (float | tuple): Stencil step, or (x step, t step). Defaults
            to the grid spacing.
        threads (int): Worker cap for the row-parallel evaluation.

    """
    if method not in DIFF_METHODS:
        msg = f"unknown differentiation method '{method}', expected one of {DIFF_METHODS}"
        raise ConfigError(msg)
    if method == "auto":
        method = "analytic_derivatives" if field.has_derivatives else "central6"
    xx, tt = grid.mesh()
    value = map_rows(field, xx, tt, threads)
    if method == "analytic_derivatives":
        if not field.has_derivatives:
            msg = f"field '{field.label}' has no analytic derivatives"
            raise ConfigError(msg)
        parts = [
            map_rows(lambda x, t, n=name: field.derivative(n, x, t), xx, tt, threads)
            for name in ("dx", "dxx", "dt")
        ]
        return FieldDerivatives(value, *parts, method=method)

    hx, ht = _steps(grid, step)
    if method == "spectral":
        edge = edge_magnitude(value)
        if edge <= SPECTRAL_EDGE_TOL:
            dx, dxx = spectral_x(value, grid.dx)
        else:
            get_root_logger().warning(
                f"field magnitude {edge:.3e} at the grid edges exceeds {SPECTRAL_EDGE_TOL:g}; "
                "using central6 instead of spectral differentiation."
            )
            method = "central6"
    if method == "central6":
        dx, dxx = central6_x(field, xx, tt, hx, threads)
    dt = central6_t(field, xx, tt, ht, threads)
    return FieldDerivatives(value, dx, dxx, dt, method=method)
