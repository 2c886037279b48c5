from dataclasses import dataclass, field
from typing import Any

import numpy as np

from nlscanon.utils.errors import ConfigError, ShapeError

METHODS = ("analytic_derivatives", "central6", "spectral", "central4")


@dataclass(frozen=True)
class Grid2D:
    """Uniform (x, t) grid, `x0:x1:nx,t0:t1:nt` on the command line."""

    x0: float
    x1: float
    nx: int
    t0: float
    t1: float
    nt: int

    def __post_init__(self) -> None:
        if self.nx < 16 or self.nt < 8:
            msg = f"grid needs nx >= 16 and nt >= 8, got nx={self.nx}, nt={self.nt}"
            raise ShapeError(msg, nx=self.nx, nt=self.nt)
        if not self.x1 > self.x0:
            msg = f"grid needs x1 > x0, got [{self.x0}, {self.x1}]"
            raise ShapeError(msg)
        if self.t1 < self.t0:
            msg = f"grid needs t1 >= t0, got [{self.t0}, {self.t1}]"
            raise ShapeError(msg)

    @classmethod
    def parse(cls, spec: str) -> "Grid2D":
        try:
            xs, ts = spec.split(",")
            x0, x1, nx = xs.split(":")
            t0, t1, nt = ts.split(":")
            return cls(float(x0), float(x1), int(nx), float(t0), float(t1), int(nt))
        except ShapeError as err:
            raise ConfigError(str(err), grid=spec)
        except ValueError:
            msg = f"grid spec must look like x0:x1:nx,t0:t1:nt, got '{spec}'"
            raise ConfigError(msg, grid=spec)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x0, self.x1, self.nx)

    @property
    def t(self) -> np.ndarray:
        return np.linspace(self.t0, self.t1, self.nt)

    @property
    def dx(self) -> float:
        return (self.x1 - self.x0) / (self.nx - 1)

    @property
    def dt(self) -> float:
        return (self.t1 - self.t0) / (self.nt - 1)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """(X, T) arrays of shape (nt, nx): rows are time slices."""
        xx, tt = np.meshgrid(self.x, self.t)
        return xx, tt

    def to_dict(self) -> dict[str, Any]:
        return {
            "x0": self.x0, "x1": self.x1, "nx": self.nx,
            "t0": self.t0, "t1": self.t1, "nt": self.nt,
        }


@dataclass(frozen=True)
class ResidualReport:
    """Residual summary of a PDE, ODE or identity check.

    `l2_norm` is the root mean square of the pointwise residual, so reports
    on different grids are comparable.
    """

    sup_norm: float
    l2_norm: float
    worst_point: tuple[float, float]
    method: str
    grid: Grid2D | None = None
    per_equation: dict[str, float] = field(default_factory=dict)

    @classmethod
    def from_samples(
        cls,
        residual: np.ndarray,
        x: np.ndarray,
        t: np.ndarray,
        method: str,
        grid: Grid2D | None = None,
        per_equation: dict[str, float] | None = None,
    ) -> "ResidualReport":
        residual = np.abs(np.asarray(residual))
        x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
        if residual.size == 0:
            return cls(0.0, 0.0, (float("nan"), float("nan")), method, grid, per_equation or {})
        flat = np.nan_to_num(residual, nan=np.inf).ravel()
        worst = int(np.argmax(flat))
        return cls(
            sup_norm=float(flat[worst]),
            l2_norm=float(np.sqrt(np.mean(residual**2))),
            worst_point=(float(x.ravel()[worst]), float(t.ravel()[worst])),
            method=method,
            grid=grid,
            per_equation=dict(per_equation or {}),
        )

    def passed(self, tol: float) -> bool:
        return self.sup_norm <= tol

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "sup_norm": self.sup_norm,
            "l2_norm": self.l2_norm,
            "worst_point": {"x": self.worst_point[0], "t": self.worst_point[1]},
            "method": self.method,
            "grid": self.grid.to_dict() if self.grid is not None else None,
        }
        if self.per_equation:
            out["per_equation"] = dict(self.per_equation)
        return out
