from dataclasses import dataclass, field
from typing import Any

import numpy as np

from nlscanon.transform.field import ComplexField
from nlscanon.utils.errors import ShapeError
from nlscanon.utils.report import Grid2D


@dataclass(frozen=True)
class FieldSamples:
    """Complex samples of shape (nt, nx) on a grid."""

    grid: Grid2D
    values: np.ndarray
    label: str = ""
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=complex)
        if values.shape != (self.grid.nt, self.grid.nx):
            msg = f"samples of shape {values.shape} do not fit a {self.grid.nt}x{self.grid.nx} grid"
            raise ShapeError(msg, shape=list(values.shape))
        object.__setattr__(self, "values", values)

    @classmethod
    def from_field(cls, source: ComplexField, grid: Grid2D, threads: int | None = None) -> "FieldSamples":
        return cls(grid, source.sample(grid, threads), label=source.label)

    def rows(self):
        """(x, t, re, im) rows in grid order, time slowest."""
        xx, tt = self.grid.mesh()
        return zip(xx.ravel(), tt.ravel(), self.values.real.ravel(), self.values.imag.ravel(), strict=True)


@dataclass(frozen=True)
class FieldComparison:
    sup_norm: float
    l2_norm: float
    relative_l2: float
    worst_point: tuple[float, float]

    def to_dict(self) -> dict[str, Any]:
        return {
            "sup_norm": self.sup_norm,
            "l2_norm": self.l2_norm,
            "relative_l2": self.relative_l2,
            "worst_point": {"x": self.worst_point[0], "t": self.worst_point[1]},
        }


def compare_fields(first: FieldSamples, second: FieldSamples) -> FieldComparison:
    """Sup, root-mean-square and relative L2 distance of two sampled fields
    on the same grid. The relative norm is taken against `first`.
    """
    if first.grid != second.grid:
        msg = f"cannot compare fields on different grids {first.grid} and {second.grid}"
        raise ShapeError(msg, first=first.grid.to_dict(), second=second.grid.to_dict())
    diff = np.abs(first.values - second.values)
    worst = np.unravel_index(int(np.argmax(diff)), diff.shape)
    l2 = float(np.sqrt(np.mean(diff**2)))
    reference = float(np.sqrt(np.mean(np.abs(first.values) ** 2)))
    return FieldComparison(
        sup_norm=float(diff[worst]),
        l2_norm=l2,
        relative_l2=l2 / reference if reference > 0 else (0.0 if l2 == 0 else float("inf")),
        worst_point=(float(first.grid.x[worst[1]]), float(first.grid.t[worst[0]])),
    )
