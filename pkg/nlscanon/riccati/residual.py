import numpy as np

from nlscanon.coeffs import CoefficientSet
from nlscanon.riccati.state import STATE_NAMES, Trajectory, riccati_rate
from nlscanon.utils.report import ResidualReport

FD_STEP = 1e-5


def _time_derivative(trajectory: Trajectory, t: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order differences of all seven components; one-sided near the
    ends of the trajectory interval.
    """
    lo, hi = trajectory.t_span
    forward = t - 2 * h < lo
    backward = ~forward & (t + 2 * h > hi)
    central = ~forward & ~backward
    out = np.empty((7, t.size))
    if np.any(central):
        f = [trajectory(t[central] + k * h).as_array() for k in (-2, -1, 1, 2)]
        out[:, central] = (f[0] - 8 * f[1] + 8 * f[2] - f[3]) / (12 * h)
    for mask, sign in ((forward, 1), (backward, -1)):
        if np.any(mask):
            f = [trajectory(t[mask] + sign * k * h).as_array() for k in range(5)]
            one_sided = -25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]
            out[:, mask] = sign * one_sided / (12 * h)
    return out


def riccati_residual(
    coeffs: CoefficientSet, trajectory: Trajectory, t_grid, step: float = FD_STEP
) -> ResidualReport:
    """Sup-norm residual of each Riccati equation along a trajectory.

    Returns
    -------
        ResidualReport: `per_equation` holds one entry per component
        (mu, alpha, ..., kappa); the worst point is reported as (0, t).

    """
    t = np.atleast_1d(np.asarray(t_grid, dtype=float))
    measured = _time_derivative(trajectory, t, step)
    expected = riccati_rate(coeffs, trajectory(t)).as_array()
    residual = np.abs(measured - expected)
    per_equation = {name: float(np.max(residual[k])) for k, name in enumerate(STATE_NAMES)}
    return ResidualReport.from_samples(
        np.max(residual, axis=0),
        np.zeros_like(t),
        t,
        method="central4",
        per_equation=per_equation,
    )
