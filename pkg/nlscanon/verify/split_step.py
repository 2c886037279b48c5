from collections.abc import Callable

import numpy as np
from tqdm import tqdm

from nlscanon.coeffs import CoefficientSet, eval_coeffs
from nlscanon.transform.field import ComplexField
from nlscanon.utils import AvgTimer, ProgressLogger, get_root_logger
from nlscanon.utils.errors import DomainError, ResolutionError
from nlscanon.utils.report import Grid2D
from nlscanon.verify.compare import FieldSamples

EDGE_TOL = 1e-10
ALIAS_TOL = 1e-8

Coupling = float | Callable[[np.ndarray], np.ndarray]


def _coupling(h: Coupling, t: float) -> float:
    return float(h(t)) if callable(h) else float(h)


def upper_band_fraction(psi: np.ndarray) -> float:
    """Share of ∑|ψ̂|² carried by the upper third of the resolved wavenumbers."""
    spec = np.abs(np.fft.fft(psi)) ** 2
    freq = np.abs(np.fft.fftfreq(psi.size))
    total = float(np.sum(spec))
    if total == 0:
        return 0.0
    return float(np.sum(spec[freq > freq.max() * 2 / 3]) / total)


def _potential_step(psi, x, coeffs, h, t, s):
    """Exact flow over time s of iψ_t = (bx² − fx + h|ψ|²)ψ − idψ with the
    coefficients frozen at t.
    """
    v = eval_coeffs(coeffs, t)
    d = float(v.d)
    hv = _coupling(h, t)
    mod2 = np.abs(psi) ** 2
    # ∫₀ˢ e^{−2dr} dr
    weight = s if d == 0 else -np.expm1(-2 * d * s) / (2 * d)
    phase = (float(v.b) * x**2 - float(v.f) * x) * s + hv * mod2 * weight
    return psi * np.exp(-1j * phase - d * s)


def split_step_simulate(
    coeffs: CoefficientSet,
    h: Coupling,
    initial: ComplexField,
    grid: Grid2D,
    dt: float,
    progress: bool = False,
    log_interval: int = 1000,
) -> FieldSamples:
    """Strang split-step Fourier evolution of

        iψ_t = −aψ_xx + bx²ψ − idψ − fxψ + h(t)|ψ|²ψ

    from initial(x, t0), returning samples at every grid time.

    The kinetic step multiplies the spectrum by e^{−ia k² Δt}; the half
    potential steps are exact for frozen coefficients. Each time interval of
    the grid is split into equal steps no longer than dt.

    Args:
    ----
        coeffs (CoefficientSet): Coefficients; c and g must vanish.
        h (float | callable): Coupling h(t).
        initial (ComplexField): Field evaluated at the first grid time.
        grid (Grid2D): Periodic window and sample times.
        dt (float): Largest time step.
        progress (bool): Show a tqdm bar and log progress.
        log_interval (int): Steps between progress messages.

    """
    if not (coeffs.c.is_zero and coeffs.g.is_zero):
        msg = f"split-step needs c = g = 0, '{coeffs.name}' has first order transport terms"
        raise DomainError(msg, inequality="c == 0 and g == 0")
    if dt <= 0:
        msg = f"time step must be positive, got {dt}"
        raise DomainError(msg, inequality="dt > 0")
    x = grid.x
    times = grid.t
    psi = np.asarray(initial(x, np.full_like(x, times[0])), dtype=complex)
    edge = float(max(abs(psi[0]), abs(psi[-1])))
    if edge > EDGE_TOL:
        msg = f"initial field is {edge:.3e} at the window edges, above {EDGE_TOL:g}"
        raise ResolutionError(msg, edge=edge)

    k = 2 * np.pi * np.fft.fftfreq(grid.nx, d=grid.dx)
    counts = [max(1, int(np.ceil((t1 - t0) / dt - 1e-9))) for t0, t1 in zip(times[:-1], times[1:], strict=True)]
    total = int(sum(counts))
    logger = get_root_logger()
    progress_log = ProgressLogger("split-step", total, log_interval) if progress else None
    timer = AvgTimer()
    pbar = tqdm(total=total, unit="step", colour="green", ascii=" >=", disable=not progress)

    def check(values: np.ndarray, t: float) -> None:
        frac = upper_band_fraction(values)
        if frac > ALIAS_TOL:
            msg = f"upper third of the spectrum carries {frac:.3e} of the norm at t={t}"
            raise ResolutionError(msg, t=t, fraction=frac)

    check(psi, times[0])
    out = [psi.copy()]
    step = 0
    for (t_start, t_stop), n in zip(zip(times[:-1], times[1:], strict=True), counts, strict=True):
        tau = (t_stop - t_start) / n
        for j in range(n):
            t = t_start + j * tau
            psi = _potential_step(psi, x, coeffs, h, t, tau / 2)
            a_mid = float(eval_coeffs(coeffs, t + tau / 2).a)
            psi = np.fft.ifft(np.exp(-1j * a_mid * k**2 * tau) * np.fft.fft(psi))
            psi = _potential_step(psi, x, coeffs, h, t + tau, tau / 2)
            step += 1
            timer.record()
            pbar.update(1)
            if progress_log is not None:
                progress_log({"step": step, "time": timer.get_avg_time(), "norm": float(np.sum(np.abs(psi) ** 2) * grid.dx)})
        check(psi, t_stop)
        out.append(psi.copy())
    pbar.close()
    logger.debug(f"Split-step run of '{coeffs.name}' finished after {total} steps.")
    return FieldSamples(grid, np.array(out), label="split_step", meta={"dt": dt, "steps": total})
