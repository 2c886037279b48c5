"""Reflectionless inverse scattering for the focusing standard form.

With the separable kernel B(X, T) = −i Σ rₙ e^{i(λₙX + 4λₙ²(T − T₀))} the
Gelfand–Levitan–Marchenko equation reduces to the N×N system

    (I − A) κ = v,   Ψ = −2 Σₙ κₙ,

where uₘ = cₘ e^{2iλₘX}, cₘ = −i rₘ e^{4iλₘ²(T − T₀)}, vₙ = uₙ* and

    Aₙₚ = vₙ Σₘ uₘ / ((λₘ − λₙ*)(λₘ − λₚ*)).

The geometric integrals over [X, ∞) are done in closed form. The system is
solved in a scaled block form, so far-field points where |uₘ| over- or
underflows still give finite results.
"""

from collections.abc import Callable, Sequence
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import least_squares

from nlscanon.solutions.base import AutonomousSolution
from nlscanon.utils import get_root_logger
from nlscanon.utils.errors import (
    DegenerateDataError,
    DomainError,
    MultiplicityError,
    ShapeError,
)

COND_WARN = 1e12
MULTIPLICITY_TOL = 1e-12


@dataclass(frozen=True)
class ScatteringData:
    """Discrete eigenvalues λₙ (Im λₙ > 0), norming constants rₙ, an
    optional reflection coefficient b(λ) and the reference time T₀.
    """

    eigenvalues: tuple[complex, ...]
    norming: tuple[complex, ...]
    reflection: Callable[[np.ndarray], np.ndarray] | None = None
    t0: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "eigenvalues", tuple(complex(v) for v in self.eigenvalues))
        object.__setattr__(self, "norming", tuple(complex(v) for v in self.norming))
        if len(self.eigenvalues) != len(self.norming):
            msg = (
                f"{len(self.eigenvalues)} eigenvalues but {len(self.norming)} norming constants"
            )
            raise ShapeError(msg)
        bad = [lam for lam in self.eigenvalues if lam.imag <= 0]
        if bad:
            msg = f"eigenvalues need Im(lambda) > 0, got {bad}"
            raise DomainError(msg, eigenvalues=bad, inequality="Im(lambda) > 0")

    @property
    def reflectionless(self) -> bool:
        return self.reflection is None

    @property
    def size(self) -> int:
        return len(self.eigenvalues)

    def to_dict(self) -> dict:
        return {
            "eigenvalues": list(self.eigenvalues),
            "norming": list(self.norming),
            "reflectionless": self.reflectionless,
            "t0": self.t0,
        }


def evolve_scattering_data(data: ScatteringData, t: float) -> ScatteringData:
    """Scattering data at time T:

    b(λ, T) = b(λ, T₀)e^{4iλ²(T − T₀)},  rₙ(T) = rₙ(T₀)e^{4iλₙ²(T − T₀)}.
    """
    shift = t - data.t0
    norming = tuple(
        r * np.exp(4j * lam**2 * shift) for r, lam in zip(data.norming, data.eigenvalues, strict=True)
    )
    reflection = data.reflection
    if reflection is not None:
        b0 = reflection

        def reflection(lam):
            lam = np.asarray(lam, dtype=complex)
            return b0(lam) * np.exp(4j * lam**2 * shift)

    return replace(data, norming=norming, reflection=reflection, t0=float(t))


def centered_norming_constant(eta: float) -> complex:
    """Norming constant of the single soliton 2η sech(2ηX) e^{4iη²T} centred at X = 0."""
    return -2j * eta


def _check_discrete(data: ScatteringData) -> np.ndarray:
    if not data.reflectionless:
        msg = "only reflectionless scattering data can be reconstructed"
        raise DomainError(msg, inequality="b == 0")
    lam = np.asarray(data.eigenvalues, dtype=complex)
    gaps = np.where(np.eye(lam.size, dtype=bool), np.inf, np.abs(lam[:, None] - lam[None, :]))
    if lam.size > 1 and np.min(gaps) < MULTIPLICITY_TOL:
        i, j = np.unravel_index(np.argmin(gaps), gaps.shape)
        msg = f"coincident eigenvalues {lam[i]} and {lam[j]} are not supported"
        raise MultiplicityError(msg, eigenvalues=[complex(lam[i]), complex(lam[j])])
    return lam


def _block_system(lam: np.ndarray, log_u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row-scaled block form of the GLM system at every point.

    With Pₙₘ = vₙaₘₙ, Qₘₚ = uₘaₘₚ and aₘₙ = 1/(λₘ − λₙ*), A = PQ and

        [ I  −P ] [κ]   [v]
        [−Q   I ] [z] = [0].

    Rows n and N + m are divided by max(1, |uₙ|) and max(1, |uₘ|). Each
    entry is a single exponential, so the scaling is applied to its log
    before exponentiating and every scaled entry stays bounded. Where |uₙ|
    is large the row tends to a row of the Cauchy matrix a, whose principal
    blocks are invertible for distinct eigenvalues. Returns the matrices
    (..., 2N, 2N) and the row scales (..., 2N).
    """
    n = lam.size
    a = 1 / (lam[:, None] - np.conj(lam)[None, :])
    log_a, arg_a = np.log(np.abs(a)), np.angle(-a)
    g, phi = log_u.real, log_u.imag
    # log |uₙ| / max(1, |uₙ|)
    g_low = np.minimum(g, 0.0)

    k = log_u.shape[0]
    matrix = np.zeros((k, 2 * n, 2 * n), dtype=complex)
    diag = np.arange(2 * n)
    row = np.exp(-np.maximum(np.concatenate([g, g], axis=-1), 0.0))
    matrix[:, diag, diag] = row
    matrix[:, :n, n:] = np.exp(g_low[:, :, None] + log_a.T[None] + 1j * (arg_a.T[None] - phi[:, :, None]))
    matrix[:, n:, :n] = np.exp(g_low[:, :, None] + log_a[None] + 1j * (arg_a[None] + phi[:, :, None]))
    return matrix, row


def _solve(matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.solve(matrix, rhs[..., None])[..., 0]
    except np.linalg.LinAlgError as err:
        msg = f"the GLM system is singular: {err}"
        raise DegenerateDataError(msg) from err


def _condition(matrix: np.ndarray) -> float:
    if not np.all(np.isfinite(matrix)):
        msg = "the GLM system is not finite on the requested points"
        raise DegenerateDataError(msg)
    try:
        return float(np.max(np.linalg.cond(matrix)))
    except np.linalg.LinAlgError as err:
        msg = f"the GLM system condition number could not be computed: {err}"
        raise DegenerateDataError(msg) from err


@dataclass(frozen=True)
class GLMSolution:
    """Reconstructed field and its X, XX and T derivatives."""

    value: np.ndarray
    dx: np.ndarray
    dxx: np.ndarray
    dt: np.ndarray
    condition: float


def glm_solve(data: ScatteringData, x, t, derivatives: bool = True) -> GLMSolution:
    """Solve the reflectionless GLM system at every (X, T).

    Since ∂vₙ = ρₙvₙ and ∂uₘ = σₘuₘ, the derivatives of w = (κ, z) solve
    the same block system B with τ = (ρ, σ):

        B ∂w = τ w,   B ∂²w = 2τ ∂w − τ² w.
    """
    lam = _check_discrete(data)
    x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    shape = x.shape
    if lam.size == 0:
        zero = np.zeros(shape, dtype=complex)
        return GLMSolution(zero, zero, zero, zero, 1.0)

    n = lam.size
    xf, tf = x.ravel()[:, None], t.ravel()[:, None]
    r = np.asarray(data.norming, dtype=complex)
    lam_c = np.conj(lam)
    with np.errstate(divide="ignore"):
        log_u = np.log(-1j * r) + 4j * lam**2 * (tf - data.t0) + 2j * lam * xf

    matrix, row = _block_system(lam, log_u)
    cond = _condition(matrix)
    if cond > COND_WARN:
        get_root_logger().warning(f"GLM system condition number {cond:.3e} exceeds {COND_WARN:g}.")

    rhs = np.zeros((xf.shape[0], 2 * n), dtype=complex)
    rhs[:, :n] = np.exp(np.minimum(log_u.real, 0.0) - 1j * log_u.imag)
    w = _solve(matrix, rhs)

    def field(part):
        return (-2 * np.sum(part[:, :n], axis=-1)).reshape(shape)

    if not derivatives:
        nan = np.full(shape, np.nan + 0j)
        return GLMSolution(field(w), nan, nan, nan, cond)

    # X: vₙ' = −2iλₙ* vₙ, uₘ' = 2iλₘ uₘ
    tau_x = np.concatenate([-2j * lam_c, 2j * lam])
    dw = _solve(matrix, row * tau_x * w)
    d2w = _solve(matrix, row * (2 * tau_x * dw - tau_x**2 * w))
    # T: vₙ' = −4iλₙ*² vₙ, uₘ' = 4iλₘ² uₘ
    tau_t = np.concatenate([-4j * lam_c**2, 4j * lam**2])
    dw_t = _solve(matrix, row * tau_t * w)

    result = GLMSolution(field(w), field(dw), field(d2w), field(dw_t), cond)
    if not all(np.all(np.isfinite(part)) for part in (result.value, result.dx, result.dxx, result.dt)):
        msg = "the GLM reconstruction is not finite on the requested points"
        raise DegenerateDataError(msg)
    return result


def glm_reconstruct(data: ScatteringData, x, t) -> np.ndarray:
    """Ψ(X, T) = −2K(X, X, T) for reflectionless data."""
    out = glm_solve(data, x, t, derivatives=False).value
    if not np.all(np.isfinite(out)):
        msg = "the GLM reconstruction is not finite on the requested points"
        raise DegenerateDataError(msg)
    return out


def glm_field(data: ScatteringData) -> AutonomousSolution:
    """The reconstruction as a standard-form field with analytic derivatives."""
    _check_discrete(data)

    def part(name):
        return lambda x, t: getattr(glm_solve(data, x, t), name)

    return AutonomousSolution(
        lambda x, t: glm_reconstruct(data, x, t), part("dx"), part("dxx"), part("dt"),
        label="glm", meta={"branch": "focusing"},
        family="glm", params=data.to_dict(), form="standard",
    )


def fit_norming_constants(
    eigenvalues: Sequence[complex],
    profile: Callable[[np.ndarray], np.ndarray],
    x,
    guess: Sequence[complex],
    t: float = 0.0,
) -> tuple[complex, ...]:
    """Norming constants whose reconstruction at time t best matches
    profile(x) in the least squares sense, starting from `guess`.
    """
    x = np.asarray(x, dtype=float)
    target = np.asarray(profile(x), dtype=complex)
    n = len(eigenvalues)

    def unpack(p):
        return tuple(complex(p[i], p[n + i]) for i in range(n))

    def residual(p):
        data = ScatteringData(eigenvalues, unpack(p), t0=t)
        diff = glm_reconstruct(data, x, t) - target
        return np.concatenate([diff.real, diff.imag])

    start = np.concatenate([np.real(guess), np.imag(guess)]).astype(float)
    fit = least_squares(residual, start, xtol=1e-14, ftol=1e-14, gtol=1e-14)
    get_root_logger().debug(
        f"Norming constant fit: cost {fit.cost:.3e} after {fit.nfev} evaluations."
    )
    return unpack(fit.x)
