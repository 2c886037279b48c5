import numpy as np
import pytest
from numpy.testing import assert_allclose

from nlscanon.coeffs import presets
from nlscanon.riccati import RiccatiState, build_trajectory
from nlscanon.solutions import build_solution
from nlscanon.transform import (
    TransformFrame,
    branch_of,
    build_frame,
    build_fundamental,
    coupling_from_kernel,
    from_standard,
    gaussian,
    green_asymptotic,
    green_function,
    integrability_coupling,
    lift_free_propagator,
    lift_solution,
    propagate_linear,
    pull_back,
    to_standard,
)
from nlscanon.utils.errors import (
    ConfigError,
    FocalPointError,
    NormalizationError,
)
from nlscanon.utils.report import Grid2D
from nlscanon.verify import residual_nonautonomous, residual_standard

INIT = RiccatiState.from_sequence([1.3, 0.2, 0.8, 0.1, 0.3, -0.2, 0.05])


def _coupling(frame):
    return lambda t: integrability_coupling(frame, t)


# integrability condition


def test_coupling_plasma_identity():
    frame = build_frame(presets.plasma(k=0.5), h0=-2.0)
    assert_allclose(integrability_coupling(frame, np.array([0.0, 0.5, 1.0])), -2.0, rtol=1e-14)


def test_coupling_harmonic_identity():
    frame = build_frame(presets.harmonic(omega=1.0), h0=-2.0, t_end=1.2)
    t = np.array([0.0, 0.5, 1.1])
    assert_allclose(integrability_coupling(frame, t), -2.0 / np.cos(t), rtol=1e-13)


@pytest.mark.parametrize(
    "coeffs",
    [presets.harmonic(omega=1.0), presets.exponential(k=0.5), presets.plasma(k=0.5)],
    ids=lambda c: c.name,
)
def test_coupling_forms_agree(coeffs):
    frame = build_frame(coeffs, INIT, h0=1.5)
    t = np.linspace(0, 1, 11)
    assert_allclose(coupling_from_kernel(frame, t), integrability_coupling(frame, t), rtol=1e-8)


def test_frame_rejects_bad_normalization():
    trajectory = build_trajectory(presets.free_particle(), None, 1.0)
    with pytest.raises(ConfigError):
        TransformFrame(trajectory, -2.0, normalization="unit")
    with pytest.raises(NormalizationError):
        TransformFrame(trajectory, 0.0, normalization="scaled")


def test_branch_of():
    assert branch_of(-2.0) == "focusing"
    assert branch_of(2.0) == "defocusing"


# lifting


@pytest.mark.parametrize(
    ("coeffs", "t1"),
    [
        (presets.plasma(k=0.5), 1.0),
        (presets.harmonic(omega=1.0), 1.2),
        (presets.exponential(k=0.5), 1.0),
    ],
    ids=["plasma", "harmonic", "exponential"],
)
@pytest.mark.parametrize("y", [0.0, 0.4])
def test_lifted_bright_wave_solves_nonautonomous_equation(coeffs, t1, y):
    chi = build_solution({"type": "bright", "y": y})
    frame = build_frame(coeffs, h0=chi.h0, t_end=t1)
    psi = lift_solution(chi, frame)
    assert psi.has_derivatives
    grid = Grid2D(-10, 10, 201, 0, t1, 13)
    report = residual_nonautonomous(psi, coeffs, _coupling(frame), grid)
    assert report.method == "analytic_derivatives"
    assert report.sup_norm <= 1e-6


def test_lifted_derivatives_match_differences():
    coeffs = presets.exponential(k=0.5)
    chi = build_solution({"type": "bright", "y": 0.3})
    frame = build_frame(coeffs, INIT, h0=chi.h0)
    psi = lift_solution(chi, frame)
    grid = Grid2D(-4, 4, 33, 0.1, 0.9, 9)
    analytic = residual_nonautonomous(psi, coeffs, _coupling(frame), grid)
    numeric = residual_nonautonomous(
        psi, coeffs, _coupling(frame), grid, method="central6", step=(1e-3, 1e-3)
    )
    assert analytic.sup_norm <= 1e-8
    assert numeric.sup_norm <= 1e-6


def test_lift_at_identity_is_the_solution():
    chi = build_solution({"type": "bright", "y": 0.2})
    frame = build_frame(presets.plasma(k=0.5), h0=chi.h0)
    x = np.linspace(-3, 3, 13)
    assert_allclose(lift_solution(chi, frame)(x, 0.0), chi(x, 0.0), atol=1e-15)


@pytest.mark.parametrize(
    "coeffs", [presets.plasma(k=0.5), presets.harmonic(omega=1.0)], ids=lambda c: c.name
)
def test_pull_back_inverts_lift(coeffs):
    chi = build_solution({"type": "bright", "y": 0.3})
    frame = build_frame(coeffs, INIT, h0=chi.h0)
    round_trip = pull_back(lift_solution(chi, frame), frame)
    tau = frame.state(np.array([0.2, 0.5, 0.8])).gamma
    xi, tt = np.meshgrid(np.linspace(-3, 3, 11), tau)
    assert np.max(np.abs(round_trip(xi, tt) - chi(xi, tt))) <= 1e-12


def test_standard_form_round_trip():
    chi = build_solution({"type": "bright", "y": 0.3})
    psi = to_standard(chi, chi.h0)
    assert psi.meta["branch"] == "focusing"
    back = from_standard(psi, chi.h0)
    x = np.linspace(-3, 3, 7)
    assert_allclose(back(x, 0.4), chi(x, 0.4), rtol=1e-14, atol=1e-15)
    assert_allclose(back.derivative("dt", x, 0.4), chi.derivative("dt", x, 0.4), rtol=1e-13, atol=1e-14)


def test_bright_wave_standard_form_is_one_soliton():
    chi = build_solution({"type": "bright", "g0": 0.5, "h0": -1.0})
    psi = to_standard(chi, chi.h0)
    grid = Grid2D(-8, 8, 81, 0, 1, 11)
    assert residual_standard(psi, grid, branch="focusing").sup_norm <= 1e-10
    one = build_solution({"type": "one_soliton"})
    x = np.linspace(-5, 5, 21)
    assert_allclose(np.abs(psi(x, 0.7)), np.abs(one(x, 0.7)), rtol=1e-12)


def test_scaled_preserves_initial_data():
    h0 = -2.0
    one = build_solution({"type": "one_soliton"})
    frame = build_frame(presets.harmonic(omega=1.0), INIT, h0=h0, normalization="scaled")
    psi = lift_solution(one, frame)
    x = np.linspace(-3, 3, 13)
    s = INIT
    expected = (
        np.exp(1j * (s.alpha * x**2 + s.delta * x + s.kappa))
        / np.sqrt(abs(h0) * s.mu)
        * one((s.beta * x + s.epsilon) / np.sqrt(2), -s.gamma / 2)
    )
    assert_allclose(psi(x, 0.0), expected, rtol=1e-13)


def test_scaled_solves_nonautonomous_equation():
    one = build_solution({"type": "one_soliton"})
    coeffs = presets.plasma(k=0.5)
    frame = build_frame(coeffs, INIT, h0=-2.0, normalization="scaled")
    psi = lift_solution(one, frame)
    grid = Grid2D(-8, 8, 81, 0, 1, 11)
    assert residual_nonautonomous(psi, coeffs, _coupling(frame), grid).sup_norm <= 1e-6


def test_scaled_needs_positive_mu():
    init = RiccatiState.from_sequence([-1.3, 0.2, 0.8, 0.1, 0.3, -0.2, 0.05])
    frame = build_frame(presets.plasma(k=0.5), init, h0=-2.0, normalization="scaled")
    psi = lift_solution(build_solution({"type": "one_soliton"}), frame)
    with pytest.raises(NormalizationError):
        psi(np.zeros(3), 0.0)


# Green function


@pytest.mark.parametrize(
    "coeffs",
    [presets.free_particle(), presets.harmonic(omega=1.0), presets.plasma(k=0.5), presets.exponential(k=0.5)],
    ids=lambda c: c.name,
)
def test_green_function_equals_lifted_free_propagator(coeffs):
    rng = np.random.default_rng(7)
    x, y = rng.uniform(-2, 2, (2, 200))
    t = rng.uniform(0.2, 1.0, 200)
    fundamental = build_fundamental(coeffs, t_end=1.0)
    frame = build_frame(coeffs)
    g = green_function(coeffs, fundamental, x, y, t)
    k = lift_free_propagator(frame, x, y, t)
    assert np.max(np.abs(g - k) / np.abs(g)) <= 1e-10


@pytest.mark.parametrize(
    "coeffs",
    [presets.free_particle(), presets.harmonic(omega=1.0), presets.plasma(k=0.5), presets.exponential(k=0.5)],
    ids=lambda c: c.name,
)
def test_green_function_small_time(coeffs):
    fundamental = build_fundamental(coeffs, t_end=1.0, t_min=1e-6)
    x, y = np.array([-0.5, 0.0, 0.7]), np.array([0.3, 0.0, -0.2])
    g = green_function(coeffs, fundamental, x, y, 1e-4)
    small = green_asymptotic(coeffs, x, y, 1e-4)
    assert_allclose(np.abs(g), np.abs(small), rtol=1e-2)


def test_free_green_function_is_heat_kernel():
    coeffs = presets.free_particle()
    fundamental = build_fundamental(coeffs, t_end=1.0)
    x, y, t = 0.4, -0.3, 0.6
    expected = np.exp(1j * (x - y) ** 2 / (4 * t)) / np.sqrt(4j * np.pi * t)
    assert_allclose(green_function(coeffs, fundamental, x, y, t), expected, rtol=1e-12)
    assert_allclose(green_asymptotic(coeffs, x, y, t), expected, rtol=1e-14)


def test_green_function_focal_point():
    coeffs = presets.harmonic(omega=1.0)
    fundamental = build_fundamental(coeffs, t_end=4.0)
    with pytest.raises(FocalPointError) as err:
        green_function(coeffs, fundamental, 0.0, 0.0, np.pi)
    assert err.value.details["t"] == pytest.approx(np.pi)


def test_green_function_past_focal_point_uses_principal_branch():
    coeffs = presets.harmonic(omega=1.0)
    fundamental = build_fundamental(coeffs, t_end=4.5)
    g = green_function(coeffs, fundamental, 0.0, 0.0, 4.0)
    assert_allclose(g, np.power(4j * np.pi * np.sin(4.0), -0.5), rtol=1e-9)
    assert np.angle(g) == pytest.approx(np.pi / 4)


def test_propagate_gaussian_free_particle():
    x = np.linspace(-3, 3, 13)
    t = 0.3
    psi = propagate_linear(presets.free_particle(), gaussian(1.0), x, t, window=8.0)
    expected = np.exp(-(x**2) / (1 + 4j * t)) / np.sqrt(1 + 4j * t)
    assert np.max(np.abs(psi - expected)) <= 1e-7


def test_propagate_harmonic_ground_state():
    omega, t = 1.0, 0.3
    x = np.linspace(-3, 3, 13)
    psi = propagate_linear(presets.harmonic(omega=omega), gaussian(2.0), x, t, window=12.0)
    expected = np.exp(-1j * omega * t / 2) * np.exp(-omega * x**2 / 4)
    assert np.max(np.abs(psi - expected)) <= 1e-7


def test_propagate_conserves_norm():
    x = np.linspace(-12, 12, 481)
    psi = propagate_linear(presets.plasma(k=0.5), gaussian(1.0), x, 0.4, window=8.0)
    dx = x[1] - x[0]
    assert abs(np.sum(np.abs(psi) ** 2) * dx - np.sqrt(np.pi / 2)) <= 1e-6
