import numpy as np
import pytest
from numpy.testing import assert_allclose

from nlscanon.coeffs import coefficients_from_dict, presets
from nlscanon.riccati import (
    STATE_NAMES,
    FundamentalSolution,
    RiccatiState,
    Trajectory,
    build_trajectory,
    closed_form_basis,
    fundamental_solution,
    general_solution,
    lambda_factor,
    riccati_residual,
    solve_characteristic,
    wronskian_check,
)
from nlscanon.utils.errors import (
    DomainError,
    FocalPointError,
    OutOfChartError,
    SingularQuadratureError,
)

INIT = RiccatiState.from_sequence([1.3, 0.2, 0.8, 0.1, 0.3, -0.2, 0.05])


def _driven():
    return coefficients_from_dict(
        {"b": "0.25 + 0.1 * cos(2 t)", "d": "-0.1", "f": "0.3 * sin(1 t)", "g": "0.2"},
        name="driven",
    )


# characteristic equation


@pytest.mark.parametrize(
    ("coeffs", "mu0", "mu1"),
    [
        (presets.harmonic(omega=1.0), lambda t: 2 * np.sin(t), np.cos),
        (presets.exponential(k=1.0), lambda t: (1 - np.exp(-4 * t)) / 2, np.ones_like),
        (presets.free_particle(), lambda t: 2 * t, np.ones_like),
    ],
)
def test_basis_matches_closed_forms(coeffs, mu0, mu1):
    basis = solve_characteristic(coeffs, 1.0)
    t = np.linspace(0, 1, 101)
    assert np.max(np.abs(basis.mu0(t) - mu0(t))) <= 1e-9
    assert np.max(np.abs(basis.mu1(t) - mu1(t))) <= 1e-9


def test_basis_initial_conditions_exact():
    basis = solve_characteristic(presets.harmonic(omega=3.0), 2.0)
    assert basis.states(0.0).tolist() == [0.0, 2.0, 1.0, 0.0]


def test_basis_span():
    basis = solve_characteristic(presets.harmonic(omega=1.0), 1.0)
    with pytest.raises(OutOfChartError):
        basis.mu0(1.5)


def test_wronskian_harmonic():
    basis = solve_characteristic(presets.harmonic(omega=1.0), 3.0)
    report = wronskian_check(basis, np.linspace(0, 3, 50))
    assert report.sup_norm <= 1e-8


def test_wronskian_exponential():
    basis = solve_characteristic(presets.exponential(k=1.0), 1.0)
    t = np.linspace(0, 1, 30)
    assert wronskian_check(basis, t).sup_norm <= 1e-8
    assert_allclose(basis.wronskian(t), -2 * np.exp(-4 * t), rtol=1e-8)


def test_wronskian_free_particle_exact():
    basis = solve_characteristic(presets.free_particle(), 1.0)
    assert_allclose(basis.wronskian(np.linspace(0, 1, 9)), -2.0, rtol=1e-13)


def test_dense_output_matches_reintegration():
    coeffs = presets.harmonic(omega=2.0)
    basis = solve_characteristic(coeffs, 1.0)
    t_q = 0.37
    direct = solve_characteristic(coeffs, t_q).states(t_q)
    dense = basis.states(t_q)
    assert np.all(np.abs(dense - direct) <= 10 * (1e-10 * np.abs(direct) + 1e-12))


@pytest.mark.parametrize("coeffs", [presets.harmonic(omega=1.0), presets.exponential(k=1.0)])
def test_tolerance_refinement_converges(coeffs):
    exact = closed_form_basis(coeffs)
    t = np.linspace(0, 1, 41)

    def mismatch(rtol):
        basis = solve_characteristic(coeffs, 1.0, rtol=rtol, atol=rtol * 1e-2)
        return np.max(np.abs(basis.states(t) - exact.states(t)))

    coarse, fine = mismatch(1e-6), mismatch(1e-8)
    assert fine <= coarse / 5 or fine < 1e-13


def test_sign_changes_of_mu0():
    basis = solve_characteristic(presets.harmonic(omega=1.0), 4.0)
    (zero,) = basis.sign_changes("mu0")
    assert abs(zero - np.pi) < 4.0 / 4096


# fundamental solution


@pytest.mark.parametrize(
    ("coeffs", "expected"),
    [
        (presets.harmonic(omega=2.0), lambda t: np.ones_like(t)),
        (presets.exponential(k=0.7), lambda t: np.exp(-1.4 * t)),
        (presets.plasma(k=0.5), lambda t: np.ones_like(t)),
    ],
)
def test_lambda_factor(coeffs, expected):
    t = np.array([0.0, 0.3, 1.0])
    assert_allclose(lambda_factor(coeffs, t), expected(t), rtol=1e-12)


def test_fundamental_free_particle():
    coeffs = presets.free_particle()
    v = fundamental_solution(coeffs, solve_characteristic(coeffs, 1.0), 0.5)
    assert_allclose([v.alpha0, v.beta0, v.gamma0], [0.5, -1.0, 0.5], rtol=1e-10)
    assert_allclose([v.delta0, v.epsilon0, v.kappa0], 0.0, atol=1e-14)


def test_fundamental_harmonic():
    coeffs = presets.harmonic(omega=1.0)
    v = fundamental_solution(coeffs, solve_characteristic(coeffs, 1.0), np.pi / 4)
    assert_allclose(v.alpha0, 0.25, rtol=1e-9)
    assert_allclose(v.gamma0, 0.25, rtol=1e-9)
    assert_allclose(v.beta0, -np.sqrt(2) / 2, rtol=1e-9)


def test_fundamental_plasma_quadratures():
    k, t = 0.5, np.array([0.2, 0.5, 0.9])
    coeffs = presets.plasma(k=k)
    v = FundamentalSolution(coeffs, solve_characteristic(coeffs, 1.0)).values(t)
    assert_allclose(v.delta0, k * t, rtol=1e-9)
    assert_allclose(v.epsilon0, k * t, rtol=1e-9)
    assert_allclose(v.kappa0, -(k**2) * t**3 / 3, rtol=1e-9)
    assert_allclose(v.beta0, -v.lam / v.mu0, rtol=1e-14)


@pytest.mark.parametrize(
    "coeffs",
    [
        presets.free_particle(),
        presets.harmonic(omega=1.0),
        presets.exponential(k=0.5),
        presets.plasma(k=0.5),
        presets.example3(alpha0=0.1, beta0=1.0, gamma0=0.2, g0=1.0),
    ],
)
def test_small_time_asymptotics(coeffs):
    basis = closed_form_basis(coeffs)
    fs = FundamentalSolution(coeffs, basis, t_min=1e-6, t_end=1.0)
    t = 1e-3
    v = fs.values(t)
    assert abs(4 * t * v.alpha0 - 1) < 1e-2
    assert abs(-2 * t * v.beta0 - 1) < 1e-2
    assert abs(4 * t * v.gamma0 - 1) < 1e-2
    assert abs(v.delta0) < 1e-2
    assert abs(v.epsilon0) < 1e-2
    assert abs(v.kappa0) < 1e-2
    small = fs.asymptotic(t)
    assert_allclose(small.alpha0 * t, v.alpha0 * t, atol=1e-5)
    assert_allclose(small.gamma0 * t, v.gamma0 * t, atol=1e-5)


def test_fundamental_below_t_min_uses_asymptotics():
    coeffs = presets.free_particle()
    v = fundamental_solution(coeffs, solve_characteristic(coeffs, 1.0), 1e-4)
    assert_allclose(v.alpha0, 1 / (4e-4))
    assert_allclose(v.beta0, -1 / (2e-4))


def test_vanishing_custom_terms_skip_quadratures():
    coeffs = coefficients_from_dict({"b": "0.25", "c": "-0", "d": "0 * t^2", "g": "1 * t - 1 * t"})
    fs = FundamentalSolution(coeffs, solve_characteristic(coeffs, 1.0))
    assert fs.trivial_lambda
    assert fs.trivial_drive
    assert_allclose(lambda_factor(coeffs, [0.3, 0.9]), 1.0)


def test_singular_quadrature_past_zero_of_mu0_prime():
    coeffs = coefficients_from_dict({"b": "0.25", "f": "0.5"}, name="driven_oscillator")
    fs = FundamentalSolution(coeffs, solve_characteristic(coeffs, 2.0))
    assert abs(fs.t_singular - np.pi / 2) < 1e-8
    fs.values(1.2)
    with pytest.raises(SingularQuadratureError):
        fs.values(1.8)


# general solution


def test_free_particle_identity():
    t = np.array([0.0, 0.4, 1.0])
    s = general_solution(presets.free_particle(), RiccatiState.identity(), t)
    assert_allclose(s.mu, 1.0)
    assert_allclose(s.beta, 1.0)
    assert_allclose(s.gamma, -t)
    assert_allclose(np.stack([s.alpha, s.delta, s.epsilon, s.kappa]), 0.0)


def test_harmonic_identity():
    w, t = 1.3, np.linspace(0, 1, 7)
    s = general_solution(presets.harmonic(omega=w), RiccatiState.identity(), t)
    assert_allclose(s.mu, np.cos(w * t), rtol=1e-14)
    assert_allclose(s.alpha, -(w / 4) * np.tan(w * t), rtol=1e-14, atol=1e-16)
    assert_allclose(s.beta, 1 / np.cos(w * t), rtol=1e-14)
    assert_allclose(s.gamma, -np.tan(w * t) / w, rtol=1e-14, atol=1e-16)


def test_plasma_tappert():
    k, t = 0.5, np.linspace(0, 1, 6)
    s = general_solution(presets.plasma(k=k), RiccatiState.identity(), t)
    assert_allclose(s.delta, 2 * k * t, atol=1e-15)
    assert_allclose(s.epsilon, -2 * k * t**2, atol=1e-15)
    assert_allclose(s.kappa, -4 * k**2 * t**3 / 3, atol=1e-15)
    assert_allclose(s.gamma, -t, atol=1e-15)
    assert_allclose(s.mu, 1.0)


def test_exponential_identity():
    k, t = 0.5, np.linspace(0, 1, 6)
    s = general_solution(presets.exponential(k=k), RiccatiState.identity(), t)
    assert_allclose(s.mu, (1 + np.exp(-4 * k * t)) / 2, rtol=1e-14)
    assert_allclose(s.alpha, (k / 2) * np.tanh(2 * k * t), rtol=1e-13, atol=1e-16)
    assert_allclose(s.beta, 1 / np.cosh(2 * k * t), rtol=1e-13)
    assert_allclose(s.gamma, -np.tanh(2 * k * t) / (2 * k), rtol=1e-13, atol=1e-16)


PRESETS = [
    presets.free_particle(),
    presets.harmonic(omega=1.0),
    presets.exponential(k=0.5),
    presets.plasma(k=0.5),
    presets.example3(alpha0=0.1, beta0=1.0, gamma0=0.2, g0=1.0),
]


@pytest.mark.parametrize("coeffs", [*PRESETS, _driven()], ids=lambda c: c.name)
@pytest.mark.parametrize("init", [RiccatiState.identity(), INIT], ids=["identity", "general"])
def test_composition_and_direct_agree(coeffs, init):
    t = np.linspace(0, 1, 21)
    composed = build_trajectory(coeffs, init, 1.0, method="composition")(t).as_array()
    direct = build_trajectory(coeffs, init, 1.0, method="direct")(t).as_array()
    assert_allclose(composed, direct, rtol=1e-7, atol=1e-9)


@pytest.mark.parametrize("coeffs", PRESETS[:4], ids=lambda c: c.name)
def test_closed_forms_agree_with_direct(coeffs):
    t = np.linspace(0, 1, 21)
    closed = build_trajectory(coeffs, INIT, 1.0, method="closed_form")(t).as_array()
    direct = build_trajectory(coeffs, INIT, 1.0, method="direct")(t).as_array()
    assert_allclose(closed, direct, rtol=1e-7, atol=1e-9)


@pytest.mark.parametrize("coeffs", [presets.exponential(k=0.5), _driven()], ids=lambda c: c.name)
def test_beta_mu_follows_lambda(coeffs):
    t = np.linspace(0, 1, 11)
    s = build_trajectory(coeffs, INIT, 1.0, method="composition")(t)
    assert_allclose(s.beta * s.mu, INIT.beta * INIT.mu * lambda_factor(coeffs, t), rtol=1e-8)


def test_alpha_consistent_with_mu():
    coeffs = _driven()
    trajectory = build_trajectory(coeffs, INIT, 1.0, method="direct")
    t = np.linspace(0.1, 0.9, 9)
    s = trajectory(t)
    h = 1e-4
    dmu = (trajectory(t + h).mu - trajectory(t - h).mu) / (2 * h)
    d = -0.1
    assert_allclose(s.alpha, dmu / (4 * s.mu) - d / 2, rtol=1e-7)


def test_gamma_monotone():
    t = np.linspace(0, 1, 50)
    s = build_trajectory(_driven(), INIT, 1.0)(t)
    assert np.all(np.diff(s.gamma) < 0)


def test_focal_point_refused():
    with pytest.raises(FocalPointError) as err:
        general_solution(presets.harmonic(omega=1.0), None, np.pi / 2)
    assert err.value.details["t"] == pytest.approx(np.pi / 2)


def test_initial_data_domain():
    with pytest.raises(DomainError):
        build_trajectory(presets.free_particle(), RiccatiState.from_sequence([1, 0, 0, 0, 0, 0, 0]))


def test_inverse_time():
    trajectory = build_trajectory(presets.harmonic(omega=1.0), None, 1.2)
    t = trajectory.inverse_time(-np.tan(0.7))
    assert t == pytest.approx(0.7, abs=1e-12)
    with pytest.raises(OutOfChartError):
        trajectory.inverse_time(1.0)


# residuals


def test_residual_harmonic_closed_form():
    coeffs = presets.harmonic(omega=1.0)
    trajectory = build_trajectory(coeffs, None, 1.3)
    report = riccati_residual(coeffs, trajectory, np.linspace(0.05, 1.2, 40))
    assert report.sup_norm <= 1e-7
    assert set(report.per_equation) == set(STATE_NAMES)


def test_residual_plasma_closed_form():
    coeffs = presets.plasma(k=0.5)
    trajectory = build_trajectory(coeffs, None, 1.0)
    assert riccati_residual(coeffs, trajectory, np.linspace(0, 1, 30)).sup_norm <= 1e-7


def test_residual_composition_trajectory():
    coeffs = presets.example3(alpha0=0.1, beta0=1.0, gamma0=0.2, g0=1.0)
    trajectory = build_trajectory(coeffs, INIT, 1.0, method="composition")
    assert riccati_residual(coeffs, trajectory, np.linspace(0, 1, 15)).sup_norm <= 1e-6


class _Corrupted(Trajectory):
    def __init__(self, inner: Trajectory) -> None:
        super().__init__(inner.coeffs, inner.init, inner.t_span)
        self.inner = inner

    def state(self, t):
        s = self.inner.state(t)
        return RiccatiState(s.t, s.mu, s.alpha, s.beta, s.gamma, s.delta, s.epsilon, 1.01 * s.kappa)


def test_residual_detects_corruption():
    coeffs = presets.plasma(k=0.5)
    trajectory = _Corrupted(build_trajectory(coeffs, None, 1.0))
    report = riccati_residual(coeffs, trajectory, np.linspace(0, 1, 30))
    assert report.per_equation["kappa"] > 1e-3
    assert report.per_equation["alpha"] < 1e-9
