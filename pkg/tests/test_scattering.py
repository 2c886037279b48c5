import numpy as np
import pytest
from numpy.testing import assert_allclose

from nlscanon.scattering import (
    PAULI,
    ScatteringData,
    centered_norming_constant,
    evolve_scattering_data,
    fit_norming_constants,
    flatness_residual,
    glm_field,
    glm_reconstruct,
    lax_matrices,
    zs_apply,
)
from nlscanon.solutions import build_solution
from nlscanon.solutions.soliton_solution import one_soliton_value, two_soliton_value
from nlscanon.utils.errors import DomainError, MultiplicityError, ShapeError
from nlscanon.utils.report import Grid2D
from nlscanon.verify import residual_standard

GRID = Grid2D(-10, 10, 201, 0, 1, 11)
TWO_SOLITON = ScatteringData((0.5j, 1.5j), (-2j, -6j))


# Lax pair


def test_vacuum_matrices():
    lam = 0.7 + 0.1j
    m = lax_matrices(0.0, 0.0, lam)
    assert_allclose(m.U, -1j * lam * PAULI["sigma3"], atol=1e-15)
    assert_allclose(m.V, -2j * lam**2 * PAULI["sigma3"], atol=1e-15)


def test_one_soliton_matrices_at_origin():
    m = lax_matrices(one_soliton_value(0.0, 0.0), 0.0, 0.3)
    assert_allclose(m.U, [[-0.3j, 1], [-1, 0.3j]], atol=1e-15)


@pytest.mark.parametrize("branch", ["focusing", "defocusing"])
def test_matrices_are_traceless(branch):
    rng = np.random.default_rng(1)
    psi, psi_x = rng.normal(size=(2, 100)) + 1j * rng.normal(size=(2, 100))
    lam = complex(*rng.normal(size=2))
    m = lax_matrices(psi, psi_x, lam, branch)
    assert m.U.shape == (100, 2, 2)
    assert np.max(np.abs(np.trace(m.U, axis1=-2, axis2=-1))) <= 1e-14
    assert np.max(np.abs(np.trace(m.V, axis1=-2, axis2=-1))) <= 1e-14


def test_zs_apply_vacuum():
    lam = 0.4
    dx, dt = zs_apply(lax_matrices(0.0, 0.0, lam), np.array([1.0, 0.0]))
    assert_allclose(dx, [-1j * lam, 0], atol=1e-15)
    assert_allclose(dt, [-2j * lam**2, 0], atol=1e-15)


@pytest.mark.parametrize(("branch", "sign"), [("focusing", 1), ("defocusing", -1)])
def test_zs_apply_componentwise(branch, sign):
    rng = np.random.default_rng(2)
    psi, psi_x, p1, p2 = rng.normal(size=(4, 100)) + 1j * rng.normal(size=(4, 100))
    lam = 0.3 - 0.2j
    dx, dt = zs_apply(lax_matrices(psi, psi_x, lam, branch), np.stack([p1, p2], axis=-1))
    mod2 = np.abs(psi) ** 2
    assert_allclose(dx[:, 0], -1j * lam * p1 + psi * p2, atol=1e-14)
    assert_allclose(dx[:, 1], -sign * np.conj(psi) * p1 + 1j * lam * p2, atol=1e-14)
    assert_allclose(
        dt[:, 0], 1j * (-2 * lam**2 + sign * mod2) * p1 + (2 * lam * psi + 1j * psi_x) * p2, atol=1e-13
    )
    assert_allclose(
        dt[:, 1],
        sign * (-2 * lam * np.conj(psi) + 1j * np.conj(psi_x)) * p1 + 1j * (2 * lam**2 - sign * mod2) * p2,
        atol=1e-13,
    )


def test_zs_apply_is_linear():
    rng = np.random.default_rng(3)
    m = lax_matrices(0.8 + 0.1j, -0.3j, 0.5 + 0.5j)
    p, q = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    a, b = 0.7 - 0.2j, -1.3
    left = zs_apply(m, a * p + b * q)
    for lhs, rp, rq in zip(left, zs_apply(m, p), zs_apply(m, q), strict=True):
        assert_allclose(lhs, a * rp + b * rq, atol=1e-14)


def test_unknown_branch():
    with pytest.raises(ValueError, match="unknown branch"):
        lax_matrices(0.0, 0.0, 0.3, "mixed")


@pytest.mark.parametrize("lam", [0.3, 1.0, 0.7 + 0.2j])
def test_flatness_of_solitons(lam):
    assert flatness_residual(build_solution({"type": "one_soliton"}), lam, GRID).sup_norm <= 1e-10
    assert flatness_residual(build_solution({"type": "two_soliton"}), lam, GRID).sup_norm <= 1e-8


def test_flatness_detects_non_solutions():
    scaled = build_solution({"type": "one_soliton"}).scaled(1.1)
    assert flatness_residual(scaled, 0.3, GRID).sup_norm >= 1e-2


def test_flatness_by_differences():
    psi = build_solution({"type": "one_soliton"})
    report = flatness_residual(psi, 0.3, GRID, method="central6", step=(1e-2, 1e-2))
    assert report.method == "central6"
    assert report.sup_norm <= 1e-8


# scattering data


def test_scattering_data_validation():
    with pytest.raises(ShapeError):
        ScatteringData((0.5j,), ())
    with pytest.raises(DomainError):
        ScatteringData((0.5,), (-1j,))
    assert ScatteringData((0.5j,), (-1j,)).reflectionless


def test_evolution_identity_and_modulus():
    data = ScatteringData((0.5j, 1.5j), (-1j + 0.2, -3j), t0=0.3)
    assert evolve_scattering_data(data, 0.3).norming == data.norming
    later = evolve_scattering_data(data, 1.7)
    assert later.t0 == 1.7
    assert_allclose(np.abs(later.norming), np.abs(data.norming), rtol=1e-14)


def test_evolution_of_reflection():
    data = ScatteringData((0.5j,), (-1j,), reflection=lambda lam: 0.1 / (1 + lam**2))
    later = evolve_scattering_data(data, 0.5)
    lam = np.array([0.3, -1.2])
    assert_allclose(later.reflection(lam), data.reflection(lam) * np.exp(2j * lam**2), rtol=1e-14)


def test_evolve_then_reconstruct():
    data = ScatteringData((0.4 + 0.5j, -0.2 + 1.1j), (0.3 - 1j, -2j))
    later = evolve_scattering_data(data, 0.6)
    x = np.linspace(-5, 5, 21)
    assert_allclose(glm_reconstruct(later, x, 0.9), glm_reconstruct(data, x, 0.9), rtol=1e-12, atol=1e-14)


# reconstruction


def test_centered_single_soliton():
    data = ScatteringData((0.5j,), (centered_norming_constant(0.5),))
    x, t = np.meshgrid(np.linspace(-8, 8, 41), np.linspace(0, 2, 5))
    psi = glm_reconstruct(data, x, t)
    assert_allclose(np.abs(psi), 1 / np.cosh(x), rtol=1e-8)
    assert_allclose(psi, one_soliton_value(x, t), atol=1e-12)


@pytest.mark.parametrize("eta", [0.3, 1.2])
def test_single_soliton_height(eta):
    data = ScatteringData((1j * eta,), (centered_norming_constant(eta),))
    x = np.linspace(-20, 20, 4001)
    psi = np.abs(glm_reconstruct(data, x, 0.4))
    assert psi.max() == pytest.approx(2 * eta, rel=1e-12)
    assert x[np.argmax(psi)] == pytest.approx(0.0, abs=1e-9)


def test_two_soliton_initial_profile():
    x = np.linspace(-8, 8, 81)
    assert_allclose(glm_reconstruct(TWO_SOLITON, x, 0.0), 2 / np.cosh(x), atol=1e-12)


def test_two_soliton_matches_breather():
    t = np.linspace(0, np.pi / 4, 41)
    psi = glm_reconstruct(TWO_SOLITON, 0.0, t)
    assert np.max(np.abs(np.abs(psi) - np.abs(two_soliton_value(0.0, t)))) <= 1e-6


def test_fitted_norming_constants():
    x = np.linspace(-6, 6, 61)
    norming = fit_norming_constants((0.5j, 1.5j), lambda s: 2 / np.cosh(s), x, guess=(-2.1j, -5.7j))
    data = ScatteringData((0.5j, 1.5j), norming)
    assert np.max(np.abs(glm_reconstruct(data, x, 0.0) - 2 / np.cosh(x))) <= 1e-8
    t = np.linspace(0, np.pi / 4, 21)
    assert np.max(np.abs(np.abs(glm_reconstruct(data, 0.0, t)) - np.abs(two_soliton_value(0.0, t)))) <= 1e-6


@pytest.mark.parametrize(
    "data",
    [
        ScatteringData((0.5j,), (-1j,)),
        ScatteringData((0.3 + 0.6j, -0.2 + 0.9j), (0.5 - 1j, -1.5j)),
        ScatteringData((0.3 + 0.6j, -0.2 + 0.9j, 0.1 + 0.8j), (0.5 - 1j, -1.5j, 0.8 + 0.4j)),
    ],
    ids=["N1", "N2", "N3"],
)
def test_reconstruction_solves_standard_equation(data):
    psi = glm_field(data)
    assert psi.has_derivatives
    report = residual_standard(psi, GRID, branch="focusing")
    assert report.method == "analytic_derivatives"
    assert report.sup_norm <= 1e-6


def test_reconstruction_derivatives_match_one_soliton():
    psi = glm_field(ScatteringData((0.5j,), (-1j,)))
    one = build_solution({"type": "one_soliton"})
    x, t = np.meshgrid(np.linspace(-6, 6, 25), np.linspace(0, 1, 5))
    for name in ("dx", "dxx", "dt"):
        assert_allclose(psi.derivative(name, x, t), one.derivative(name, x, t), atol=1e-10)


def test_reconstruction_decays():
    eta = 0.5
    x_max = 15 / eta
    psi = glm_reconstruct(TWO_SOLITON, np.array([-x_max, x_max]), 0.7)
    assert np.max(np.abs(psi)) <= 1e-8


def test_reconstruction_far_field():
    data = ScatteringData((1.5j,), (centered_norming_constant(1.5),))
    psi = glm_reconstruct(data, np.array([-100.0, -200.0, -300.0, 300.0]), 0.0)
    assert np.all(np.isfinite(psi))
    assert np.max(np.abs(psi)) <= 1e-12


def test_reconstruction_far_field_derivatives():
    psi = glm_field(TWO_SOLITON)
    x = np.array([-400.0, -250.0, 250.0, 400.0])
    assert np.max(np.abs(psi(x, 0.7))) <= 1e-10
    for name in ("dx", "dxx", "dt"):
        assert np.max(np.abs(psi.derivative(name, x, 0.7))) <= 1e-10


def test_reconstruction_errors():
    with pytest.raises(MultiplicityError):
        glm_reconstruct(ScatteringData((0.5j, 0.5j), (-1j, -2j)), 0.0, 0.0)
    with pytest.raises(DomainError):
        glm_reconstruct(ScatteringData((0.5j,), (-1j,), reflection=lambda lam: 0 * lam), 0.0, 0.0)


def test_empty_data_is_vacuum():
    assert_allclose(glm_reconstruct(ScatteringData((), ()), np.linspace(-1, 1, 5), 0.3), 0.0)
