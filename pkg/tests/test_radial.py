import numpy as np
import pytest
from scipy.optimize import brentq
from hypothesis import given
from hypothesis import strategies as st

from curved_maxwell import radial as R
from curved_maxwell.errors import CoordinateError, QuantizationError
from curved_maxwell.geometry import SpaceModel

S3, H3 = SpaceModel.s3(), SpaceModel.h3()
S3_CASES = [(j, n) for j in range(1, 5) for n in range(4)]
H3_CASES = [(j, w) for j in range(1, 5) for w in (0.5, 1.3, 2.7)]


@pytest.mark.parametrize("j,n", S3_CASES)
def test_s3_quantized_residuals(j, n):
    p = R.RadialParams(S3, n + 1 + j, j)
    sol = R.solve_radial(p, R.default_grid(S3, 200))
    assert sol.residual_2nd <= 1e-8
    assert sol.residual_1st <= 1e-8
    assert np.max(np.abs(R.reduced_system(p, sol))) / np.max(np.abs(sol.F1)) <= 1e-8


@pytest.mark.parametrize("j,n", S3_CASES)
def test_s3_polynomial_degree_is_n(j, n):
    p = R.RadialParams(S3, n + 1 + j, j)
    assert p.quantum_number() == n
    assert R.reduction(p).hyp.degree == n


@pytest.mark.parametrize("j,n", [(1, 0), (2, 3), (4, 1)])
def test_s3_closed_form_vs_rk(j, n):
    p = R.RadialParams(S3, n + 1 + j, j)
    G0, dG0 = R.closed_form_G(p, 0.1)
    chi, G, _ = R.ode_oracle(p, 0.1, np.pi - 0.1, (G0[0], dG0[0]), n=80, rtol=1e-12)
    Gc, _ = R.closed_form_G(p, chi)
    assert np.max(np.abs(G - Gc)) / np.max(np.abs(Gc)) <= 1e-7


@pytest.mark.parametrize("j,w", H3_CASES)
def test_h3_closed_form_vs_rk(j, w):
    p = R.RadialParams(H3, w, j)
    G0, dG0 = R.closed_form_G(p, 0.05)
    chi, G, _ = R.ode_oracle(p, 0.05, 2.0, (G0[0], dG0[0]), n=100, rtol=1e-12)
    scale = np.max(np.abs(G))
    Gc, _ = R.closed_form_G(p, chi)
    assert np.max(np.abs(G - Gc)) / scale <= 1e-6
    # z(2) = 1 - e^-4 < 0.99, so this grid is covered by the series alone
    Gs, _, _ = R.local_solution(p, chi)
    assert np.max(np.abs(G - Gs)) / scale <= 1e-6


@pytest.mark.parametrize("j,w", [(1, 0.5), (3, 2.7)])
def test_h3_residuals_and_continuation(j, w):
    p = R.RadialParams(H3, w, j)
    chi = np.linspace(0.05, 4.0, 150)
    sol = R.solve_radial(p, chi)
    assert sol.residual_2nd <= 1e-8
    assert sol.residual_1st <= 1e-8
    early, _ = R.closed_form_G(p, chi, series_max=0.5)
    assert np.max(np.abs(early - sol.G)) / np.max(np.abs(sol.G)) <= 1e-6


@given(st.integers(1, 6), st.floats(0.05, 6.0))
def test_h3_any_frequency_solves_the_equation(j, w):
    p = R.RadialParams(H3, w, j)
    sol = R.solve_radial(p, np.linspace(0.05, 1.5, 40))
    assert sol.residual_2nd <= 1e-8


@given(st.integers(0, 6), st.floats(0.1, 9.0), st.sampled_from(["regular", "singular"]), st.sampled_from([-1, 1]))
def test_exponent_conditions_vanish(j, w, branch, b_sign):
    for model in (S3, H3):
        ca, cb = R.reduction(R.RadialParams(model, w, j), branch, b_sign).exponent_conditions(R.RadialParams(model, w, j))
        assert abs(ca) < 1e-11 and abs(cb) < 1e-11


@pytest.mark.parametrize("n", range(4))
def test_nu_zero_reduces_to_sine(n):
    # with nu = 0 the chi=0-regular solution is proportional to sin(omega chi)
    p = R.RadialParams(S3, n + 1, 0)
    chi = np.linspace(0.1, np.pi - 0.1, 30)
    G, _, _ = R.local_solution(p, chi)
    k = G[0] / np.sin(p.omega * chi[0])
    assert np.allclose(G, k * np.sin(p.omega * chi), atol=1e-12 * abs(k))


def test_off_spectrum_raises_quantization_error():
    with pytest.raises(QuantizationError):
        R.solve_radial(R.RadialParams(S3, 2.5, 1), np.linspace(0.1, 3.0, 10))


@pytest.mark.parametrize("j", range(1, 5))
def test_regularity_only_at_quantized_frequency(j):
    for n in range(4):
        assert R.is_regular(R.RadialParams(S3, n + 1 + j, j))
        assert not R.is_regular(R.RadialParams(S3, n + 1.5 + j, j))
        assert not R.is_regular(R.RadialParams(S3, 1.05 * (n + 1 + j), j))


def test_singular_branch_blows_up_at_origin():
    p = R.RadialParams(S3, 3.0, 2)
    chi = np.array([1e-3, 1e-2])
    reg, sing = R.leading_power(p, "regular", chi), R.leading_power(p, "singular", chi)
    assert reg[0] < reg[1] and sing[0] > sing[1]


@pytest.mark.parametrize("model", [S3, H3])
def test_change_of_variable_identities(model):
    res = R.change_of_variable_residuals(model, np.linspace(0.05, np.pi - 0.05, 50))
    assert max(res.values()) <= 1e-12


def test_first_order_assembly_definitions():
    p = R.RadialParams(S3, 4.0, 2)
    chi = np.linspace(0.2, 2.9, 20)
    sol = R.solve_radial(p, chi)
    assert np.allclose(sol.F, -1j / p.omega * sol.dG)
    assert np.allclose(sol.F2, 1j * p.nu * sol.G / (p.omega * np.sin(chi)))
    assert np.allclose(sol.F1 * np.sqrt(2), sol.F + sol.G)
    assert np.allclose(sol.f3 * np.sin(chi), sol.F3)


def test_guards():
    with pytest.raises(CoordinateError):
        R.solve_radial(R.RadialParams(S3, 2.0, 1), np.array([0.0, 1.0]))
    with pytest.raises(CoordinateError):
        R.ode_oracle(R.RadialParams(H3, 1.0, 1), 0.0, 1.0, (0, 1))
    with pytest.raises(ValueError):
        R.RadialParams(S3, -1.0, 1)
    with pytest.raises(ValueError):
        R.RadialParams(S3, 2.0, 1.5)
    with pytest.raises(ValueError):
        R.endpoint_growth(R.RadialParams(H3, 2.0, 1))


def _equator_wronskian(j, w):
    # u(pi - chi) is the solution regular at pi, so dependence <=> u u' = 0 at pi/2
    p = R.RadialParams(S3, w, j)
    G0, dG0, _ = R.local_solution(p, np.array([0.1]))
    G, dG = R.integrate_radial(p, 0.1, np.array([np.pi / 2]), (G0[0], dG0[0]), rtol=1e-12)
    return float((G[0] * dG[0] / (G0[0] / abs(G0[0])) ** 2).real)


@pytest.mark.parametrize("j", [1, 3])
def test_shooting_recovers_spectrum(j):
    grid = np.linspace(j + 0.55, j + 4.45, 40)
    vals = np.array([_equator_wronskian(j, w) for w in grid])
    roots = [brentq(lambda w: _equator_wronskian(j, w), grid[i], grid[i + 1], xtol=1e-13)
             for i in np.flatnonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))]
    assert np.allclose(roots, np.arange(j + 1, j + 5), atol=1e-9)


@pytest.mark.parametrize("j,w", [(1, 1.3), (4, 0.5)])
def test_h3_partner_b_branch(j, w):
    p = R.RadialParams(H3, w, j)
    chi = np.linspace(0.05, 3.0, 60)
    sol = R.solve_radial(p, chi, b_sign=1)
    assert sol.residual_2nd <= 1e-8 and sol.residual_1st <= 1e-8
    # both b branches describe the same chi=0-regular solution up to a constant
    other = R.solve_radial(p, chi, b_sign=-1)
    k = sol.G[10] / other.G[10]
    assert np.allclose(sol.G, k * other.G, rtol=1e-8)
