from math import factorial

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import eval_legendre, lpmv

from curved_maxwell import wigner as w

theta = np.linspace(0.05, np.pi - 0.05, 50)
jm = st.integers(1, 8).flatmap(lambda j: st.tuples(st.just(j), st.integers(-j, j)))


def test_spin_one_closed_forms():
    c, s = np.cos(theta), np.sin(theta)
    assert np.allclose(w.small_d(1, 0, 0, theta), c, atol=1e-15)
    assert np.allclose(w.small_d(1, 1, 0, theta), -s / np.sqrt(2), atol=1e-15)
    assert np.allclose(w.small_d(1, 1, 1, theta), (1 + c) / 2, atol=1e-15)
    assert np.allclose(w.small_d(1, 1, -1, theta), (1 - c) / 2, atol=1e-15)


@pytest.mark.parametrize("j", range(0, 9))
def test_d00_is_legendre(j):
    assert np.allclose(w.small_d(j, 0, 0, theta), eval_legendre(j, np.cos(theta)), atol=1e-13)


@pytest.mark.parametrize("j,m", [(2, 1), (3, 2), (5, -3)])
def test_dm0_is_associated_legendre(j, m):
    # d^j_{m0} = sqrt((j-m)!/(j+m)!) P_j^m(cos) with the Condon-Shortley phase kept by lpmv
    k = np.sqrt(factorial(j - m) / factorial(j + m))
    assert np.allclose(w.small_d(j, m, 0, theta), k * lpmv(m, j, np.cos(theta)), atol=1e-12)


@pytest.mark.parametrize("j", [1, 2, 5, 8])
def test_small_d_orthogonal(j):
    th = 0.83
    d = np.array([[w.small_d(j, a, b, th) for b in range(-j, j + 1)] for a in range(-j, j + 1)])
    assert np.allclose(d @ d.T, np.eye(2 * j + 1), atol=1e-13)


@given(jm, st.integers(-8, 8), st.floats(0.01, np.pi - 0.01))
def test_small_d_symmetries(jmv, m2, th):
    j, m1 = jmv
    if abs(m2) > j:
        return
    d = w.small_d(j, m1, m2, th)
    sign = (-1) ** (m1 - m2)
    assert w.small_d(j, m2, m1, th) == pytest.approx(sign * d, abs=1e-12)
    assert w.small_d(j, -m1, -m2, th) == pytest.approx(sign * d, abs=1e-12)


@pytest.mark.parametrize("j", range(1, 9))
def test_six_recurrences(j):
    worst = max(np.max(np.abs(w.recurrence_residuals(j, m, theta))) for m in range(-j, j + 1))
    assert worst <= 1e-10


@given(jm, st.integers(-1, 1), st.floats(0.1, np.pi - 0.1))
def test_analytic_derivative_matches_fd(jmv, s, th):
    j, m = jmv
    h = 1e-5
    fd = (w.small_d(j, m, s, th + h) - w.small_d(j, m, s, th - h)) / (2 * h)
    assert w.small_d_dtheta(j, m, s, th) == pytest.approx(fd, abs=1e-6)


def test_field_D_phase_convention():
    j, m, phi = 3, 2, 0.7
    assert w.field_D(j, m, 1, phi, 0.4) == pytest.approx(np.exp(1j * m * phi) * w.small_d(j, -m, 1, 0.4))


def test_field_D_vanishes_outside_range():
    assert np.all(w.field_D(1, 0, 2, np.zeros(3), np.ones(3)) == 0)


@pytest.mark.parametrize("j,m", [(1, 0), (1, -1), (2, 1), (3, 3), (5, -2)])
def test_angular_action_matches_fd(j, m, rng):
    th = rng.uniform(0.2, np.pi - 0.2, 20)
    ph = rng.uniform(0, 2 * np.pi, 20)
    f1, f2, f3 = 0.3 - 0.1j, 1.1 + 0.4j, -0.7 + 0.2j
    exact = w.angular_action(j, m, f1, f2, f3, th, ph)
    fd = w.angular_action_fd(j, m, f1, f2, f3, th, ph)
    assert np.max(np.abs(exact - fd)) <= 1e-6


def test_angular_factors():
    f = w.AngularFactors.for_j(3)
    assert f.nu**2 == pytest.approx(12)
    assert f.a_ang**2 == pytest.approx(10)
    with pytest.raises(ValueError):
        w.AngularFactors.for_j(0)


@pytest.mark.parametrize("args", [(2, 3, 0), (-1, 0, 0), (1.5, 0, 0), (w.J_MAX + 1, 0, 0)])
def test_index_validation(args):
    with pytest.raises(ValueError):
        w.small_d(*args, 0.3)
