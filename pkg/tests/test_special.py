import mpmath
import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from curved_maxwell import special
from curved_maxwell.errors import ConvergenceError
from curved_maxwell.special import HypParams, hyp2f1, hyp2f1_derivative, nonpositive_integer

disk = st.complex_numbers(max_magnitude=0.85, allow_nan=False, allow_infinity=False)
par = st.complex_numbers(max_magnitude=6, allow_nan=False, allow_infinity=False)


def _exact_poly(n, b, c, z):
    """Terminating F(-n, b; c; z) in exact Gaussian-rational arithmetic."""
    total, term = sp.Integer(1), sp.Integer(1)
    for k in range(n):
        term = sp.expand(term * (-n + k) * (b + k) / ((c + k) * (k + 1)) * z)
        total += term
    return complex(sp.N(sp.expand(total), 30))


@pytest.mark.parametrize("n,b,c,z", [
    (3, sp.Rational(7, 2) - sp.I / 2, 4, sp.Rational(1, 3) + sp.Rational(2, 5) * sp.I),
    (5, 6, 10, 1 - sp.exp(-sp.I * sp.Rational(3, 2)).rewrite(sp.cos)),
    (4, sp.Rational(-1, 3), sp.Rational(5, 2), 3 + 4 * sp.I),
    (0, 2, 3, 7),
])
def test_polynomial_against_exact_rational(n, b, c, z):
    zc = complex(sp.N(z, 30))
    got = hyp2f1(-n, complex(sp.N(b)), complex(sp.N(c)), zc)
    exact = _exact_poly(n, sp.nsimplify(b), sp.nsimplify(c), sp.nsimplify(z) if n else z)
    assert abs(got - exact) <= 1e-13 * max(1.0, abs(exact))


def test_polynomial_outside_unit_disk_matches_mpmath():
    # S3 arguments |1 - z| = 1 reach |z| = 2
    z = 1 - np.exp(-2j * 1.4)
    for n in range(5):
        ref = complex(mpmath.hyp2f1(-n, 3 + n + 0.5, 6, z))
        assert hyp2f1(-n, 3 + n + 0.5, 6, z) == pytest.approx(ref, rel=1e-12, abs=1e-14)


@given(par, par, st.floats(0.5, 8), disk)
def test_series_against_mpmath(a, b, c, z):
    ref = complex(mpmath.hyp2f1(a, b, c, z))
    got = hyp2f1(a, b, c, z)
    assert abs(got - ref) <= 1e-10 * max(1.0, abs(ref))


@given(par, par, st.floats(0.5, 8), disk)
def test_symmetric_in_alpha_beta(a, b, c, z):
    x, y = hyp2f1(a, b, c, z), hyp2f1(b, a, c, z)
    assert abs(x - y) <= 1e-12 * max(1.0, abs(x))


@given(par, par, st.floats(0.5, 8), disk)
def test_contiguous_relation(a, b, c, z):
    # c F(a) - c F(a+1) + b z F(a+1, b+1; c+1) = 0
    lhs = c * hyp2f1(a, b, c, z) - c * hyp2f1(a + 1, b, c, z) + b * z * hyp2f1(a + 1, b + 1, c + 1, z)
    scale = max(1.0, abs(c * hyp2f1(a, b, c, z)), abs(b * z * hyp2f1(a + 1, b + 1, c + 1, z)))
    assert abs(lhs) <= 1e-10 * scale


def test_derivative_against_fd():
    z, h = 0.3 + 0.2j, 1e-5
    for a, b, c in [(1.2, -0.7 + 1j, 2.5), (-3, 4.5, 8), (2 - 1j, 2 + 1j, 3)]:
        fd = (hyp2f1(a, b, c, z + h) - hyp2f1(a, b, c, z - h)) / (2 * h)
        assert hyp2f1_derivative(a, b, c, z) == pytest.approx(fd, rel=1e-8)


def test_second_derivative_against_mpmath():
    p = HypParams(1.5 - 0.5j, 2.5 + 0.5j, 4)
    z = 0.4 - 0.1j
    ref = complex(mpmath.diff(lambda x: mpmath.hyp2f1(p.alpha, p.beta, p.gamma, x), z, 2))
    assert p.second_derivative(z) == pytest.approx(ref, rel=1e-10)


def test_special_values():
    z = np.array([0.1, -0.4, 0.5j])
    assert np.allclose(hyp2f1(1, 1, 2, z), -np.log(1 - z) / z, atol=1e-15)
    assert hyp2f1(0, 3, 4, 50.0) == 1
    assert hyp2f1(2, 3, 4, 0.0) == 1


def test_vectorised_shape():
    z = np.linspace(-0.5, 0.5, 12).reshape(3, 4)
    assert hyp2f1(0.5, 1.5, 2.5, z).shape == (3, 4)
    assert isinstance(hyp2f1(0.5, 1.5, 2.5, 0.1), complex)


def test_degree_and_zero_parameters():
    assert HypParams(-3, 2, 5).degree == 3
    assert HypParams(2, -1, 5).degree == 1
    assert HypParams(0.5, 1, 2).degree is None
    assert HypParams(0, 1, 2).second_derivative(0.5) == 0


def test_nonpositive_integer():
    assert nonpositive_integer(-4 + 0j) == 4
    assert nonpositive_integer(0) == 0
    assert nonpositive_integer(1) is None
    assert nonpositive_integer(-2 + 1e-3j) is None


def test_series_outside_disk_raises():
    with pytest.raises(ConvergenceError):
        hyp2f1(0.5, 0.5, 1.5, 1.2)


def test_gamma_pole_raises():
    with pytest.raises(ConvergenceError):
        hyp2f1(-4, 1, -2, 0.3)
    with pytest.raises(ConvergenceError):
        hyp2f1(0.5, 1, -2, 0.3)


small_disk = st.complex_numbers(max_magnitude=0.5, allow_nan=False, allow_infinity=False)


def test_degree_two_at_one_plus_i_exact():
    z = 1 + sp.I
    exact = 1 + sp.Rational(-2 * 2, 4) * z + sp.Rational(-2 * -1 * 2 * 3, 4 * 5 * 2) * z**2
    assert abs(hyp2f1(-2, 2, 4, 1 + 1j) - complex(sp.expand(exact))) <= 1e-14


@pytest.mark.parametrize("n", [6, 13, 20])
def test_high_degree_polynomial_exact(n):
    b, c, z = sp.Rational(7, 3) + sp.I, sp.Rational(9, 2), sp.Rational(3, 5) - sp.Rational(6, 5) * sp.I
    exact = _exact_poly(n, b, c, z)
    got = hyp2f1(-n, complex(b), complex(c), complex(z))
    assert abs(got - exact) <= 1e-13 * max(1.0, abs(exact))


@given(par, par, disk)
def test_degree_one_closed_forms(b, c, z):
    if abs(c) < 0.5:
        return
    assert hyp2f1(-1, b, c, z) == pytest.approx(1 - b / c * z, rel=1e-14, abs=1e-14)
    assert hyp2f1_derivative(-1, b, c, z) == pytest.approx(-b / c, rel=1e-14, abs=1e-14)
    assert hyp2f1_derivative(0, b, c, z) == 0


@given(par, par, st.floats(0.5, 8), small_disk)
def test_symmetry_tight(a, b, c, z):
    x, y = hyp2f1(a, b, c, z), hyp2f1(b, a, c, z)
    assert abs(x - y) <= 1e-13 * max(1.0, abs(x))


@given(st.complex_numbers(max_magnitude=3), st.complex_numbers(max_magnitude=3), st.floats(0.5, 6), small_disk)
def test_contiguous_relation_tight(a, b, c, z):
    lhs = c * hyp2f1(a, b, c, z) - c * hyp2f1(a + 1, b, c, z) + b * z * hyp2f1(a + 1, b + 1, c + 1, z)
    assert abs(lhs) <= 1e-12 * max(1.0, abs(c * hyp2f1(a, b, c, z)))


def test_exact_fallback_engages_on_cancellation():
    z = 0.6 - 1.2j
    assert hyp2f1(-20, 7 / 3 + 1j, 4.5, z) == special._polynomial_exact(-20, 7 / 3 + 1j, 4.5, z, 20)


def test_near_integer_parameter_is_not_snapped():
    assert nonpositive_integer(1e-12) is None
    assert hyp2f1(-1, 1e-12, 1, 0.5) == pytest.approx(1 - 0.5e-12, abs=1e-16)
