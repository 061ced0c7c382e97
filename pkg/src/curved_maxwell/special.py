"""Gauss hypergeometric function F(alpha, beta; gamma; z) for complex data.

Two paths:

* polynomial: alpha (or beta) a non-positive integer -n, summed over n + 1
  terms, valid for every z.  Where cancellation between terms could cost
  more than ~1e-14 of the result the sum is redone in exact rational
  arithmetic on the (exactly representable) float inputs;
* series: plain Taylor series inside the unit disk.

No analytic continuation beyond |z| = 1 is attempted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConvergenceError

SERIES_RTOL = 1e-17
SERIES_QUIET_TERMS = 3
SERIES_MAX_TERMS = 10_000
SERIES_BLOCK = 125
_INT_ULPS = 8
POLY_RTOL = 1e-14
_EPS = np.finfo(float).eps


def nonpositive_integer(x) -> int | None:
    """Return n if x == -n for some integer n >= 0, else None."""
    x = complex(x)
    tol = _INT_ULPS * np.finfo(float).eps * max(1.0, abs(x))
    if abs(x.imag) > tol:
        return None
    r = round(x.real)
    if r <= 0 and abs(x.real - r) <= tol:
        return -int(r)
    return None


@dataclass(frozen=True)
class HypParams:
    alpha: complex
    beta: complex
    gamma: complex

    def value(self, z):
        return hyp2f1(self.alpha, self.beta, self.gamma, z)

    def derivative(self, z):
        return hyp2f1_derivative(self.alpha, self.beta, self.gamma, z)

    def second_derivative(self, z):
        a, b, c = self.alpha, self.beta, self.gamma
        if a == 0 or b == 0:
            return hyp2f1_derivative(a, b, c, z)
        return a * b / c * hyp2f1_derivative(a + 1, b + 1, c + 1, z)

    @property
    def degree(self) -> int | None:
        """Polynomial degree when the series terminates, else None."""
        ns = [n for n in (nonpositive_integer(self.alpha), nonpositive_integer(self.beta)) if n is not None]
        return min(ns) if ns else None


class _GaussRational:
    """Exact complex rational: re + i im with Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re, self.im = Fraction(re), Fraction(im)

    @classmethod
    def of(cls, x) -> "_GaussRational":
        x = complex(x)
        return cls(Fraction(x.real), Fraction(x.imag))

    def __add__(self, o):
        return _GaussRational(self.re + o.re, self.im + o.im)

    def __mul__(self, o):
        return _GaussRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def __truediv__(self, o):
        d = o.re * o.re + o.im * o.im
        return _GaussRational((self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d)

    def __complex__(self):
        return complex(float(self.re), float(self.im))


def _polynomial_exact(a, b, c, z, n) -> complex:
    a, b, c, z = (_GaussRational.of(v) for v in (a, b, c, z))
    term = total = _GaussRational(1)
    for k in range(n):
        kk = _GaussRational(k)
        term = term * (a + kk) * (b + kk) / ((c + kk) * _GaussRational(k + 1)) * z
        total = total + term
    return complex(total)


def _polynomial(a, b, c, z, n):
    gpole = nonpositive_integer(c)
    if gpole is not None and gpole < n:
        raise ConvergenceError(f"gamma = {c} hits a pole before the polynomial terminates (degree {n})")
    term = np.ones_like(z)
    total = np.ones_like(z)
    size = np.ones(z.shape)
    for k in range(n):
        term = term * ((a + k) * (b + k) / ((c + k) * (k + 1))) * z
        total = total + term
        size = size + np.abs(term)
    # running-error bound of the float sum; re-sum exactly where it is too loose
    loose = 4 * (n + 1) * _EPS * size > POLY_RTOL * np.abs(total)
    for idx in zip(*np.nonzero(loose)):
        total[idx] = _polynomial_exact(a, b, c, z[idx], n)
    return total


def _series(a, b, c, z):
    if np.any(np.abs(z) >= 1.0):
        raise ConvergenceError("series path needs |z| < 1 and the parameters give no polynomial")
    if nonpositive_integer(c) is not None:
        raise ConvergenceError(f"gamma = {c} is a non-positive integer")
    shape = z.shape
    z = z.ravel()
    term = np.ones_like(z)
    total = np.ones_like(z)
    # terms are generated SERIES_BLOCK at a time by a running product
    for k0 in range(0, SERIES_MAX_TERMS, SERIES_BLOCK):
        k = np.arange(k0, k0 + SERIES_BLOCK)[:, None]
        terms = term * np.cumprod((a + k) * (b + k) / ((c + k) * (k + 1)) * z, axis=0)
        total = total + terms.sum(axis=0)
        term = terms[-1]
        tail = np.abs(terms[-SERIES_QUIET_TERMS:])
        if np.all(tail < SERIES_RTOL * np.abs(total)):
            return total.reshape(shape)
    raise ConvergenceError(f"series did not converge in {SERIES_MAX_TERMS} terms (max |z| = {np.max(np.abs(z)):.3g})")


def hyp2f1(alpha, beta, gamma, z):
    """F(alpha, beta; gamma; z), vectorised over z."""
    z_arr = np.asarray(z, dtype=complex)
    scalar = z_arr.ndim == 0
    z_arr = np.atleast_1d(z_arr)
    a, b, c = complex(alpha), complex(beta), complex(gamma)
    na, nb = nonpositive_integer(a), nonpositive_integer(b)
    if nb is not None and (na is None or nb < na):
        a, b, na = b, a, nb
    if na is not None:
        out = _polynomial(a, b, c, z_arr, na)
    else:
        out = _series(a, b, c, z_arr)
    return complex(out[0]) if scalar else out


def hyp2f1_derivative(alpha, beta, gamma, z):
    """dF/dz = (alpha beta / gamma) F(alpha+1, beta+1; gamma+1; z)."""
    a, b, c = complex(alpha), complex(beta), complex(gamma)
    if a == 0 or b == 0:
        z_arr = np.asarray(z, dtype=complex)
        return 0j if z_arr.ndim == 0 else np.zeros_like(z_arr)
    return a * b / c * hyp2f1(a + 1, b + 1, c + 1, z)
