"""Wigner D-functions and the recurrences used to separate the angular part.

Convention (Varshalovich): D^j_{m1 m2}(phi, theta, 0) = exp(-i m1 phi) d^j_{m1 m2}(theta)
with d from the explicit factorial sum.  Field components use
D_sigma = D^j_{-m, sigma}(phi, theta, 0), sigma = -1, 0, +1.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, sqrt

import numpy as np

from .matrix_core import Basis, alpha, generator

J_MAX = 30
_FACT = np.array([float(factorial(k)) for k in range(2 * J_MAX + 2)])
_FACT.setflags(write=False)


@dataclass(frozen=True)
class AngularIndex:
    j: int
    m: int
    sigma: int = 0

    def __post_init__(self):
        _check_indices(self.j, self.m, 0)
        if abs(self.sigma) > 2:
            raise ValueError(f"sigma must lie in -2..2, got {self.sigma}")


@dataclass(frozen=True)
class AngularFactors:
    nu: float
    a_ang: float

    @classmethod
    def for_j(cls, j: int) -> "AngularFactors":
        if j < 1:
            raise ValueError(f"angular factors need j >= 1, got {j}")
        return cls(nu=sqrt(j * (j + 1)), a_ang=sqrt((j - 1) * (j + 2)))


def _check_indices(j, m1, m2):
    if int(j) != j or j < 0:
        raise ValueError(f"j must be a non-negative integer, got {j!r}")
    if j > J_MAX:
        raise ValueError(f"j above {J_MAX} is not supported")
    if int(m1) != m1 or int(m2) != m2:
        raise ValueError("projections must be integers")
    if abs(m1) > j or abs(m2) > j:
        raise ValueError(f"|m| <= j violated: j={j}, m1={m1}, m2={m2}")


def _terms(j, m1, m2):
    pref = sqrt(_FACT[j + m1] * _FACT[j - m1] * _FACT[j + m2] * _FACT[j - m2])
    for k in range(max(0, m2 - m1), min(j + m2, j - m1) + 1):
        coef = (-1) ** (m1 - m2 + k) * pref / (
            _FACT[j + m2 - k] * _FACT[k] * _FACT[m1 - m2 + k] * _FACT[j - m1 - k]
        )
        yield coef, 2 * j + m2 - m1 - 2 * k, m1 - m2 + 2 * k


def small_d(j: int, m1: int, m2: int, theta):
    """Wigner small-d d^j_{m1 m2}(theta); vectorised over theta."""
    _check_indices(j, m1, m2)
    theta = np.asarray(theta, dtype=float)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    out = np.zeros_like(theta)
    for coef, p, q in _terms(j, m1, m2):
        out = out + coef * c**p * s**q
    return out if out.ndim else float(out)


def small_d_dtheta(j: int, m1: int, m2: int, theta):
    """Analytic theta-derivative of small_d, term by term."""
    _check_indices(j, m1, m2)
    theta = np.asarray(theta, dtype=float)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    out = np.zeros_like(theta)
    for coef, p, q in _terms(j, m1, m2):
        if p:
            out = out - 0.5 * coef * p * c ** (p - 1) * s ** (q + 1)
        if q:
            out = out + 0.5 * coef * q * c ** (p + 1) * s ** (q - 1)
    return out if out.ndim else float(out)


def big_D(j: int, m1: int, m2: int, phi, theta):
    """D^j_{m1 m2}(phi, theta, 0) = exp(-i m1 phi) d^j_{m1 m2}(theta)."""
    return np.exp(-1j * m1 * np.asarray(phi, dtype=float)) * small_d(j, m1, m2, theta)


def field_D(j: int, m: int, sigma: int, phi, theta):
    """D_sigma of the field ansatz, zero when |sigma| > j."""
    if abs(sigma) > j:
        shape = np.broadcast(np.asarray(phi), np.asarray(theta)).shape
        return np.zeros(shape, dtype=complex)
    return big_D(j, -m, sigma, phi, theta)


def field_D_dtheta(j: int, m: int, sigma: int, phi, theta):
    if abs(sigma) > j:
        shape = np.broadcast(np.asarray(phi), np.asarray(theta)).shape
        return np.zeros(shape, dtype=complex)
    return np.exp(1j * m * np.asarray(phi, dtype=float)) * small_d_dtheta(j, -m, sigma, theta)


def recurrence_residuals(j: int, m: int, theta) -> np.ndarray:
    """Residuals of the six first-order relations linking D_{-2..2}.

    Rows: d_theta D_-1, (m - cos)/sin D_-1, d_theta D_0, m/sin D_0,
    d_theta D_+1, (m + cos)/sin D_+1, each minus its right-hand side.
    Derivatives are analytic.  Returns shape (6,) + theta.shape.
    """
    f = AngularFactors.for_j(j)
    nu, a = f.nu, f.a_ang
    theta = np.asarray(theta, dtype=float)
    d = {s: small_d(j, -m, s, theta) if abs(s) <= j else np.zeros_like(theta) for s in range(-2, 3)}
    dd = {s: small_d_dtheta(j, -m, s, theta) for s in (-1, 0, 1)}
    st, ct = np.sin(theta), np.cos(theta)
    res = [
        dd[-1] - 0.5 * (a * d[-2] - nu * d[0]),
        (m - ct) / st * d[-1] - 0.5 * (a * d[-2] + nu * d[0]),
        dd[0] - 0.5 * nu * (d[-1] - d[1]),
        m / st * d[0] - 0.5 * nu * (d[-1] + d[1]),
        dd[1] - 0.5 * (nu * d[0] - a * d[2]),
        (m + ct) / st * d[1] - 0.5 * (nu * d[0] + a * d[2]),
    ]
    # common phase exp(i m phi) has unit modulus and drops out of every residual
    return np.array(res)


def angular_action(j: int, m: int, f1, f2, f3, theta, phi) -> np.ndarray:
    """Sigma'_{theta phi} applied to (0, f1 D_-1, f2 D_0, f3 D_+1), cyclic basis.

    Closed form: (nu / sqrt 2) * ((f1 + f3) D_0, -i f2 D_-1, i (f1 - f3) D_0, i f2 D_+1).
    The f's may be arrays broadcasting against theta and phi; result has a
    trailing axis of length 4.
    """
    nu = AngularFactors.for_j(j).nu
    Dm, D0, Dp = (field_D(j, m, s, phi, theta) for s in (-1, 0, 1))
    k = nu / np.sqrt(2.0)
    return np.stack(
        np.broadcast_arrays(
            k * (f1 + f3) * D0,
            -1j * k * f2 * Dm,
            1j * k * (f1 - f3) * D0,
            1j * k * f2 * Dp,
        ),
        axis=-1,
    )


def angular_action_fd(j: int, m: int, f1, f2, f3, theta, phi, h: float = 1e-4) -> np.ndarray:
    """Sigma'_{theta phi} applied by central differences in (theta, phi).

    Independent of the recurrences: builds Psi' from D-functions on shifted
    angles and applies alpha'1 d_theta + alpha'2 (d_phi + cos(theta) s'3) / sin(theta).
    """
    a1, a2, s3 = alpha(1, Basis.CYCLIC), alpha(2, Basis.CYCLIC), generator(3, Basis.CYCLIC)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)

    def psi(th, ph):
        comps = np.broadcast_arrays(
            0j, f1 * field_D(j, m, -1, ph, th), f2 * field_D(j, m, 0, ph, th), f3 * field_D(j, m, 1, ph, th)
        )
        return np.stack(comps, axis=-1)

    def central(fn):
        return (-fn(2 * h) + 8 * fn(h) - 8 * fn(-h) + fn(-2 * h)) / (12 * h)

    d_th = central(lambda s: psi(theta + s, phi))
    d_ph = central(lambda s: psi(theta, phi + s))
    p = psi(theta, phi)
    st, ct = np.sin(theta)[..., None], np.cos(theta)[..., None]
    return d_th @ a1.T + (d_ph + ct * (p @ s3.T)) @ a2.T / st
