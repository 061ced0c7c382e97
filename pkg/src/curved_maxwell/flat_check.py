"""Flat-space equivalence between the matrix form and the eight Maxwell equations.

Units: epsilon_0 = 1, c = 1; spacetime point x = (t, x, y, z).  The matrix
equation is (-i d_0 + alpha^j d_j) Psi = J with J = (rho, i j1, i j2, i j3).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .matrix_core import alpha

Vec = Callable[[np.ndarray], np.ndarray]
Grad = Callable[[np.ndarray], np.ndarray]

_ZERO3 = lambda x: np.zeros(3)  # noqa: E731
_ZERO43 = lambda x: np.zeros((4, 3))  # noqa: E731
_ZERO = lambda x: 0.0  # noqa: E731

CLASSICAL_LABELS = (
    "div cB",
    "(curl E)_1 + d0 cB1",
    "(curl E)_2 + d0 cB2",
    "(curl E)_3 + d0 cB3",
    "div E - rho",
    "(curl cB)_1 - d0 E1 - j1",
    "(curl cB)_2 - d0 E2 - j2",
    "(curl cB)_3 - d0 E3 - j3",
)


@dataclass(frozen=True)
class AnalyticField:
    """Field sampler with optional analytic gradients.

    dE(x)[mu, k] = d_mu E^k with mu = 0..3 (time first); same for dcB.
    """

    name: str
    E: Vec
    cB: Vec
    dE: Grad | None = None
    dcB: Grad | None = None
    rho: Callable[[np.ndarray], float] = _ZERO
    current: Vec = _ZERO3


@dataclass(frozen=True)
class FlatFieldSample:
    E: np.ndarray
    cB: np.ndarray
    rho_charge: float
    current: np.ndarray


def sample(field: AnalyticField, x) -> FlatFieldSample:
    x = np.asarray(x, dtype=float)
    return FlatFieldSample(field.E(x), field.cB(x), float(field.rho(x)), field.current(x))


def _fd_grad(fn: Vec, x: np.ndarray, h: float) -> np.ndarray:
    out = np.zeros((4, 3))
    for mu in range(4):
        e = np.zeros(4)
        e[mu] = h
        out[mu] = (-fn(x + 2 * e) + 8 * fn(x + e) - 8 * fn(x - e) + fn(x - 2 * e)) / (12 * h)
    return out


def _grads(field: AnalyticField, x: np.ndarray, method: str, h: float):
    if method == "analytic":
        if field.dE is None or field.dcB is None:
            raise ValueError(f"field {field.name!r} has no analytic derivatives")
        return field.dE(x), field.dcB(x)
    if method == "fd":
        return _fd_grad(field.E, x, h), _fd_grad(field.cB, x, h)
    raise ValueError(f"unknown derivative method {method!r}")


def matrix_residual(field: AnalyticField, x, method: str = "analytic", h: float = 1e-3) -> np.ndarray:
    """(-i d_0 + alpha^j d_j) Psi - J, four complex components."""
    x = np.asarray(x, dtype=float)
    dE, dcB = _grads(field, x, method, h)
    dpsi = np.zeros((4, 4), dtype=complex)  # [mu, slot]
    dpsi[:, 1:] = dE + 1j * dcB
    lhs = -1j * dpsi[0] + sum(alpha(k) @ dpsi[k] for k in (1, 2, 3))
    jvec = field.current(x)
    J = np.array([field.rho(x), 1j * jvec[0], 1j * jvec[1], 1j * jvec[2]])
    return lhs - J


def classical_residual(field: AnalyticField, x, method: str = "analytic", h: float = 1e-3) -> np.ndarray:
    """Residuals of the eight scalar Maxwell equations (order of CLASSICAL_LABELS)."""
    x = np.asarray(x, dtype=float)
    dE, dcB = _grads(field, x, method, h)
    jv = field.current(x)

    def div(d):
        return d[1, 0] + d[2, 1] + d[3, 2]

    def curl(d):
        return np.array([d[2, 2] - d[3, 1], d[3, 0] - d[1, 2], d[1, 1] - d[2, 0]])

    faraday = curl(dE) + dcB[0]
    ampere = curl(dcB) - dE[0] - jv
    return np.concatenate([[div(dcB)], faraday, [div(dE) - field.rho(x)], ampere])


def regroup(matrix_res: np.ndarray) -> np.ndarray:
    """Map four complex matrix residuals onto the eight classical ones.

    Slot 0: Re -> Gauss, Im -> div cB.  Slots 1-3: Re -> Faraday, Im -> Ampere.
    """
    r = np.asarray(matrix_res)
    return np.concatenate([[r[0].imag], r[1:].real, [r[0].real], r[1:].imag])


def equivalence_residual(field: AnalyticField, x, method: str = "analytic", h: float = 1e-3) -> float:
    return float(np.max(np.abs(regroup(matrix_residual(field, x, method, h)) - classical_residual(field, x, method, h))))


# -- built-in analytic families -------------------------------------------------


def plane_wave(k: float = 1.0, amplitude: float = 1.0) -> AnalyticField:
    """E along x, cB along y, travelling along +z: cos(k (z - t))."""

    def ph(x):
        return k * (x[3] - x[0])

    def E(x):
        return np.array([amplitude * np.cos(ph(x)), 0.0, 0.0])

    def cB(x):
        return np.array([0.0, amplitude * np.cos(ph(x)), 0.0])

    def dE(x):
        s = amplitude * k * np.sin(ph(x))
        d = np.zeros((4, 3))
        d[0, 0], d[3, 0] = s, -s
        return d

    def dcB(x):
        s = amplitude * k * np.sin(ph(x))
        d = np.zeros((4, 3))
        d[0, 1], d[3, 1] = s, -s
        return d

    return AnalyticField("plane_wave", E, cB, dE, dcB)


def standing_wave(k: float = 1.3) -> AnalyticField:
    """E = (cos kz cos kt, 0, 0), cB = (0, sin kz sin kt, 0)."""

    def E(x):
        return np.array([np.cos(k * x[3]) * np.cos(k * x[0]), 0.0, 0.0])

    def cB(x):
        return np.array([0.0, np.sin(k * x[3]) * np.sin(k * x[0]), 0.0])

    def dE(x):
        d = np.zeros((4, 3))
        d[0, 0] = -k * np.cos(k * x[3]) * np.sin(k * x[0])
        d[3, 0] = -k * np.sin(k * x[3]) * np.cos(k * x[0])
        return d

    def dcB(x):
        d = np.zeros((4, 3))
        d[0, 1] = k * np.sin(k * x[3]) * np.cos(k * x[0])
        d[3, 1] = k * np.cos(k * x[3]) * np.sin(k * x[0])
        return d

    return AnalyticField("standing_wave", E, cB, dE, dcB)


def point_charge(q: float = 1.0) -> AnalyticField:
    """Coulomb field q r / (4 pi |r|^3); source-free away from the origin."""

    def E(x):
        r = x[1:]
        return q * r / (4 * np.pi * np.linalg.norm(r) ** 3)

    def dE(x):
        r = x[1:]
        n = np.linalg.norm(r)
        d = np.zeros((4, 3))
        d[1:] = q / (4 * np.pi) * (np.eye(3) / n**3 - 3 * np.outer(r, r) / n**5)
        return d

    return AnalyticField("point_charge", E, _ZERO3, dE, _ZERO43)


def charged_ball(rho0: float = 0.7) -> AnalyticField:
    """Interior of a uniformly charged ball: E = rho0 r / 3, div E = rho0."""

    def E(x):
        return rho0 * x[1:] / 3

    def dE(x):
        d = np.zeros((4, 3))
        d[1:] = rho0 / 3 * np.eye(3)
        return d

    return AnalyticField("charged_ball", E, _ZERO3, dE, _ZERO43, rho=lambda x: rho0)


def uniform_current(j0: float = 0.4) -> AnalyticField:
    """Static field of a uniform current along z: cB = j0 (-y, x, 0) / 2."""

    def cB(x):
        return 0.5 * j0 * np.array([-x[2], x[1], 0.0])

    def dcB(x):
        d = np.zeros((4, 3))
        d[2, 0], d[1, 1] = -0.5 * j0, 0.5 * j0
        return d

    return AnalyticField(
        "uniform_current", _ZERO3, cB, _ZERO43, dcB, current=lambda x: np.array([0.0, 0.0, j0])
    )


def zero_field() -> AnalyticField:
    return AnalyticField("zero", _ZERO3, _ZERO3, _ZERO43, _ZERO43)


FAMILIES = {
    "plane_wave": plane_wave,
    "standing_wave": standing_wave,
    "point_charge": point_charge,
    "charged_ball": charged_ball,
    "uniform_current": uniform_current,
}
