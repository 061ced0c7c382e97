"""Metric, tetrad and connection data for S3 and H3 in spherical coordinates.

Coordinates are ``x = (t, chi, theta, phi)`` with c = 1 and unit curvature
radius; the radial profile is ``r(chi) = sin chi`` (S3) or ``sinh chi`` (H3).
Tetrad legs: e_(0) = d_t, e_(3) = d_chi, e_(1) = d_theta / r,
e_(2) = d_phi / (r sin theta).

Closed forms live next to finite-difference oracles (``*_fd``) that only use
the metric and tetrad functions, so the two can be compared independently.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import CoordinateError
from .matrix_core import Basis, alpha, j_generator

GUARD = 1e-6
FD_STEP = 1e-4
ETA = np.diag([1.0, -1.0, -1.0, -1.0])


class Kind(enum.Enum):
    S3 = "s3"
    H3 = "h3"


@dataclass(frozen=True)
class SpaceModel:
    kind: Kind
    rho: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if not self.rho > 0:
            raise ValueError(f"curvature radius must be positive, got {self.rho!r}")

    @classmethod
    def s3(cls, rho: float = 1.0) -> "SpaceModel":
        return cls(Kind.S3, rho)

    @classmethod
    def h3(cls, rho: float = 1.0) -> "SpaceModel":
        return cls(Kind.H3, rho)

    @property
    def compact(self) -> bool:
        return self.kind is Kind.S3

    def r(self, chi):
        return np.sin(chi) if self.compact else np.sinh(chi)

    def dr(self, chi):
        return np.cos(chi) if self.compact else np.cosh(chi)

    def cot(self, chi):
        """r'/r: cot chi on S3, coth chi on H3."""
        return self.dr(chi) / self.r(chi)


@dataclass(frozen=True)
class Coordinates:
    t: float
    chi: float
    theta: float
    phi: float

    def as_array(self) -> np.ndarray:
        return np.array([self.t, self.chi, self.theta, self.phi], dtype=float)

    @classmethod
    def from_array(cls, x) -> "Coordinates":
        t, chi, theta, phi = (float(v) for v in x)
        return cls(t, chi, theta, phi)


def check_point(model: SpaceModel, x: Coordinates, guard: float = GUARD) -> None:
    """Raise CoordinateError when x sits on or near a coordinate singularity."""
    chi, theta = x.chi, x.theta
    if model.compact:
        if not (0.0 < chi < np.pi) or abs(np.sin(chi)) < guard:
            raise CoordinateError(f"S3 requires 0 < chi < pi away from the poles, got chi={chi}")
    elif not chi >= guard:
        raise CoordinateError(f"H3 requires chi > {guard}, got chi={chi}")
    if not (0.0 < theta < np.pi) or abs(np.sin(theta)) < guard:
        raise CoordinateError(f"theta must lie strictly inside (0, pi), got theta={theta}")


def _as_coords(x) -> Coordinates:
    return x if isinstance(x, Coordinates) else Coordinates.from_array(x)


def _metric_raw(model: SpaceModel, xa: np.ndarray) -> np.ndarray:
    r2 = model.r(xa[1]) ** 2
    return np.diag([1.0, -1.0, -r2, -r2 * np.sin(xa[2]) ** 2])


def metric(model: SpaceModel, x) -> np.ndarray:
    """Covariant metric g_{alpha beta} = diag(1, -1, -r^2, -r^2 sin^2 theta)."""
    x = _as_coords(x)
    check_point(model, x)
    return _metric_raw(model, x.as_array())


def _tetrad_raw(model: SpaceModel, xa: np.ndarray) -> np.ndarray:
    r = model.r(xa[1])
    e = np.zeros((4, 4))
    e[0, 0] = 1.0
    e[3, 1] = 1.0
    e[1, 2] = 1.0 / r
    e[2, 3] = 1.0 / (r * np.sin(xa[2]))
    return e


def tetrad(model: SpaceModel, x) -> np.ndarray:
    """Contravariant tetrad, row a holds e_(a)^alpha."""
    x = _as_coords(x)
    check_point(model, x)
    return _tetrad_raw(model, x.as_array())


def christoffel(model: SpaceModel, x) -> np.ndarray:
    """Gamma[alpha, beta, gamma] = Gamma^alpha_{beta gamma}, closed form."""
    x = _as_coords(x)
    check_point(model, x)
    r, dr = model.r(x.chi), model.dr(x.chi)
    st, ct = np.sin(x.theta), np.cos(x.theta)
    T, C, H, P = 0, 1, 2, 3
    g = np.zeros((4, 4, 4))
    g[C, P, P] = -r * dr * st**2
    g[C, H, H] = -r * dr
    g[H, P, P] = -st * ct
    g[H, H, C] = g[H, C, H] = dr / r
    g[P, P, H] = g[P, H, P] = ct / st
    g[P, C, P] = g[P, P, C] = dr / r
    return g


def ricci_rotation(model: SpaceModel, x) -> np.ndarray:
    """Ricci rotation coefficients gamma[a, b, c] (antisymmetric in a, b).

    Convention: gamma_{abc} = -e_(a)beta;alpha e^beta_(b) e^alpha_(c).
    Only c = 1, 2 are non-zero.
    """
    x = _as_coords(x)
    check_point(model, x)
    k = model.cot(x.chi)
    q = 1.0 / (np.tan(x.theta) * model.r(x.chi))
    g = np.zeros((4, 4, 4))
    g[1, 3, 1], g[3, 1, 1] = -k, k
    g[1, 2, 2], g[2, 1, 2] = q, -q
    g[2, 3, 2], g[3, 2, 2] = -k, k
    return g


def connection(model: SpaceModel, x, basis: Basis = Basis.CARTESIAN) -> tuple[np.ndarray, ...]:
    """Matrix connection (A_t, A_chi, A_theta, A_phi).

    A_rho = (1/2) j^{ab} gamma_{abc} e^(c)_rho, which evaluates to
    A_theta = r' j^{31} and A_phi = r' sin(theta) j^{32} + cos(theta) j^{12}.
    """
    x = _as_coords(x)
    check_point(model, x)
    dr = model.dr(x.chi)
    st, ct = np.sin(x.theta), np.cos(x.theta)
    zero = np.zeros((4, 4), dtype=complex)
    a_theta = dr * j_generator(3, 1, basis)
    a_phi = dr * st * j_generator(3, 2, basis) + ct * j_generator(1, 2, basis)
    return zero, zero.copy(), a_theta, a_phi


def connection_from_ricci(model: SpaceModel, x, basis: Basis = Basis.CARTESIAN) -> tuple[np.ndarray, ...]:
    """A_rho assembled literally from gamma_{abc} and the tetrad covectors."""
    x = _as_coords(x)
    gam = ricci_rotation(model, x)
    e_low = ETA @ _tetrad_raw(model, x.as_array()) @ _metric_raw(model, x.as_array())
    out = []
    for rho in range(4):
        m = np.zeros((4, 4), dtype=complex)
        for a in range(4):
            for b in range(4):
                w = sum(gam[a, b, c] * e_low[c, rho] for c in range(4))
                if w:
                    m += 0.5 * w * j_generator(a, b, basis)
        out.append(m)
    return tuple(out)


def alpha_coordinate(model: SpaceModel, x, basis: Basis = Basis.CARTESIAN) -> tuple[np.ndarray, ...]:
    """alpha^rho(x) = alpha^c e_(c)^rho."""
    x = _as_coords(x)
    e = tetrad(model, x)
    return tuple(sum(e[c, rho] * alpha(c, basis) for c in range(4)) for rho in range(4))


# -- finite-difference oracles -------------------------------------------------


def _central(f, xa: np.ndarray, mu: int, h: float) -> np.ndarray:
    step = np.zeros(4)
    step[mu] = h
    return (f(xa + step) - f(xa - step)) / (2.0 * h)


def _partial(f, xa: np.ndarray, mu: int, h: float) -> np.ndarray:
    # second-order central differences at h and 2h, Richardson-combined
    return (4.0 * _central(f, xa, mu, h) - _central(f, xa, mu, 2.0 * h)) / 3.0


def christoffel_fd(model: SpaceModel, x, h: float = FD_STEP) -> np.ndarray:
    """Gamma from central differences of the metric alone."""
    x = _as_coords(x)
    check_point(model, x)
    xa = x.as_array()
    g = _metric_raw(model, xa)
    g_inv = np.linalg.inv(g)
    dg = np.array([_partial(lambda y: _metric_raw(model, y), xa, mu, h) for mu in range(4)])
    # dg[mu, a, b] = d_mu g_ab
    lower = 0.5 * (np.einsum("bdc->dbc", dg) + np.einsum("cdb->dbc", dg) - np.einsum("dbc->dbc", dg))
    return np.einsum("ad,dbc->abc", g_inv, lower)


def ricci_rotation_fd(model: SpaceModel, x, h: float = FD_STEP) -> np.ndarray:
    """gamma_{abc} = -e_(a)beta;alpha e^beta_(b) e^alpha_(c), all derivatives numeric."""
    x = _as_coords(x)
    check_point(model, x)
    xa = x.as_array()

    def e_lower(y):
        # e_(a)beta = g_{beta mu} e_(a)^mu
        return _tetrad_raw(model, y) @ _metric_raw(model, y)

    gam_coord = christoffel_fd(model, x, h)
    e_up = _tetrad_raw(model, xa)
    e_low = e_lower(xa)
    d_e = np.array([_partial(e_lower, xa, mu, h) for mu in range(4)])  # [alpha, a, beta]
    # covariant derivative: nabla_alpha e_(a)beta
    cov = np.einsum("Aab->aAb", d_e) - np.einsum("mAb,am->aAb", gam_coord, e_low)
    return -np.einsum("aAb,cb,dA->acd", cov, e_up, e_up)


def connection_fd(model: SpaceModel, x, basis: Basis = Basis.CARTESIAN, h: float = FD_STEP) -> tuple[np.ndarray, ...]:
    """A_rho = (1/2) j^{ab} e_(a)^beta nabla_rho e_(b)beta with numeric derivatives."""
    x = _as_coords(x)
    check_point(model, x)
    xa = x.as_array()

    def e_lower(y):
        return _tetrad_raw(model, y) @ _metric_raw(model, y)

    gam_coord = christoffel_fd(model, x, h)
    e_up = _tetrad_raw(model, xa)
    e_low = e_lower(xa)
    d_e = np.array([_partial(e_lower, xa, mu, h) for mu in range(4)])
    cov = np.einsum("Rbc->bRc", d_e) - np.einsum("mRc,bm->bRc", gam_coord, e_low)
    coef = np.einsum("ac,bRc->abR", e_up, cov)  # e_(a)^beta nabla_R e_(b)beta
    out = []
    for rho in range(4):
        m = np.zeros((4, 4), dtype=complex)
        for a in range(4):
            for b in range(4):
                if coef[a, b, rho]:
                    m += 0.5 * coef[a, b, rho] * j_generator(a, b, basis)
        out.append(m)
    return tuple(out)


def metric_compatibility_fd(model: SpaceModel, x, h: float = FD_STEP) -> float:
    """max |nabla_gamma g_{alpha beta}| using the closed-form Christoffels."""
    x = _as_coords(x)
    xa = x.as_array()
    g = _metric_raw(model, xa)
    gam = christoffel(model, x)
    dg = np.array([_partial(lambda y: _metric_raw(model, y), xa, mu, h) for mu in range(4)])
    nabla = dg - np.einsum("dca,db->cab", gam, g) - np.einsum("dcb,ad->cab", gam, g)
    return float(np.max(np.abs(nabla)))


def tetrad_orthonormality(model: SpaceModel, x) -> float:
    """max |e_(a)^alpha e_(b)^beta g_{alpha beta} - eta_{ab}|."""
    e = tetrad(model, x)
    g = metric(model, x)
    return float(np.max(np.abs(e @ g @ e.T - ETA)))


def random_interior_points(model: SpaceModel, n: int, rng: np.random.Generator, margin: float = 0.2):
    """Random coordinates well inside the guard band."""
    chi_hi = np.pi - margin if model.compact else 3.0
    out = []
    for _ in range(n):
        out.append(
            Coordinates(
                t=float(rng.uniform(-1.0, 1.0)),
                chi=float(rng.uniform(margin, chi_hi)),
                theta=float(rng.uniform(margin, np.pi - margin)),
                phi=float(rng.uniform(0.0, 2 * np.pi)),
            )
        )
    return out
