"""Spherical electromagnetic modes on S3 / H3 and the curved matrix operator.

A mode in the cyclic basis is

    Psi'(t, chi, theta, phi) = exp(-i omega t) (0, f1 D_-1, f2 D_0, f3 D_+1),

with D_sigma = D^j_{-m, sigma}(phi, theta, 0) and f_k from ``radial``.  The
operator it must annihilate is

    -i d_t + alpha'3 d_chi + (alpha'1 s'2 - alpha'2 s'1) r'/r + Sigma'/r,
    Sigma' = alpha'1 d_theta + alpha'2 (d_phi + cos(theta) s'3) / sin(theta).

Times are in units of rho / c, so the dimensionless S3 frequency is n + 1 + j.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .errors import AssemblyError, CoordinateError
from .geometry import Coordinates, SpaceModel
from .matrix_core import Basis, FieldVector, alpha, generator
from .radial import RadialParams, RadialSolution, assemble_first_order, closed_form_derivatives
from .wigner import angular_action, field_D

ALPHA1 = alpha(1, Basis.CYCLIC)
ALPHA2 = alpha(2, Basis.CYCLIC)
ALPHA3 = alpha(3, Basis.CYCLIC)
S3_CYC = generator(3, Basis.CYCLIC)
CONNECTION_BLOCK = ALPHA1 @ generator(2, Basis.CYCLIC) - ALPHA2 @ generator(1, Basis.CYCLIC)
# diagonal action of the block above, as it acts on (0, f1 D-1, f2 D0, f3 D+1)
CONNECTION_BLOCK_PRINTED = np.array(
    [[0, 0, 2, 0], [0, -1j, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1j]], dtype=complex
)

FD_STEP = 1e-3
THREADS_ENV = "CURVED_MAXWELL_THREADS"


def thread_count() -> int:
    """Worker cap from CURVED_MAXWELL_THREADS (default: CPU count)."""
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


@dataclass(frozen=True)
class SpectrumRow:
    j: int
    n: int
    omega: float
    degeneracy: int


@dataclass
class SpectrumTable:
    rho: float
    rows: list[SpectrumRow] = field(default_factory=list)

    def records(self) -> list[dict]:
        return [{"j": r.j, "n": r.n, "omega": r.omega, "degeneracy": r.degeneracy} for r in self.rows]


def spectrum(j_max: int, n_max: int, rho: float = 1.0) -> SpectrumTable:
    """Discrete S3 frequencies omega = (n + 1 + j) / rho with 2j+1 fold degeneracy."""
    if j_max < 1 or n_max < 0:
        raise ValueError("need j_max >= 1 and n_max >= 0")
    if not rho > 0:
        raise ValueError("rho must be positive")
    rows = [
        SpectrumRow(j, n, (n + 1 + j) / rho, 2 * j + 1)
        for j in range(1, j_max + 1)
        for n in range(n_max + 1)
    ]
    return SpectrumTable(rho, rows)


@dataclass(frozen=True)
class ModeSpec:
    """Quantum numbers of one mode.

    S3 modes are labelled by n (omega = n + 1 + j); H3 modes by a real omega.
    ``detuning`` scales the frequency used in the time factor and the
    first-order assembly while G keeps its undetuned closed form; it only
    exists to build negative controls.
    """

    model: SpaceModel
    j: int
    m: int
    n: int | None = None
    omega: float | None = None
    detuning: float = 0.0
    b_sign: int = -1

    def __post_init__(self):
        if int(self.j) != self.j or self.j < 1:
            raise ValueError(f"modes need integer j >= 1, got {self.j}")
        if int(self.m) != self.m or abs(self.m) > self.j:
            raise ValueError(f"|m| <= j violated: j={self.j}, m={self.m}")
        if self.model.compact:
            if self.n is None and self.omega is None:
                raise ValueError("S3 modes need n (or omega)")
            if self.n is not None and self.n < 0:
                raise ValueError("n must be >= 0")
        elif self.omega is None or not self.omega > 0:
            raise ValueError("H3 modes need a real omega > 0")

    @property
    def frequency(self) -> float:
        """Dimensionless frequency of the radial closed form."""
        if self.model.compact and self.n is not None:
            return float(self.n + 1 + self.j)
        return float(self.omega)

    @property
    def physical_omega(self) -> float:
        return self.frequency * (1 + self.detuning) / self.model.rho

    @property
    def radial_params(self) -> RadialParams:
        return RadialParams(self.model, self.frequency, self.j)

    @property
    def assembly_params(self) -> RadialParams:
        return RadialParams(self.model, self.frequency * (1 + self.detuning), self.j)


def radial_profile(spec: ModeSpec, chi) -> RadialSolution:
    chi = np.asarray(chi, dtype=float)
    flat = chi.ravel()
    G, dG, d2G = closed_form_derivatives(spec.radial_params, flat, spec.b_sign)
    return assemble_first_order(spec.assembly_params, flat, G, dG, d2G)


def _guard(model: SpaceModel, chi, theta) -> None:
    chi, theta = np.asarray(chi), np.asarray(theta)
    if model.compact:
        bad_chi = np.any((chi <= 0) | (chi >= np.pi))
    else:
        bad_chi = np.any(chi <= 0)
    if bad_chi or np.any((theta <= 0) | (theta >= np.pi)):
        raise CoordinateError("mode evaluation requires interior coordinates")


def _mode_parts(spec: ModeSpec, t, chi, theta, phi):
    _guard(spec.model, chi, theta)
    t, chi, theta, phi = (np.asarray(v, dtype=float) for v in (t, chi, theta, phi))
    sol = radial_profile(spec, chi)
    shape = chi.shape
    f = [getattr(sol, k).reshape(shape) for k in ("f1", "f2", "f3")]
    df = [getattr(sol, k).reshape(shape) for k in ("df1", "df2", "df3")]
    D = [field_D(spec.j, spec.m, s, phi, theta) for s in (-1, 0, 1)]
    phase = np.exp(-1j * spec.frequency * (1 + spec.detuning) * t)
    return phase, f, df, D


def _stack(slot0, a, b, c):
    a, b, c, slot0 = np.broadcast_arrays(a, b, c, slot0)
    return np.stack([slot0, a, b, c], axis=-1)


def evaluate_mode(spec: ModeSpec, x: Coordinates) -> FieldVector:
    """Psi' at x (fields of x may be broadcastable arrays), cyclic basis."""
    phase, f, _, D = _mode_parts(spec, x.t, x.chi, x.theta, x.phi)
    comps = _stack(0j, phase * f[0] * D[0], phase * f[1] * D[1], phase * f[2] * D[2])
    return FieldVector(comps, Basis.CYCLIC)


@dataclass(frozen=True)
class ModeGrid:
    t: np.ndarray
    chi: np.ndarray
    theta: np.ndarray
    phi: np.ndarray

    @classmethod
    def default(cls, model: SpaceModel, n_chi: int = 20, n_theta: int = 20, n_phi: int = 20,
                t: float = 0.3, chi_range: tuple[float, float] | None = None,
                theta_margin: float = 0.1) -> "ModeGrid":
        if chi_range is None:
            chi_range = (0.05, np.pi - 0.05) if model.compact else (0.05, 2.0)
        return cls(
            np.array([t]),
            np.linspace(*chi_range, n_chi),
            np.linspace(theta_margin, np.pi - theta_margin, n_theta),
            np.linspace(0.0, 2 * np.pi, n_phi, endpoint=False),
        )

    def mesh(self):
        """Broadcastable (t, chi, theta, phi) arrays of shape (nt, nchi, ntheta, nphi)."""
        return (
            self.t[:, None, None, None],
            self.chi[None, :, None, None],
            self.theta[None, None, :, None],
            self.phi[None, None, None, :],
        )

    @property
    def size(self) -> int:
        return self.t.size * self.chi.size * self.theta.size * self.phi.size


def _apply(m: np.ndarray, v: np.ndarray) -> np.ndarray:
    return v @ m.T


def operator_analytic(spec: ModeSpec, grid: ModeGrid):
    """Operator applied using analytic d_t, closed-form radial derivatives and
    the closed-form angular action.  Returns (residual vectors, Psi')."""
    t, chi, theta, phi = grid.mesh()
    phase, f, df, D = _mode_parts(spec, t, chi, theta, phi)
    w = spec.frequency * (1 + spec.detuning)
    model = spec.model
    psi = _stack(0j, phase * f[0] * D[0], phase * f[1] * D[1], phase * f[2] * D[2])
    dpsi = _stack(0j, phase * df[0] * D[0], phase * df[1] * D[1], phase * df[2] * D[2])
    ang = angular_action(spec.j, spec.m, f[0], f[1], f[2], theta, phi) * phase[..., None]
    r = model.r(chi)[..., None]
    k = model.cot(chi)[..., None]
    out = -w * psi + _apply(ALPHA3, dpsi) + k * _apply(CONNECTION_BLOCK, psi) + ang / r
    return out, psi


def _fd(fn, coords, axis, h):
    shifted = []
    for s in (-2, -1, 1, 2):
        c = list(coords)
        c[axis] = c[axis] + s * h
        shifted.append(fn(*c))
    return (shifted[0] - 8 * shifted[1] + 8 * shifted[2] - shifted[3]) / (12 * h)


def apply_operator_fd(model: SpaceModel, psi_fn, coords, h: float = FD_STEP):
    """Curved operator on an arbitrary sampler psi_fn(t, chi, theta, phi) -> (..., 4),
    every derivative by fourth-order central differences."""
    t, chi, theta, phi = coords
    psi = psi_fn(t, chi, theta, phi)
    d_t, d_chi, d_theta, d_phi = (_fd(psi_fn, coords, ax, h) for ax in range(4))
    r = model.r(chi)[..., None]
    k = model.cot(chi)[..., None]
    st, ct = np.sin(theta)[..., None], np.cos(theta)[..., None]
    sigma = _apply(ALPHA1, d_theta) + _apply(ALPHA2, d_phi + ct * _apply(S3_CYC, psi)) / st
    out = -1j * d_t + _apply(ALPHA3, d_chi) + k * _apply(CONNECTION_BLOCK, psi) + sigma / r
    return out, psi


@dataclass(frozen=True)
class OperatorResidual:
    analytic: float
    brute: float
    auxiliary: float
    block_identity: float


def curved_operator_residual(spec: ModeSpec, grid: ModeGrid | None = None, h: float = FD_STEP) -> OperatorResidual:
    """Residual of the curved operator on a mode, two independent ways.

    analytic / brute are max|residual| / max|Psi'| from the closed-form and
    finite-difference paths; auxiliary is the slot-0 part of the analytic
    residual; block_identity compares alpha'1 s'2 - alpha'2 s'1 with its
    printed diagonal action.
    """
    grid = grid or ModeGrid.default(spec.model)
    res_a, psi = operator_analytic(spec, grid)
    scale = np.max(np.abs(psi))

    def sampler(t, chi, theta, phi):
        return evaluate_mode(spec, Coordinates(t, chi, theta, phi)).components

    res_b, _ = apply_operator_fd(spec.model, sampler, grid.mesh(), h)
    return OperatorResidual(
        analytic=float(np.max(np.abs(res_a)) / scale),
        brute=float(np.max(np.abs(res_b)) / scale),
        auxiliary=float(np.max(np.abs(res_a[..., 0])) / scale),
        block_identity=float(np.max(np.abs(CONNECTION_BLOCK - CONNECTION_BLOCK_PRINTED))),
    )


def to_physical_fields(psi: FieldVector, tol: float = 1e-8):
    """(E, cB) from a field vector: Cartesian psi = U4^-1 Psi', E = Re psi, cB = Im psi.

    Raises AssemblyError when the auxiliary slot exceeds tol (relative to the
    largest component, or absolute for tiny vectors).
    """
    cart = psi.to_basis(Basis.CARTESIAN).components
    scale = max(1.0, float(np.max(np.abs(cart))) if cart.size else 1.0)
    aux = float(np.max(np.abs(cart[..., 0]))) if cart.size else 0.0
    if aux > tol * scale:
        raise AssemblyError(f"auxiliary slot carries {aux:.3g}; not a physical field state")
    vec = cart[..., 1:]
    return vec.real.copy(), vec.imag.copy()
