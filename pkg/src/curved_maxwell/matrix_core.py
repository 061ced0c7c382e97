"""Complex 4x4 matrix algebra of the Riemann-Silberstein Maxwell form.

Field column is ``(0, psi1, psi2, psi3)`` with ``psi = E + i cB``.  Matrices
come in two bases: the Cartesian one, where the generators ``s_k`` are real
rotation generators, and the cyclic one obtained by conjugation with
``U4 = diag(1, U)``, where ``s3`` becomes diagonal.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

SQRT2 = np.sqrt(2.0)
_R = 1.0 / SQRT2


class Basis(enum.Enum):
    CARTESIAN = "cartesian"
    CYCLIC = "cyclic"


def _frozen(rows) -> np.ndarray:
    m = np.array(rows, dtype=complex)
    m.setflags(write=False)
    return m


IDENTITY = _frozen(np.eye(4))

_ALPHA_CARTESIAN = (
    IDENTITY,
    _frozen([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]),
    _frozen([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]),
    _frozen([[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]]),
)

# Printed cyclic forms, kept literal so that conjugation by U4 can be checked
# against them rather than defining them through it.
_ALPHA_CYCLIC = (
    IDENTITY,
    _frozen(_R * np.array([[0, -1, 0, 1], [1, 0, -1j, 0], [0, -1j, 0, -1j], [-1, 0, -1j, 0]])),
    _frozen(_R * np.array([[0, -1j, 0, -1j], [-1j, 0, -1, 0], [0, 1, 0, -1], [-1j, 0, 1, 0]])),
    _frozen([[0, 0, 1, 0], [0, -1j, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1j]]),
)

_TAU_CARTESIAN = (
    np.array([[0, 0, 0], [0, 0, -1], [0, 1, 0]], dtype=complex),
    np.array([[0, 0, 1], [0, 0, 0], [-1, 0, 0]], dtype=complex),
    np.array([[0, -1, 0], [1, 0, 0], [0, 0, 0]], dtype=complex),
)

_TAU_CYCLIC = (
    _R * np.array([[0, -1j, 0], [-1j, 0, -1j], [0, -1j, 0]]),
    _R * np.array([[0, -1, 0], [1, 0, -1], [0, 1, 0]], dtype=complex),
    -1j * np.diag([1.0, 0.0, -1.0]).astype(complex),
)

U3 = _frozen(_R * np.array([[-1, 1j, 0], [0, 0, SQRT2], [1, 1j, 0]]))
U3_INV = _frozen(_R * np.array([[-1, 0, 1], [-1j, 0, -1j], [0, SQRT2, 0]]))


def _embed(tau: np.ndarray) -> np.ndarray:
    m = np.zeros((4, 4), dtype=complex)
    m[1:, 1:] = tau
    m.setflags(write=False)
    return m


_GEN = {
    Basis.CARTESIAN: tuple(_embed(t) for t in _TAU_CARTESIAN),
    Basis.CYCLIC: tuple(_embed(t) for t in _TAU_CYCLIC),
}
_ALPHA = {Basis.CARTESIAN: _ALPHA_CARTESIAN, Basis.CYCLIC: _ALPHA_CYCLIC}


def alpha(k: int, basis: Basis = Basis.CARTESIAN) -> np.ndarray:
    """Return the (read-only) matrix alpha^k, k = 0..3, in the given basis."""
    if k not in (0, 1, 2, 3):
        raise ValueError(f"alpha index must be 0..3, got {k!r}")
    return _ALPHA[Basis(basis)][k]


def generator(i: int, basis: Basis = Basis.CARTESIAN) -> np.ndarray:
    """Rotation generator s_i (i = 1..3) embedded as block-diag(0, tau_i)."""
    if i not in (1, 2, 3):
        raise ValueError(f"generator index must be 1..3, got {i!r}")
    return _GEN[Basis(basis)][i - 1]


_J_SPATIAL = {(2, 3): 1, (3, 1): 2, (1, 2): 3}


def j_generator(a: int, b: int, basis: Basis = Basis.CARTESIAN) -> np.ndarray:
    """SO(3,C) generator j^{ab}: j^{23}=s1, j^{31}=s2, j^{12}=s3, j^{0k}=i s_k.

    Antisymmetric in (a, b); j^{aa} is the zero matrix.
    """
    if a not in range(4) or b not in range(4):
        raise ValueError(f"tetrad indices must be 0..3, got ({a}, {b})")
    if a == b:
        return np.zeros((4, 4), dtype=complex)
    if a == 0:
        return 1j * generator(b, basis)
    if b == 0:
        return -1j * generator(a, basis)
    if (a, b) in _J_SPATIAL:
        return generator(_J_SPATIAL[(a, b)], basis)
    return -generator(_J_SPATIAL[(b, a)], basis)


@lru_cache(maxsize=None)
def cyclic_transform() -> tuple[np.ndarray, np.ndarray]:
    """Return ``(U4, U4^-1)``; U4 = block-diag(1, U) with U unitary."""
    u4 = np.eye(4, dtype=complex)
    u4[1:, 1:] = U3
    u4_inv = np.eye(4, dtype=complex)
    u4_inv[1:, 1:] = U3_INV
    u4.setflags(write=False)
    u4_inv.setflags(write=False)
    return u4, u4_inv


def to_cyclic_matrix(m: np.ndarray) -> np.ndarray:
    u4, u4_inv = cyclic_transform()
    return u4 @ m @ u4_inv


def to_cartesian_matrix(m: np.ndarray) -> np.ndarray:
    u4, u4_inv = cyclic_transform()
    return u4_inv @ m @ u4


@dataclass(frozen=True)
class FieldVector:
    """Four-slot complex field column; ``components[..., 0]`` is the auxiliary slot.

    ``components`` may carry leading grid axes; the last axis has length 4.
    """

    components: np.ndarray
    basis: Basis = Basis.CARTESIAN

    def __post_init__(self):
        comps = np.asarray(self.components, dtype=complex)
        if comps.shape[-1:] != (4,):
            raise ValueError(f"field vector needs a trailing axis of length 4, got {comps.shape}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_fields(cls, E, cB) -> "FieldVector":
        psi = np.asarray(E, dtype=float) + 1j * np.asarray(cB, dtype=float)
        zero = np.zeros(psi.shape[:-1] + (1,), dtype=complex)
        return cls(np.concatenate([zero, psi], axis=-1), Basis.CARTESIAN)

    def to_basis(self, basis: Basis) -> "FieldVector":
        basis = Basis(basis)
        if basis is self.basis:
            return self
        u4, u4_inv = cyclic_transform()
        m = u4 if basis is Basis.CYCLIC else u4_inv
        return FieldVector(self.components @ m.T, basis)

    @property
    def auxiliary(self) -> np.ndarray:
        return self.components[..., 0]


def verify_algebra() -> dict[str, float]:
    """Residuals (max abs entry) of every product identity, both bases.

    Keys name the identity; a perfect implementation returns zeros for the
    Cartesian block and roundoff-level values where 1/sqrt(2) enters.
    """
    out: dict[str, float] = {}
    I = IDENTITY

    def norm(m):
        return float(np.max(np.abs(m)))

    for basis in Basis:
        tag = basis.value
        a = [alpha(k, basis) for k in range(4)]
        s = [None] + [generator(i, basis) for i in (1, 2, 3)]
        out[f"{tag}: alpha0 - I"] = norm(a[0] - I)
        for i in (1, 2, 3):
            out[f"{tag}: (alpha{i})^2 + I"] = norm(a[i] @ a[i] + I)
            out[f"{tag}: alpha{i} alpha0 - alpha{i}"] = norm(a[i] @ a[0] - a[i])
            out[f"{tag}: alpha0 alpha{i} - alpha{i}"] = norm(a[0] @ a[i] - a[i])
        for i, k, l in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
            out[f"{tag}: alpha{i} alpha{k} - alpha{l}"] = norm(a[i] @ a[k] - a[l])
            out[f"{tag}: alpha{k} alpha{i} + alpha{l}"] = norm(a[k] @ a[i] + a[l])
            out[f"{tag}: [s{i}, s{k}] - s{l}"] = norm(s[i] @ s[k] - s[k] @ s[i] - s[l])
    u4, u4_inv = cyclic_transform()
    out["U4 U4^-1 - I"] = norm(u4 @ u4_inv - I)
    out["U U^+ - I"] = norm(U3 @ U3.conj().T - np.eye(3))
    for k in (1, 2, 3):
        out[f"U4 alpha{k} U4^-1 - alpha'{k}"] = norm(
            to_cyclic_matrix(alpha(k)) - alpha(k, Basis.CYCLIC)
        )
        out[f"U4 s{k} U4^-1 - s'{k}"] = norm(
            to_cyclic_matrix(generator(k)) - generator(k, Basis.CYCLIC)
        )
    return out
