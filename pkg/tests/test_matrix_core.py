import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from curved_maxwell.matrix_core import (
    Basis,
    FieldVector,
    U3,
    alpha,
    cyclic_transform,
    generator,
    j_generator,
    to_cartesian_matrix,
    to_cyclic_matrix,
    verify_algebra,
)

finite = st.floats(-1e3, 1e3, allow_nan=False)


def test_verify_algebra_all_identities():
    res = verify_algebra()
    assert len(res) >= 40
    bad = {k: v for k, v in res.items() if v > 1e-15}
    assert not bad


@pytest.mark.parametrize("basis", list(Basis))
def test_alpha_quaternion_products(basis):
    a = [alpha(k, basis) for k in range(4)]
    assert np.allclose(a[0], np.eye(4), atol=0)
    for k in (1, 2, 3):
        assert np.allclose(a[k] @ a[k], -np.eye(4), atol=1e-15)
    assert np.allclose(a[1] @ a[2], a[3], atol=1e-15)
    assert np.allclose(a[2] @ a[3], a[1], atol=1e-15)
    assert np.allclose(a[3] @ a[1], a[2], atol=1e-15)


def test_alpha_on_field_gives_div_and_curl():
    # alpha^k d_k acting on (0, psi) packs div psi into slot 0 and curl psi below
    grad = np.arange(9.0).reshape(3, 3) + 1j * np.arange(9.0, 18.0).reshape(3, 3)  # grad[k, i] = d_k psi^i
    out = sum(alpha(k + 1) @ np.concatenate([[0], grad[k]]) for k in range(3))
    div = np.trace(grad)
    curl = np.array([grad[1, 2] - grad[2, 1], grad[2, 0] - grad[0, 2], grad[0, 1] - grad[1, 0]])
    assert out[0] == pytest.approx(div)
    assert np.allclose(out[1:], curl)


def test_generator_commutators_cartesian():
    s1, s2, s3 = (generator(i) for i in (1, 2, 3))
    assert np.array_equal(s1 @ s2 - s2 @ s1, s3)
    assert np.array_equal(s2 @ s3 - s3 @ s2, s1)
    assert np.array_equal(s3 @ s1 - s1 @ s3, s2)


def test_cyclic_s3_is_diagonal():
    s3c = generator(3, Basis.CYCLIC)
    assert np.allclose(np.diag(np.diag(s3c)), s3c)
    assert np.allclose(np.diag(s3c), [0, -1j, 0, 1j])


def test_j_generator_antisymmetry_and_boosts():
    for a in range(4):
        for b in range(4):
            assert np.array_equal(j_generator(a, b), -j_generator(b, a))
    assert np.array_equal(j_generator(2, 3), generator(1))
    assert np.array_equal(j_generator(0, 2), 1j * generator(2))


def test_u_unitary_and_inverse():
    u4, u4_inv = cyclic_transform()
    assert np.allclose(U3 @ U3.conj().T, np.eye(3), atol=1e-15)
    assert np.allclose(u4 @ u4_inv, np.eye(4), atol=1e-15)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_matrix_change_of_basis_round_trip(k):
    assert np.allclose(to_cartesian_matrix(to_cyclic_matrix(alpha(k))), alpha(k), atol=1e-15)


def test_matrices_are_read_only():
    with pytest.raises(ValueError):
        alpha(1)[0, 0] = 5


@pytest.mark.parametrize("bad", [-1, 4, 1.5])
def test_alpha_index_validation(bad):
    with pytest.raises(ValueError):
        alpha(bad)


def test_generator_and_j_index_validation():
    with pytest.raises(ValueError):
        generator(0)
    with pytest.raises(ValueError):
        j_generator(0, 4)


def test_field_vector_shape_check():
    with pytest.raises(ValueError):
        FieldVector(np.zeros(3))


@given(st.lists(finite, min_size=6, max_size=6))
def test_field_vector_round_trip(v):
    fv = FieldVector.from_fields(v[:3], v[3:])
    assert fv.auxiliary == 0
    back = fv.to_basis(Basis.CYCLIC).to_basis(Basis.CARTESIAN)
    assert np.allclose(back.components, fv.components, atol=1e-12)


@given(st.lists(finite, min_size=6, max_size=6))
def test_cyclic_transform_preserves_norm(v):
    fv = FieldVector.from_fields(v[:3], v[3:])
    cyc = fv.to_basis(Basis.CYCLIC)
    assert np.linalg.norm(cyc.components) == pytest.approx(np.linalg.norm(fv.components), rel=1e-13, abs=1e-12)
    assert cyc.auxiliary == 0
