import numpy as np
import pytest

from spinwitness.spin import (
    SpinEnsemble,
    collective_operator,
    direction_operator,
    rotate_about_z,
    spin_matrices,
)

SQ2 = np.sqrt(2)


def test_spin_half_is_half_pauli():
    jx, jy, jz = spin_matrices(0.5)
    np.testing.assert_allclose(jx, [[0, 0.5], [0.5, 0]], atol=0)
    np.testing.assert_allclose(jy, [[0, -0.5j], [0.5j, 0]], atol=0)
    np.testing.assert_allclose(jz, [[0.5, 0], [0, -0.5]], atol=0)


def test_spin_one_matrices():
    jx, jy, jz = spin_matrices(1)
    np.testing.assert_allclose(jz, np.diag([1, 0, -1]), atol=0)
    want_x = np.array([[0, SQ2, 0], [SQ2, 0, SQ2], [0, SQ2, 0]]) / 2
    np.testing.assert_allclose(jx, want_x, atol=1e-15)
    np.testing.assert_allclose(jy, np.array([[0, -SQ2, 0], [SQ2, 0, -SQ2], [0, SQ2, 0]]) * 1j / 2, atol=1e-15)


@pytest.mark.parametrize("j", [0.5, 1, 1.5, 2.5])
def test_su2_algebra(j):
    jx, jy, jz = spin_matrices(j)
    np.testing.assert_allclose(jx @ jy - jy @ jx, 1j * jz, atol=1e-13)
    np.testing.assert_allclose(jy @ jz - jz @ jy, 1j * jx, atol=1e-13)
    np.testing.assert_allclose(jz @ jx - jx @ jz, 1j * jy, atol=1e-13)
    casimir = jx @ jx + jy @ jy + jz @ jz
    np.testing.assert_allclose(casimir, j * (j + 1) * np.eye(round(2 * j + 1)), atol=1e-13)


def test_spin_zero_is_trivial():
    jx, jy, jz = spin_matrices(0)
    for m in (jx, jy, jz):
        assert m.shape == (1, 1)
        assert m[0, 0] == 0


def test_spin_matrices_reject_non_half_integer():
    with pytest.raises(ValueError):
        spin_matrices(0.3)
    with pytest.raises(ValueError):
        spin_matrices(-0.5)


class TestSpinEnsemble:
    def test_basic_properties(self):
        e = SpinEnsemble((0.5, 1, 1))
        assert e.N == 3
        assert e.K == 5
        assert e.local_dims == (2, 3, 3)
        assert e.dim == 18

    def test_rejects_integer_total(self):
        with pytest.raises(ValueError, match="odd K"):
            SpinEnsemble((0.5, 0.5))
        with pytest.raises(ValueError, match="odd K"):
            SpinEnsemble((1,))

    def test_rejects_empty_and_spin_zero(self):
        with pytest.raises(ValueError):
            SpinEnsemble(())
        with pytest.raises(ValueError, match="spin-0"):
            SpinEnsemble((0.5, 0, 1))

    def test_accepts_single_large_spin(self):
        e = SpinEnsemble((1.5,))
        assert e.K == 3 and e.dim == 4

    def test_frozen_and_hashable(self):
        e = SpinEnsemble((0.5, 0.5, 0.5))
        assert e == SpinEnsemble([0.5, 0.5, 0.5])
        assert hash(e) == hash(SpinEnsemble([0.5, 0.5, 0.5]))


def test_collective_operator_is_sum_of_embeddings():
    e = SpinEnsemble((0.5, 1, 1))
    J = collective_operator(e)
    jx0, _, _ = spin_matrices(0.5)
    jx1, _, _ = spin_matrices(1)
    want = (
        np.kron(np.kron(jx0, np.eye(3)), np.eye(3))
        + np.kron(np.kron(np.eye(2), jx1), np.eye(3))
        + np.kron(np.kron(np.eye(2), np.eye(3)), jx1)
    )
    np.testing.assert_allclose(J.Jx, want, atol=1e-14)


def test_collective_operator_su2_and_stretched_eigenvalues():
    e = SpinEnsemble((0.5, 0.5, 0.5))
    J = collective_operator(e)
    np.testing.assert_allclose(J.Jx @ J.Jy - J.Jy @ J.Jx, 1j * J.Jz, atol=1e-13)
    diag = np.real(np.diag(J.Jz))
    # particle 1 most significant, descending m: first entry K/2, last -K/2
    assert diag[0] == pytest.approx(1.5)
    assert diag[-1] == pytest.approx(-1.5)
    assert np.abs(J.Jz - np.diag(diag)).max() < 1e-15  # Jz diagonal in the product basis


def test_direction_operator_axes_and_period():
    e = SpinEnsemble((0.5, 1, 1))
    J = collective_operator(e)
    np.testing.assert_allclose(direction_operator(J, 0, 5), J.Jx, atol=0)
    np.testing.assert_allclose(direction_operator(J, 0, 5, np.pi / 2), J.Jy, atol=1e-15)
    a = direction_operator(J, 2, 5, 0.3)
    b = direction_operator(J, 2, 5, 0.3 + 2 * np.pi)
    np.testing.assert_allclose(a, b, atol=1e-13)
    with pytest.raises(ValueError):
        direction_operator(J, 5, 5)
    with pytest.raises(ValueError):
        direction_operator(J, -1, 5)


def test_direction_operator_equals_rotated_jx():
    e = SpinEnsemble((0.5, 0.5, 0.5))
    J = collective_operator(e)
    K = e.K
    for k in range(K):
        rotated = rotate_about_z(J.Jx, J.Jz, 2 * np.pi * k / K)
        np.testing.assert_allclose(direction_operator(J, k, K), rotated, atol=1e-13)


def test_rotate_about_z_full_turn_and_unitarity():
    e = SpinEnsemble((0.5, 1, 1))
    J = collective_operator(e)
    np.testing.assert_allclose(rotate_about_z(J.Jx, J.Jz, 2 * np.pi), J.Jx, atol=1e-13)
    # spectrum invariant under conjugation
    before = np.linalg.eigvalsh(J.Jx)
    after = np.linalg.eigvalsh(rotate_about_z(J.Jx, J.Jz, 0.7))
    np.testing.assert_allclose(before, after, atol=1e-12)


def test_rotate_about_generic_generator():
    # rotating Jy about Jx by pi flips it
    e = SpinEnsemble((0.5, 0.5, 0.5))
    J = collective_operator(e)
    flipped = rotate_about_z(J.Jy, J.Jx, np.pi)
    np.testing.assert_allclose(flipped, -J.Jy, atol=1e-12)
