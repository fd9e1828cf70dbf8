from fractions import Fraction

import numpy as np
import pytest

from spinwitness.linalg import binomial_exact
from spinwitness.spin import SpinEnsemble, collective_operator, rotate_about_z, spin_matrices
from spinwitness.states import ghz_like, ghz_mixture, product_state
from spinwitness.witness import (
    build_qk_closed_form,
    build_qk_direct,
    generalized_witness,
    phase_for_ghz,
    pos_operator,
    score,
    witness_report,
)

E3 = SpinEnsemble((0.5, 0.5, 0.5))
E_MIXED = SpinEnsemble((1, 0.5))
E5 = SpinEnsemble((0.5,) * 5)


# --- pos operator ---


def test_pos_of_spin_half_jz():
    _, _, jz = spin_matrices(0.5)
    np.testing.assert_allclose(pos_operator(jz), np.diag([1.0, 0.0]), atol=1e-14)


def test_pos_assigns_half_to_zero_eigenvalue():
    _, _, jz = spin_matrices(1)
    np.testing.assert_allclose(pos_operator(jz), np.diag([1.0, 0.5, 0.0]), atol=1e-14)


def test_pos_complement_identity():
    # pos(-A) = 1 - pos(A) for a spectrum without zeros
    J = collective_operator(E3)
    p = pos_operator(J.Jx)
    q = pos_operator(-J.Jx)
    np.testing.assert_allclose(p + q, np.eye(8), atol=1e-12)
    assert np.trace(p).real == pytest.approx(4.0, abs=1e-12)  # symmetric spectrum, no zeros


def test_pos_is_projector_when_no_zero_modes():
    J = collective_operator(E_MIXED)
    p = pos_operator(J.Jy)
    np.testing.assert_allclose(p @ p, p, atol=1e-12)


# --- operator constructions ---


@pytest.mark.parametrize("ensemble", [E3, E_MIXED, SpinEnsemble((1.5,))])
@pytest.mark.parametrize("theta", [0.0, 0.41, 2.2])
def test_direct_equals_closed_form(ensemble, theta):
    d = build_qk_direct(ensemble, theta)
    c = build_qk_closed_form(ensemble, theta)
    assert np.abs(d.Q - c.Q).max() < 1e-12
    assert d.K == c.K == ensemble.K


def test_witness_is_half_identity_plus_corner_coupling():
    # the only structure sits in the two stretched corners
    K = E3.K
    w = build_qk_direct(E3, 0.37)
    delta = w.Q - np.eye(8) / 2
    coupling = binomial_exact(K - 1, (K - 1) // 2) / 2**K
    assert abs(abs(delta[0, -1]) - coupling) < 1e-12
    mask = np.ones((8, 8), dtype=bool)
    mask[0, -1] = mask[-1, 0] = False
    assert np.abs(delta[mask]).max() < 1e-12


def test_witness_spectrum():
    rep = witness_report(5)
    w = build_qk_closed_form(E5)
    eigs = np.sort(np.linalg.eigvalsh(w.Q))
    want = np.sort(np.r_[1 - rep.P_max_float, np.full(30, 0.5), rep.P_max_float])
    np.testing.assert_allclose(eigs, want, atol=1e-12)


def test_witness_offset_periodicity():
    K = E3.K
    a = build_qk_direct(E3, 0.2)
    b = build_qk_direct(E3, 0.2 + 2 * np.pi / K)
    np.testing.assert_allclose(a.Q, b.Q, atol=1e-12)


def test_witness_symmetries():
    J = collective_operator(E3)
    q = build_qk_direct(E3).Q
    np.testing.assert_allclose(rotate_about_z(q, J.Jz, 2 * np.pi / 3), q, atol=1e-12)
    np.testing.assert_allclose(rotate_about_z(q, J.Jx, np.pi), q, atol=1e-12)


# --- exact bound table ---


def test_report_frozen_small_k():
    r3 = witness_report(3)
    assert (r3.P_max, r3.P_sep, r3.P_classical, r3.gap) == (
        Fraction(3, 4), Fraction(5, 8), Fraction(2, 3), Fraction(1, 8))
    r5 = witness_report(5)
    assert (r5.P_max, r5.P_sep, r5.P_classical, r5.gap) == (
        Fraction(11, 16), Fraction(19, 32), Fraction(3, 5), Fraction(3, 32))
    r7 = witness_report(7)
    assert (r7.P_sep, r7.P_classical) == (Fraction(37, 64), Fraction(4, 7))


def test_report_k_equals_one():
    r = witness_report(1)
    assert r.P_max == 1 and r.P_sep == Fraction(3, 4) and r.gap == Fraction(1, 4)


@pytest.mark.parametrize("K", range(1, 42, 2))
def test_report_internal_identities(K):
    r = witness_report(K)
    c = binomial_exact(K - 1, (K - 1) // 2)
    assert r.P_max == Fraction(1, 2) + Fraction(c, 2**K)
    assert r.P_sep == Fraction(1, 2) + Fraction(c, 2 ** (K + 1))
    assert r.P_max - r.P_sep == r.gap
    assert r.P_max_float == float(r.P_max)


def test_report_rejects_even_or_nonpositive():
    for bad in (0, 2, -3, 4):
        with pytest.raises(ValueError):
            witness_report(bad)


def test_gap_decreases_monotonically():
    gaps = [witness_report(k).gap for k in range(1, 42, 2)]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))


# --- scoring ---


def test_every_basis_product_state_scores_half():
    w = build_qk_direct(E3)
    up = np.array([1, 0], dtype=complex)
    dn = np.array([0, 1], dtype=complex)
    for kets in ([up, up, up], [dn, dn, dn], [up, dn, up]):
        assert score(product_state(E3, kets), w) == pytest.approx(0.5, abs=1e-12)


def test_mixture_scores_exactly_half_at_any_offset():
    for theta in (0.0, 0.5, 1.9):
        w = build_qk_direct(E3, theta)
        assert score(ghz_mixture(E3), w) == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("ensemble", [E3, E5, E_MIXED])
def test_score_follows_cosine_law(ensemble):
    # <ghz(phi)| Q(theta) |ghz(phi)> = 1/2 + 2 gap s cos(phi - K theta), s = (-1)^((K-1)/2)
    K = ensemble.K
    rep = witness_report(K)
    s = (-1) ** ((K - 1) // 2)
    theta = 0.213
    w = build_qk_direct(ensemble, theta)
    for phi in np.linspace(0, 2 * np.pi, 9):
        got = score(ghz_like(ensemble, phi), w)
        want = 0.5 + 2 * rep.gap_float * s * np.cos(phi - K * theta)
        assert got == pytest.approx(want, abs=1e-12)


def test_score_rejects_dim_mismatch():
    w = build_qk_direct(E3)
    with pytest.raises(ValueError, match="dim"):
        score(ghz_like(E_MIXED), w)


# --- phase matching ---


def test_phase_for_ghz_frozen_examples():
    assert phase_for_ghz(0.0, 3) == pytest.approx(np.pi / 3, abs=1e-15)
    assert phase_for_ghz(np.pi, 3) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("K", [3, 5])
def test_phase_for_ghz_attains_maximum(K):
    ensemble = SpinEnsemble((0.5,) * K)
    rep = witness_report(K)
    for phi in (0.0, np.pi / 4, np.pi, 3 * np.pi / 2, 5.1):
        theta = phase_for_ghz(phi, K)
        assert 0 <= theta < 2 * np.pi / K
        w = build_qk_closed_form(ensemble, theta)
        assert score(ghz_like(ensemble, phi), w) == pytest.approx(rep.P_max_float, abs=1e-12)


# --- generalized couplings ---


def test_generalized_sign_coupling_frozen():
    sign = lambda x: float(np.sign(x))
    assert generalized_witness(E3, 0.0, sign).f_K == pytest.approx(0.5, abs=1e-10)
    assert generalized_witness(E_MIXED, 0.0, sign).f_K == pytest.approx(0.5, abs=1e-10)
    assert generalized_witness(E5, 0.0, sign).f_K == pytest.approx(0.375, abs=1e-10)


def test_generalized_half_sign_recovers_sep_bound():
    for ensemble in (E3, E5):
        rep = witness_report(ensemble.K)
        gw = generalized_witness(ensemble, 0.5, lambda x: float(np.sign(x)) / 2)
        assert gw.sep_bound == pytest.approx(rep.P_sep_float, abs=1e-10)


def test_generalized_linear_function_is_blind():
    for ensemble in (E3, E5):
        assert generalized_witness(ensemble, 0.0, lambda x: x).f_K == pytest.approx(0.0, abs=1e-10)


def test_generalized_cubic_couples_only_at_k3():
    assert generalized_witness(E3, 0.0, lambda x: x**3).f_K == pytest.approx(0.75, abs=1e-10)
    assert generalized_witness(E5, 0.0, lambda x: x**3).f_K == pytest.approx(0.0, abs=1e-10)


def test_generalized_rejects_non_odd_functions():
    with pytest.raises(ValueError, match="odd"):
        generalized_witness(E3, 0.0, lambda x: x * x)
    with pytest.raises(ValueError, match="odd"):
        generalized_witness(E3, 0.0, lambda x: np.cos(x))
