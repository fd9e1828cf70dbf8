import numpy as np
import pytest

from spinwitness.classical import ClassicalVector, classical_score, classical_sweep_max


def brute_score(K, phi0):
    # direct re-statement of the definition, kept separate from the module
    hits = 0.0
    for k in range(K):
        c = np.cos(2 * np.pi * k / K - phi0)
        if c > 1e-12:
            hits += 1
        elif abs(c) <= 1e-12:
            hits += 0.5
    return hits / K


def test_frozen_values_k3():
    # aligned with direction 0: the other two directions point away
    assert classical_score(3, 0.0) == pytest.approx(1 / 3, abs=1e-15)
    # anti-aligned: both others have positive projection
    assert classical_score(3, np.pi) == pytest.approx(2 / 3, abs=1e-15)


@pytest.mark.parametrize("K", [3, 5, 7])
def test_matches_brute_definition(K):
    for phi0 in np.linspace(0, 2 * np.pi, 17):
        assert classical_score(K, phi0) == pytest.approx(brute_score(K, phi0), abs=1e-15)


def test_boundary_angle_counts_half():
    # phi0 = pi/2 puts direction 0 exactly orthogonal (counts 1/2); the other
    # two directions land at +-cos(pi/6), one positive and one negative
    assert classical_score(3, np.pi / 2) == pytest.approx(0.5, abs=1e-15)


@pytest.mark.parametrize("K", [3, 5, 7, 9])
def test_sweep_max_equals_half_plane_bound(K):
    assert classical_sweep_max(K) == pytest.approx((1 + 1 / K) / 2, abs=1e-9)


def test_sweep_never_exceeds_bound():
    for K in (3, 5, 7):
        bound = (1 + 1 / K) / 2
        for phi0 in np.linspace(0, 2 * np.pi, 1009):
            assert classical_score(K, phi0) <= bound + 1e-12


def test_score_is_periodic():
    assert classical_score(5, 0.4) == pytest.approx(classical_score(5, 0.4 + 2 * np.pi), abs=1e-12)


def test_rejects_even_k():
    with pytest.raises(ValueError):
        classical_score(4, 0.0)
    with pytest.raises(ValueError):
        classical_sweep_max(2)


def test_classical_vector_validation():
    v = ClassicalVector(0.3)
    assert v.magnitude == 1.0
    with pytest.raises(ValueError):
        ClassicalVector(0.3, magnitude=0.0)
