import math

import numpy as np
import pytest

import oracles
from systole import symspace as S
from systole.errors import DomainError

G = S.GroupElement([[2, 1], [1, 1]])
ROT = S.GroupElement([[0, -1], [1, 0]])
E2 = np.diag([math.e ** 2, math.e ** -2])


def test_spd_point_validation():
    S.SpdPoint(np.eye(3))
    with pytest.raises(ValueError):
        S.SpdPoint([[1.0, 0.1], [0.0, 1.0]])
    with pytest.raises(ValueError):
        S.SpdPoint(np.diag([2.0, 2.0]))
    with pytest.raises(ValueError):
        S.SpdPoint(np.diag([-1.0, -1.0]))
    p = S.SpdPoint(np.eye(2))
    with pytest.raises(ValueError):
        p.entries[0, 0] = 3.0


def test_group_element_requires_det_one():
    with pytest.raises(ValueError):
        S.GroupElement([[2, 0], [0, 1]])
    assert (G @ ROT).is_integral()
    assert S.GroupElement([["1/2", 0], [0, 2]]).is_integral() is False


def test_normalize_examples():
    assert np.allclose(S.normalize(np.eye(2)).entries, np.eye(2))
    assert np.allclose(S.normalize(np.diag([2.0, 2.0])).entries, np.eye(2))
    assert np.allclose(S.normalize(np.diag([8.0, 0.5])).entries, np.diag([4.0, 0.25]))
    with pytest.raises(ValueError):
        S.normalize(np.diag([1.0, -2.0]))


def test_distance_examples():
    assert S.distance_to_identity(np.eye(3)) == 0.0
    assert S.distance_to_identity(E2) == pytest.approx(2 * math.sqrt(2), abs=1e-12)
    ref = math.sqrt(2) * math.log((7 + 3 * math.sqrt(5)) / 2)
    assert S.distance_to_identity([[5.0, 3.0], [3.0, 2.0]]) == pytest.approx(ref, abs=1e-12)
    assert S.distance(E2, E2) == pytest.approx(0.0, abs=1e-12)
    assert S.distance(np.eye(2), E2) == pytest.approx(2 * math.sqrt(2), abs=1e-12)


def test_distance_against_generalized_eigenproblem():
    for seed in range(30):
        n = 2 + seed % 3
        x, y = S.sample_spd(n, seed), S.sample_spd(n, 1000 + seed)
        assert S.distance(x, y) == pytest.approx(
            oracles.spd_distance_scipy(x.entries, y.entries), abs=1e-9)


def test_isometry_examples():
    x = S.SpdPoint(np.diag([4.0, 0.25]))
    assert np.allclose(S.apply_isometry(S.GroupElement(np.eye(2, dtype=int).tolist()), x).entries,
                       x.entries)
    assert np.allclose(S.apply_isometry(ROT, x).entries, np.diag([0.25, 4.0]))
    assert S.displacement(ROT, np.eye(2)) == pytest.approx(0.0, abs=1e-12)
    assert S.displacement(G, np.eye(2)) == pytest.approx(
        S.distance_to_identity([[5.0, 3.0], [3.0, 2.0]]), abs=1e-12)


def test_translation_bound_examples():
    golden_sq = (3 + math.sqrt(5)) / 2
    assert S.translation_lower_bound(G) == pytest.approx(math.log(golden_sq), abs=1e-12)
    assert S.translation_lower_bound(ROT) == 0.0
    assert S.translation_lower_bound(ROT, use_adjoint=True) == 0.0
    # Ad(g) has eigenvalues a^2, 1, a^-2 with a^2 = golden_sq^2: bound 2 * 2 log(golden_sq) / 3
    assert S.translation_lower_bound(G, True) == pytest.approx(4 * math.log(golden_sq) / 3,
                                                               abs=1e-12)
    pts = [S.sample_spd(2, s) for s in range(100)]
    assert np.all(S.displacements(G, pts) >= S.translation_lower_bound(G) - 1e-9)


def test_adjoint_needs_integral_g():
    g = S.GroupElement([["1/2", 0], [0, 2]])
    with pytest.raises(DomainError):
        S.translation_lower_bound(g, use_adjoint=True)


def test_systole_lower_bound_examples():
    assert S.systole_lower_bound([ROT, ROT @ ROT]) == math.inf
    b = S.translation_lower_bound(G)
    assert S.systole_lower_bound([G]) == pytest.approx(0.96242, abs=1e-5)
    assert S.systole_lower_bound([G, G @ G]) == pytest.approx(b, abs=1e-12)
    assert S.translation_lower_bound(G @ G) == pytest.approx(2 * b, abs=1e-12)
    with pytest.raises(ValueError):
        S.systole_lower_bound([])


def test_sample_spd_determinism_and_distinctness():
    a, b = S.sample_spd(3, 42), S.sample_spd(3, 42)
    assert np.array_equal(a.entries, b.entries)
    keys = {S.sample_spd(2, s).entries.tobytes() for s in range(1000)}
    assert len(keys) == 1000


def test_hyperbolic_samples_have_m_above_one():
    for n in (2, 3):
        for g in S.sample_hyperbolic_elements(n, 20, seed=n):
            assert S.translation_lower_bound(g) > 0


def test_gram_eigenvalue_dominates_spectral_radius_squared():
    for n in (2, 3):
        for g in S.sample_hyperbolic_elements(n, 50, seed=10 + n):
            a = g.as_float()
            top = float(np.max(np.linalg.eigvalsh(a @ a.T)))
            assert top >= S.spectral_radius(g) ** 2 - 1e-8
