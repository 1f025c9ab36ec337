import math

import pytest

import oracles
from systole import volumes as V
from systole.errors import ConvergenceError


def test_query_validation():
    for d, r in [(1, 1.0), (2, 0.0), (2, -1.0), (2, math.inf), (2.5, 1.0)]:
        with pytest.raises(ValueError):
            V.VolumeQuery(d, r)


def test_euclidean_examples():
    assert V.euclidean_ball_volume(2, 1.0) == pytest.approx(math.pi, rel=1e-15)
    assert V.euclidean_ball_volume(3, 1.0) == pytest.approx(4 * math.pi / 3, rel=1e-15)
    assert V.euclidean_ball_volume(2, 0.25) == pytest.approx(0.1963495, abs=1e-7)
    for d in range(2, 12):
        assert V.euclidean_ball_volume(d, 0.7) == pytest.approx(oracles.euclidean_volume_mp(d, 0.7),
                                                                rel=1e-13)


def test_hyperbolic_examples():
    # closed forms 2 pi (cosh r - 1) and pi (sinh 2r - 2r)
    assert V.hyperbolic_ball_volume(2, 1.0) == pytest.approx(2 * math.pi * (math.cosh(1) - 1),
                                                             abs=1e-9)
    assert V.hyperbolic_ball_volume(2, 1.0) == pytest.approx(3.4122763, abs=1e-7)
    assert V.hyperbolic_ball_volume(3, 1.0) == pytest.approx(5.1109, abs=1e-4)
    r = 1e-3
    assert V.hyperbolic_ball_volume(4, r) / V.euclidean_ball_volume(4, r) == pytest.approx(1, abs=1e-4)


def test_hyperbolic_against_mpmath():
    for d in (2, 4, 7, 10):
        for r in (0.3, 1.25, 2.5):
            assert V.hyperbolic_ball_volume(d, r) == pytest.approx(
                oracles.hyperbolic_volume_mp(d, r), abs=1e-9, rel=1e-10)


def test_adaptive_simpson_depth_cap():
    with pytest.raises(ConvergenceError):
        V.adaptive_simpson(lambda t: t ** -0.9 if t > 0 else 0.0, 0.0, 1.0, 1e-12)


def test_lemma_constant():
    ref = 2 * math.pi * (math.cosh(1.25) - 1) / (math.pi * 0.0625)
    assert V.lemma_constant(2) == pytest.approx(ref, rel=1e-10)
    assert V.lemma_constant(2) == pytest.approx(28.428, abs=0.01)
    assert V.lemma_constant(3) > 125


@pytest.mark.parametrize("d, radii", [(2, [0.1, 1, 3]), (10, [0.5, 2]), (5, [1e-9])])
def test_verify_comparison(d, radii):
    rep = V.verify_comparison(d, radii)
    assert rep.ok
    assert all(r >= 1 - 1e-9 for r in rep.ratios)
    if radii == [1e-9]:
        assert rep.ratios[0] == pytest.approx(1.0, abs=1e-9)
