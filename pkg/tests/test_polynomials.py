import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from systole import polynomials as P
from systole.errors import DomainError, MahlerDisagreement
from systole.polynomials import IntPolynomial

LEHMER = IntPolynomial([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])


def monic(max_degree, max_height, nonzero_constant=True):
    def build(draw_low):
        return IntPolynomial(list(draw_low) + [1])
    low = st.integers(1, max_degree).flatmap(
        lambda d: st.lists(st.integers(-max_height, max_height), min_size=d, max_size=d))
    if nonzero_constant:
        low = low.filter(lambda cs: cs[0] != 0)
    return low.map(build)


# --- IntPolynomial -----------------------------------------------------------

def test_construction_strips_and_validates():
    assert IntPolynomial([1, 2, 0, 0]).coeffs == (1, 2)
    assert IntPolynomial(["3", " -1 "]).coeffs == (3, -1)
    with pytest.raises(ValueError):
        IntPolynomial([0, 0])
    with pytest.raises(TypeError):
        IntPolynomial([1.5, 1])
    with pytest.raises(TypeError):
        IntPolynomial([True, 1])


def test_big_coefficients_are_exact():
    big = 10 ** 40 + 7
    f = IntPolynomial([big, 1])
    assert f.coeffs[0] == big
    assert f(-big) == 0


def test_str_and_eval():
    f = IntPolynomial([-2, -1, -1, 1])
    assert str(f) == "x^3 - x^2 - x - 2"
    assert f(2) == 0


def test_poly_mul_examples():
    assert (IntPolynomial([-1, 1]) * IntPolynomial([1, 1])).coeffs == (-1, 0, 1)
    f = IntPolynomial([3, 0, 1])
    assert (f * IntPolynomial([1])).coeffs == f.coeffs
    assert (IntPolynomial([1, 1, 1]) * IntPolynomial([-2, 1])).coeffs == (-2, -1, -1, 1)


# --- squarefree --------------------------------------------------------------

def test_squarefree_decomposition_recovers_powers():
    a = IntPolynomial([-1, 1])          # x - 1
    b = IntPolynomial([1, 1, 1])        # x^2 + x + 1
    c = IntPolynomial([-2, 0, 1])       # x^2 - 2
    f = a * a * a * b * b * c
    got = {(g.coeffs, m) for g, m in P.squarefree_decomposition(f)}
    assert got == {(c.coeffs, 1), (b.coeffs, 2), (a.coeffs, 3)}
    assert P.squarefree_part(f).coeffs == (a * b * c).coeffs


@settings(max_examples=60, deadline=None)
@given(monic(5, 3), monic(4, 3))
def test_squarefree_part_matches_sympy(f, g):
    h = f * f * g
    expected = oracles.sympy.sqf_part(oracles.sym_poly(h.coeffs))
    got = oracles.sym_poly(P.squarefree_part(h).coeffs)
    assert (got - expected).is_zero or (got + expected).is_zero


# --- roots -------------------------------------------------------------------

def test_complex_roots_examples():
    r = P.complex_roots(IntPolynomial([1, 0, 1]))
    assert r[0] == pytest.approx(1j, abs=1e-12) and r[1] == pytest.approx(-1j, abs=1e-12)
    r = P.complex_roots(IntPolynomial([-1, -1, 1]))
    assert r[0].real == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-12)
    assert r[1].real == pytest.approx((1 - math.sqrt(5)) / 2, abs=1e-12)


def test_triple_root():
    roots = P.complex_roots(IntPolynomial([-1, 3, -3, 1]))
    assert len(roots) == 3
    assert all(abs(z - 1) < 1e-5 for z in roots)


@settings(max_examples=40, deadline=None)
@given(monic(10, 5))
def test_root_backward_residuals(f):
    for z in P.complex_roots(f):
        scale = sum(abs(c) * abs(z) ** k for k, c in enumerate(f.coeffs))
        assert abs(f(z)) <= 1e-10 * scale


# --- Mahler measure ----------------------------------------------------------

@pytest.mark.parametrize("coeffs, value", [
    ([-1, 1], 1.0),
    ([-2, 1], 2.0),
    ([-1, -1, 1], (1 + math.sqrt(5)) / 2),
])
def test_mahler_small_cases(coeffs, value):
    assert P.mahler_measure(IntPolynomial(coeffs)) == pytest.approx(value, rel=1e-12)


def test_lehmer_both_paths_and_mpmath():
    paths = P.mahler_paths(LEHMER)
    assert abs(paths.roots - paths.graeffe) < 1e-10
    assert paths.roots == pytest.approx(1.17628082, abs=1e-8)
    assert paths.roots == pytest.approx(oracles.mahler_mp(LEHMER.coeffs), rel=1e-12)
    assert not P.is_cyclotomic_product(LEHMER)
    assert P.log_mahler_measure(LEHMER) == pytest.approx(0.162357, abs=1e-6)


def test_mahler_against_mpmath_on_random_polys():
    rng = random.Random(7)
    for _ in range(40):
        d = rng.randint(1, 12)
        low = [rng.randint(-5, 5) for _ in range(d)]
        f = IntPolynomial(low + [1])
        assert P.mahler_measure(f) == pytest.approx(oracles.mahler_mp(f.coeffs), rel=1e-9)


def test_mahler_with_repeated_cyclotomic_factors():
    f = IntPolynomial([-2, 1]) * IntPolynomial([-1, 0, 0, 0, 1]) * IntPolynomial([-1, 0, 0, 0, 1])
    assert P.mahler_measure(f) == pytest.approx(2.0, rel=1e-12)


def test_disagreement_carries_both_values():
    exc = MahlerDisagreement(1.0, 1.5)
    assert exc.roots_value == 1.0 and exc.graeffe_value == 1.5


def test_non_monic_rejected():
    with pytest.raises(DomainError):
        P.mahler_measure(IntPolynomial([1, 2]))


@settings(max_examples=40, deadline=None)
@given(monic(8, 3), monic(8, 3))
def test_multiplicativity(f, g):
    lhs = P.log_mahler_measure(f * g)
    assert abs(lhs - P.log_mahler_measure(f) - P.log_mahler_measure(g)) < 1e-7


@settings(max_examples=40, deadline=None)
@given(monic(9, 4))
def test_mahler_at_least_one_and_reciprocal(f):
    m = P.mahler_measure(f)
    assert m >= 1.0 - 1e-12
    if abs(f.coeffs[0]) == 1:
        r = f.reciprocal()
        if r.leading == -1:
            r = IntPolynomial([-c for c in r.coeffs])
        assert P.mahler_measure(r) == pytest.approx(m, rel=1e-9)


def test_graeffe_step_squares_roots():
    # (x - 2)(x + 3) -> (x - 4)(x - 9)
    assert P.graeffe_step([-6, 1, 1]) == [36, -13, 1]


# --- cyclotomic products -----------------------------------------------------

def test_cyclotomic_examples():
    phi3 = IntPolynomial([1, 1, 1])
    golden = IntPolynomial([-1, -1, 1])
    assert P.is_cyclotomic_product(phi3)
    assert not P.is_cyclotomic_product(golden)
    assert not P.is_cyclotomic_product(phi3 * golden)
    assert P.is_cyclotomic_product(IntPolynomial([1, -2, 1]))


def test_cyclotomic_requires_nonzero_constant():
    with pytest.raises(DomainError):
        P.is_cyclotomic_product(IntPolynomial([0, 1, 1]))


def test_cyclotomic_against_sympy():
    rng = random.Random(11)
    seen = {True: 0, False: 0}
    for _ in range(150):
        d = rng.randint(1, 8)
        low = [rng.randint(-2, 2) for _ in range(d)]
        if low[0] == 0:
            low[0] = rng.choice([-1, 1])
        f = IntPolynomial(low + [1])
        expected = oracles.cyclotomic_sympy(f.coeffs)
        assert P.is_cyclotomic_product(f) is expected, f
        seen[expected] += 1
    # products of cyclotomic factors are built in explicitly
    for n in (5, 7, 9, 12, 15):
        cp = IntPolynomial([int(c) for c in reversed(oracles.sympy.Poly(
            oracles.sympy.cyclotomic_poly(n, oracles.X), oracles.X).all_coeffs())])
        assert P.is_cyclotomic_product(cp * cp * IntPolynomial([1, 1]))
    assert seen[False] > 0


# --- Dobrowolski -------------------------------------------------------------

def test_dobrowolski_rhs_values():
    with oracles.mpmath.workdps(30):
        mp = oracles.mpmath
        ref3 = float((mp.log(mp.log(3)) / mp.log(3)) ** 3)
        ref10 = float((mp.log(mp.log(10)) / mp.log(10)) ** 3)
    assert P.dobrowolski_rhs(3) == pytest.approx(ref3, rel=1e-13)
    assert P.dobrowolski_rhs(3) == pytest.approx(6.27e-4, abs=1e-6)
    assert P.dobrowolski_rhs(10) == pytest.approx(ref10, rel=1e-13)
    assert P.dobrowolski_rhs(7, c_tilde=0) == 0
    with pytest.raises(DomainError):
        P.dobrowolski_rhs(2)


def test_dobrowolski_turning_point():
    # (log x / x) peaks at x = e, so the shape peaks near d = e^e ~ 15.15
    t = P.dobrowolski_turning_point()
    assert t == 15
    assert P.dobrowolski_shape(15) > P.dobrowolski_shape(16) > P.dobrowolski_shape(17)
    assert P.dobrowolski_shape(14) < P.dobrowolski_shape(15)


def test_enumeration_order_and_size():
    polys = list(P.enumerate_monic(2, 1))
    assert [f.coeffs for f in polys[:2]] == [(-1, 1), (1, 1)]
    # degree 1: 2 choices; degree 2: 2 * 3
    assert len(polys) == 8


def test_scan_small_and_partial():
    rep = P.dobrowolski_scan(4, 1)
    assert rep.min_ratio > 0 and not rep.partial
    assert rep.witness is not None
    part = P.dobrowolski_scan(6, 2, max_polys=10)
    assert part.partial and part.scanned == 10
    with pytest.raises(DomainError):
        P.dobrowolski_scan(2, 1)
