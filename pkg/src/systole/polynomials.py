"""Integer polynomials, Mahler measures, cyclotomic detection and Dobrowolski's bound.

Polynomials are stored with ascending coefficients, so ``IntPolynomial([-1, -1, 1])``
is x^2 - x - 1.

The Mahler measure is computed two independent ways:

* roots route: squarefree decomposition (exact, Yun) followed by Aberth
  iteration on each squarefree factor;
* Graeffe route: repeated root squaring on the coefficients (exact integers
  while they stay small, normalised floats afterwards), reading off the
  dominant coefficient.

:func:`mahler_measure` only returns a value when both routes agree.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .errors import ConvergenceError, DomainError, MahlerDisagreement

ROOT_TOL = 1e-12
ROOT_MAX_ITER = 1000
GRAEFFE_STEPS = 48
GRAEFFE_EXACT_BITS = 256
AGREEMENT_RTOL = 1e-8


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients in ascending degree order."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Sequence[int | str]):
        cs = []
        for c in coeffs:
            if isinstance(c, (bool, np.bool_)):
                raise TypeError("boolean coefficients are not allowed")
            if isinstance(c, str):
                c = int(c.strip())
            elif isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"non-integer coefficient {c}")
                c = c.numerator
            elif isinstance(c, (int, np.integer)):
                c = int(c)
            else:
                raise TypeError(f"coefficients must be integers, got {type(c).__name__}")
            cs.append(c)
        while cs and cs[-1] == 0:
            cs.pop()
        if not cs:
            raise ValueError("the zero polynomial is not allowed")
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        return poly_mul(self, other)

    def derivative(self) -> list[int]:
        return [k * c for k, c in enumerate(self.coeffs)][1:]

    def reciprocal(self) -> "IntPolynomial":
        """x^d f(1/x), with trailing zeros stripped."""
        cs = list(reversed(self.coeffs))
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        return IntPolynomial(cs)

    def height(self) -> int:
        return max(abs(c) for c in self.coeffs)

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def poly_mul(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    out = [0] * (f.degree + g.degree + 1)
    for i, a in enumerate(f.coeffs):
        if a:
            for j, b in enumerate(g.coeffs):
                out[i + j] += a * b
    return IntPolynomial(out)


_MOD_PRIME = (1 << 61) - 1


def _gcd_degree_mod_p(a: Sequence[int], b: Sequence[int], p: int = _MOD_PRIME) -> int:
    """Degree of gcd(a, b) over GF(p)."""
    def red(q):
        q = [c % p for c in q]
        while q and q[-1] == 0:
            q.pop()
        return q

    a, b = red(a), red(b)
    while b:
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            coef = a[-1] * inv % p
            shift = len(a) - len(b)
            for j, bj in enumerate(b):
                a[shift + j] = (a[shift + j] - coef * bj) % p
            while a and a[-1] == 0:
                a.pop()
            if not a:
                break
        a, b = b, a
    return len(a) - 1


# --- exact integer polynomial helpers (lists of ints, ascending) ----------

def _trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _primitive(p: list) -> list:
    g = 0
    for c in p:
        g = math.gcd(g, c)
    if g > 1:
        p = [c // g for c in p]
    if p[-1] < 0:
        p = [-c for c in p]
    return p


def _prem(a: list, b: list) -> list:
    """Pseudo-remainder of a by b over the integers."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and not (len(a) == 1 and a[0] == 0):
        lead = a[-1]
        shift = len(a) - 1 - db
        a = [lb * c for c in a]
        for j, bj in enumerate(b):
            a[shift + j] -= lead * bj
        a.pop()
        _trim(a)
        if not a:
            a = [0]
    return a


def _int_gcd(a: list, b: list) -> list:
    """Primitive gcd of two integer polynomials (leading coefficient > 0)."""
    a = _primitive(_trim(list(a)))
    b = _trim(list(b))
    while not (len(b) == 1 and b[0] == 0):
        b = _primitive(b)
        a, b = b, _prem(a, b)
    return _primitive(a)


def _divexact_monic(a: list, b: list) -> list:
    """a / b for monic b, asserting that the division is exact."""
    a = list(a)
    db = len(b) - 1
    if not any(a):
        return [0]
    if len(a) - 1 < db:
        raise ArithmeticError("inexact polynomial division")
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        coef = a[k + db]
        q[k] = coef
        if coef:
            for j, bj in enumerate(b):
                a[k + j] -= coef * bj
    if any(a[:db]):
        raise ArithmeticError("inexact polynomial division")
    return _trim(q)


def _int_diff(p: list) -> list:
    d = [k * c for k, c in enumerate(p)][1:]
    return d if d else [0]


def _int_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(out)


def _monic_gcd(a: list, b: list) -> list:
    g = _int_gcd(a, b)
    if g[-1] != 1:
        # a monic argument forces a monic primitive gcd (Gauss's lemma)
        raise ArithmeticError(f"gcd is not monic: leading coefficient {g[-1]}")
    return g


def squarefree_decomposition(f: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Yun's algorithm: f = prod a_i^i with a_i squarefree and pairwise coprime.

    ``f`` must be monic; factors are then monic with integer coefficients.
    Constant factors are omitted.
    """
    if not f.is_monic():
        raise DomainError("squarefree_decomposition expects a monic polynomial")
    if f.degree == 0:
        return []
    if _gcd_degree_mod_p(f.coeffs, f.derivative()) == 0:
        return [(f, 1)]
    p = list(f.coeffs)
    dp = _int_diff(p)
    a0 = _monic_gcd(p, dp)
    b = _divexact_monic(p, a0)
    c = _divexact_monic(dp, a0)
    d = _int_sub(c, _int_diff(b))
    out = []
    i = 1
    while len(b) > 1:
        a = _monic_gcd(b, d)
        b = _divexact_monic(b, a)
        c = _divexact_monic(d, a)
        d = _int_sub(c, _int_diff(b))
        if len(a) > 1:
            out.append((IntPolynomial(a), i))
        i += 1
    return out


def squarefree_part(f: IntPolynomial) -> IntPolynomial:
    """Product of the distinct irreducible factors of a monic ``f``."""
    if f.degree == 0 or _gcd_degree_mod_p(f.coeffs, f.derivative()) == 0:
        return f
    p = list(f.coeffs)
    return IntPolynomial(_divexact_monic(p, _monic_gcd(p, _int_diff(p))))


# --- roots ------------------------------------------------------------------

def _horner_pd(cs: Sequence, z: complex) -> tuple[complex, complex]:
    p = 0j
    dp = 0j
    for c in reversed(cs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _aberth(cs: Sequence[float], tol: float, max_iter: int) -> list[complex]:
    """Aberth-Ehrlich iteration for a monic squarefree polynomial with p(0) != 0.

    Initial points lie on the circle of radius |c_0|^(1/d) (the geometric mean
    of the root moduli), at angles 2*pi*k/d + 0.4.
    """
    d = len(cs) - 1
    if d == 1:
        return [complex(-cs[0])]
    if d == 2:
        b, c = cs[1], cs[0]
        disc = cmath.sqrt(b * b - 4 * c)
        r1 = (-b - disc) / 2 if b.real >= 0 else (-b + disc) / 2
        r2 = c / r1
        roots = [r1, r2]
        for _ in range(2):
            roots = [_newton_polish(cs, r) for r in roots]
        return roots
    radius = abs(cs[0]) ** (1.0 / d)
    z = [radius * cmath.exp(1j * (2 * math.pi * k / d + 0.4)) for k in range(d)]
    done = [False] * d
    for _ in range(max_iter):
        moved = 0.0
        for k in range(d):
            if done[k]:
                continue
            zk = z[k]
            p, dp = _horner_pd(cs, zk)
            if p == 0:
                done[k] = True
                continue
            s = 0j
            for j in range(d):
                if j != k:
                    s += 1.0 / (zk - z[j])
            ratio = p / dp if dp != 0 else complex(1e-3)
            w = ratio / (1 - ratio * s)
            z[k] = zk - w
            step = abs(w) / max(1.0, abs(zk))
            moved = max(moved, step)
            if step < tol:
                done[k] = True
        if all(done):
            break
    else:
        res = max(abs(_horner_pd(cs, r)[0]) for r in z)
        raise ConvergenceError(f"Aberth iteration did not converge in {max_iter} steps", residual=res)
    return [_newton_polish(cs, r) for r in z]


def _newton_polish(cs: Sequence, z: complex) -> complex:
    p, dp = _horner_pd(cs, z)
    if dp == 0:
        return z
    cand = z - p / dp
    if abs(_horner_pd(cs, cand)[0]) <= abs(p):
        return cand
    return z


def _backward_scale(cs: Sequence[int], z: complex) -> float:
    r = abs(z)
    acc = 0.0
    for c in reversed(cs):
        acc = acc * r + abs(c)
    return acc


def _root_key(z: complex):
    return (-round(z.real, 9), -round(z.imag, 9))


def complex_roots(f: IntPolynomial, tol: float = ROOT_TOL, max_iter: int = ROOT_MAX_ITER) -> list[complex]:
    """All complex roots of ``f`` with multiplicity.

    Ordered by decreasing real part, then decreasing imaginary part.  Each
    root satisfies the backward-error test |f(z)| <= tol * sum |c_k| |z|^k.
    """
    if f.degree < 1:
        raise DomainError("complex_roots needs degree >= 1")
    roots = _roots_with_multiplicity(f, tol, max_iter)
    cs = f.coeffs
    worst = 0.0
    for z in roots:
        p, _ = _horner_pd(cs, z)
        ratio = abs(p) / max(_backward_scale(cs, z), 1e-300)
        worst = max(worst, ratio)
    # The backward error of f at a root of a squarefree factor is checked
    # against a floor a few ulps above the evaluation roundoff.
    limit = max(tol, 64 * (f.degree + 1) * 2.220446049250313e-16)
    if worst > limit:
        raise ConvergenceError(f"root residual {worst:.3e} exceeds tolerance {limit:.3e}", residual=worst)
    return sorted(roots, key=_root_key)


def _roots_with_multiplicity(f: IntPolynomial, tol: float, max_iter: int) -> list[complex]:
    cs = list(f.coeffs)
    zeros = 0
    while cs[0] == 0:
        cs.pop(0)
        zeros += 1
    roots = [0j] * zeros
    if len(cs) == 1:
        return roots
    g = IntPolynomial(cs)
    if not g.is_monic():
        raise DomainError("complex_roots expects a monic polynomial")
    for factor, mult in squarefree_decomposition(g):
        rs = _aberth([float(c) for c in factor.coeffs], tol, max_iter)
        for r in rs:
            roots.extend([r] * mult)
    return roots


# --- Mahler measure --------------------------------------------------------

def _require_monic(f: IntPolynomial, what: str) -> None:
    if f.degree < 1:
        raise DomainError(f"{what} needs degree >= 1")
    if not f.is_monic():
        raise DomainError(f"{what} expects a monic polynomial")


def log_mahler_roots(f: IntPolynomial, tol: float = ROOT_TOL) -> float:
    """log M(f) as the sum of log|a| over roots outside the unit circle."""
    _require_monic(f, "log_mahler_roots")
    total = 0.0
    for z in _roots_with_multiplicity(f, tol, ROOT_MAX_ITER):
        a = abs(z)
        if a > 1.0:
            total += math.log(a)
    return total


def graeffe_step(cs: Sequence[int]) -> list[int]:
    """Exact root squaring: returns g with g(x^2) = (-1)^d f(x) f(-x)."""
    d = len(cs) - 1
    sign = -1 if d % 2 else 1
    out = []
    for j in range(d + 1):
        m = 2 * j
        acc = 0
        lo = max(0, m - d)
        for i in range(lo, min(m, d) + 1):
            l = m - i
            term = cs[i] * cs[l]
            acc += -term if l % 2 else term
        out.append(sign * acc)
    return out


def _min_exact_steps(d: int) -> int:
    # Collisions a^(2^k) = b^(2^k) need a/b to be a root of unity of order
    # 2^t with 2^(t-1) <= d(d-1), so they all happen within this many steps.
    return max(3, math.ceil(math.log2(max(2, d * (d - 1)))) + 2)


def _float_graeffe(cs: Sequence[int], steps: int) -> float:
    """log of the largest coefficient after ``steps`` float squarings, scaled by 2^-steps."""
    d = len(cs) - 1
    if d == 0:
        return 0.0
    big = max(abs(c) for c in cs)
    fl = np.array([c / big for c in cs], dtype=float)
    log_scale = math.log(big)
    signs = np.array([-1.0 if i % 2 else 1.0 for i in range(d + 1)])
    outer = -1.0 if d % 2 else 1.0
    for _ in range(steps):
        h = np.convolve(fl, fl * signs)[::2] * outer
        m = float(np.max(np.abs(h)))
        fl = h / m
        log_scale = 2.0 * log_scale + math.log(m)
    return (log_scale + math.log(float(np.max(np.abs(fl))))) / 2.0 ** steps


def log_mahler_graeffe(f: IntPolynomial, steps: int = GRAEFFE_STEPS,
                       exact_bits: int = GRAEFFE_EXACT_BITS) -> float:
    """log M(f) by root squaring.

    After k squarings the roots are a_i^(2^k) and the largest coefficient
    equals M(f)^(2^k) up to a factor in [1, C(d, d/2)], so the estimate
    log(max |coeff|) / 2^k is within log C(d, d/2) / 2^k of log M(f).

    Coefficients stay exact integers for the steps in which squared roots
    can still collide and for as long as their bit length is below
    ``exact_bits``.  The exact polynomial is then split into squarefree
    factors, and each factor continues in normalised floating point with its
    scale carried in log form.  Float squaring of a repeated root on the unit
    circle would scatter it by about eps^(1/m), hence the split.
    """
    _require_monic(f, "log_mahler_graeffe")
    cs = list(f.coeffs)
    while cs[0] == 0:
        cs.pop(0)
    d = len(cs) - 1
    if d == 0:
        return 0.0
    min_exact = _min_exact_steps(d)
    k = 0
    while k < steps and (k < min_exact or max(abs(c) for c in cs).bit_length() <= exact_bits):
        cs = graeffe_step(cs)
        k += 1
    if k == steps:
        return math.log(max(abs(c) for c in cs)) / 2.0 ** steps
    g = IntPolynomial(cs)
    factors = squarefree_decomposition(g)
    total = sum(mult * _float_graeffe(h.coeffs, steps - k) for h, mult in factors)
    return total / 2.0 ** k


@dataclass(frozen=True)
class MahlerPaths:
    roots: float
    graeffe: float

    @property
    def rel_diff(self) -> float:
        return abs(self.roots - self.graeffe) / max(self.roots, self.graeffe)


def mahler_paths(f: IntPolynomial, tol: float = ROOT_TOL) -> MahlerPaths:
    """Both Mahler measure estimates, without the agreement check."""
    return MahlerPaths(math.exp(log_mahler_roots(f, tol)), math.exp(log_mahler_graeffe(f)))


def mahler_measure(f: IntPolynomial, rtol: float = AGREEMENT_RTOL) -> float:
    """M(f) = prod over roots of max(1, |a|), for monic ``f``.

    Raises :class:`MahlerDisagreement` if the two routes differ by more than
    ``rtol`` relatively.
    """
    paths = mahler_paths(f)
    if paths.rel_diff > rtol:
        raise MahlerDisagreement(paths.roots, paths.graeffe)
    return paths.roots


def log_mahler_measure(f: IntPolynomial, rtol: float = AGREEMENT_RTOL) -> float:
    return math.log(mahler_measure(f, rtol))


# --- cyclotomic products ----------------------------------------------------

def is_cyclotomic_product(f: IntPolynomial) -> bool:
    """True iff every root of the monic ``f`` is a root of unity.

    Exact: the squarefree part is repeatedly root-squared (re-taking the
    squarefree part each time).  A product of cyclotomic polynomials reaches
    a repeated polynomial within deg + 1 steps; a root off the unit circle
    makes the orbit escape, detected as soon as a coefficient exceeds the
    binomial bound C(d, j) that every cyclotomic product obeys.
    """
    if not f.is_monic():
        raise DomainError("is_cyclotomic_product expects a monic polynomial")
    if f.coeffs[0] == 0:
        raise DomainError("f(0) = 0: divide out the factor x first")
    if f.degree == 0:
        return True
    g = squarefree_part(f)
    seen = {g.coeffs}
    for _ in range(f.degree + 1):
        d = g.degree
        if any(abs(c) > math.comb(d, j) for j, c in enumerate(g.coeffs)):
            return False
        g = squarefree_part(IntPolynomial(graeffe_step(list(g.coeffs))))
        if g.coeffs in seen:
            return True
        seen.add(g.coeffs)
    return False


# --- Dobrowolski ------------------------------------------------------------

def dobrowolski_shape(d: float) -> float:
    """(log log d / log d)^3."""
    if not d >= 3:
        raise DomainError(f"Dobrowolski bound needs degree >= 3, got {d}")
    ld = math.log(d)
    return (math.log(ld) / ld) ** 3


def dobrowolski_rhs(d: float, c_tilde: float = 1.0) -> float:
    """c_tilde * (log log d / log d)^3 for d >= 3."""
    if c_tilde < 0:
        raise DomainError("c_tilde must be nonnegative")
    return c_tilde * dobrowolski_shape(d)


def dobrowolski_turning_point(max_degree: int = 1000) -> int:
    """Integer degree where (log log d / log d)^3 peaks; it decreases afterwards."""
    return max(range(3, max_degree + 1), key=dobrowolski_shape)


def enumerate_monic(max_degree: int, max_height: int, min_degree: int = 1,
                    nonzero_constant: bool = True) -> Iterator[IntPolynomial]:
    """Monic integer polynomials by increasing degree, then lexicographic
    order of (c_0, ..., c_{d-1}) with each c_i in [-max_height, max_height]."""
    rng = range(-max_height, max_height + 1)
    for d in range(min_degree, max_degree + 1):
        for low in itertools.product(rng, repeat=d):
            if nonzero_constant and low[0] == 0:
                continue
            yield IntPolynomial(list(low) + [1])


@dataclass
class ScanReport:
    max_degree: int
    max_height: int
    scanned: int = 0
    non_cyclotomic: int = 0
    min_ratio: float = math.inf
    witness: IntPolynomial | None = None
    witness_log_mahler: float = math.nan
    min_log_mahler: float = math.inf
    partial: bool = False

    def as_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "max_height": self.max_height,
            "scanned": self.scanned,
            "non_cyclotomic": self.non_cyclotomic,
            "min_ratio": self.min_ratio,
            "witness": None if self.witness is None else [str(c) for c in self.witness.coeffs],
            "witness_degree": None if self.witness is None else self.witness.degree,
            "witness_log_mahler": self.witness_log_mahler,
            "min_log_mahler": self.min_log_mahler,
            "partial": self.partial,
        }


def dobrowolski_scan(max_degree: int, max_height: int, max_polys: int | None = None) -> ScanReport:
    """Exhaustive search for the smallest log M(f) / (log log d / log d)^3.

    Covers monic f of degree 3..max_degree, height <= max_height, f(0) != 0,
    that are not cyclotomic products.  Ties keep the first polynomial in
    enumeration order.  If ``max_polys`` candidates are reached first the
    report is flagged partial.
    """
    if max_degree < 3:
        raise DomainError("max_degree must be >= 3")
    if max_height < 1:
        raise DomainError("max_height must be >= 1")
    report = ScanReport(max_degree, max_height)
    for f in enumerate_monic(max_degree, max_height, min_degree=3):
        if max_polys is not None and report.scanned >= max_polys:
            report.partial = True
            break
        report.scanned += 1
        if is_cyclotomic_product(f):
            continue
        report.non_cyclotomic += 1
        lm = log_mahler_measure(f)
        report.min_log_mahler = min(report.min_log_mahler, lm)
        ratio = lm / dobrowolski_shape(f.degree)
        if ratio < report.min_ratio:
            report.min_ratio = ratio
            report.witness = f
            report.witness_log_mahler = lm
    return report
