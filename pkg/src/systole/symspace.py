"""Geometry of P(n, R), the unimodular symmetric positive definite matrices.

The distance from the identity is sqrt(sum log^2 a_i) over the eigenvalues
a_i, and d(x, y) reduces to it through x^(-1/2) y x^(-1/2).  SL(n, R) acts by
the isometries x -> g x g^T.  An element's translation distance is bounded
below by 2 log M(g) / n, with M the Mahler measure of its characteristic
polynomial.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .errors import DomainError
from .polynomials import (IntPolynomial, complex_roots, is_cyclotomic_product,
                          log_mahler_measure)

DET_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class SpdPoint:
    """A point of P(n, R): symmetric, positive definite, determinant 1."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"SpdPoint needs a square matrix, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise ValueError("SpdPoint entries must be exactly symmetric")
        if not np.all(np.isfinite(a)):
            raise ValueError("SpdPoint entries must be finite")
        try:
            det = math.exp(linalg.cholesky_logdet(a))
        except ValueError:
            raise ValueError("SpdPoint must be positive definite") from None
        if abs(det - 1.0) >= DET_TOL:
            raise ValueError(f"SpdPoint must have determinant 1, got {det!r}")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def tolist(self) -> list[list[float]]:
        return self.entries.tolist()


@dataclass(frozen=True)
class GroupElement:
    """An exact element of SL(n, Q); entries are ints or Fractions."""

    entries: tuple

    def __init__(self, entries):
        a = linalg.as_exact(entries)
        if linalg.exact_det(a) != 1:
            raise ValueError("GroupElement must have determinant exactly 1")
        object.__setattr__(self, "entries", tuple(tuple(row) for row in a.tolist()))

    @property
    def n(self) -> int:
        return len(self.entries)

    def exact(self) -> np.ndarray:
        return linalg.as_exact(self.entries)

    def as_float(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.entries])

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for row in self.entries for v in row)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.exact() @ other.exact())

    def tolist(self) -> list[list[str]]:
        return [[str(v) for v in row] for row in self.entries]


def normalize(x) -> SpdPoint:
    """Scale an SPD matrix by det^(-1/n) so that it lies in P(n, R)."""
    a = linalg.symmetrize(np.asarray(x, dtype=float))
    log_det = linalg.cholesky_logdet(a)
    n = a.shape[0]
    return SpdPoint(linalg.symmetrize(a * math.exp(-log_det / n)))


def _entries(x) -> np.ndarray:
    return x.entries if isinstance(x, SpdPoint) else np.asarray(x, dtype=float)


def distance_to_identity(x) -> float:
    w = linalg.sym_eigenvalues(linalg.symmetrize(_entries(x)))
    return float(np.sqrt(np.sum(np.log(w) ** 2)))


def _distance_batch(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Distances between stacks of SPD matrices of shape (B, n, n)."""
    r_inv = linalg.spd_power(xs, -0.5)
    z = linalg.symmetrize(r_inv @ ys @ r_inv)
    w = linalg.sym_eigenvalues(z)
    if np.any(w <= 0):
        raise ArithmeticError("lost positive definiteness while computing a distance")
    return np.sqrt(np.sum(np.log(w) ** 2, axis=-1))


def distance(x, y) -> float:
    a, b = _entries(x), _entries(y)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(_distance_batch(a[None], b[None])[0])


def _action_matrix(g) -> np.ndarray:
    if isinstance(g, GroupElement):
        return g.as_float()
    return np.asarray(g, dtype=float)


def apply_isometry(g, x) -> SpdPoint:
    """g x g^T."""
    a = _action_matrix(g)
    return SpdPoint(linalg.symmetrize(a @ _entries(x) @ a.T))


def displacement(g, x) -> float:
    """d(x, g x g^T)."""
    return float(displacements(g, [x])[0])


def displacements(g, xs: Sequence) -> np.ndarray:
    """d(x, g x g^T) for every x in ``xs`` (one batched computation)."""
    a = _action_matrix(g)
    stack = np.stack([_entries(x) for x in xs])
    moved = linalg.symmetrize(a @ stack @ a.T)
    return _distance_batch(stack, moved)


def action_char_poly(g: GroupElement, use_adjoint: bool) -> IntPolynomial:
    """Characteristic polynomial of g, or of Ad(g) on sl(n).

    Rational coefficients are cleared and checked: the polynomial must be
    integral, otherwise the Mahler machinery does not apply.
    """
    m = linalg.adjoint_matrix(g.exact()) if use_adjoint else g.exact()
    coeffs = linalg.char_poly_coeffs(m)
    bad = [c for c in coeffs if isinstance(c, Fraction)]
    if bad:
        raise DomainError(f"characteristic polynomial is not integral (coefficient {bad[0]})")
    return IntPolynomial(coeffs)


def action_size(g: GroupElement, use_adjoint: bool) -> int:
    return linalg.sl_basis_size(g.n) if use_adjoint else g.n


def action_matrix(g: GroupElement, use_adjoint: bool) -> np.ndarray:
    """Float matrix through which g acts: g itself or Ad(g)."""
    if use_adjoint:
        return np.array(linalg.adjoint_matrix(g.exact()).tolist(), dtype=float)
    return g.as_float()


def translation_lower_bound(g: GroupElement, use_adjoint: bool = False) -> float:
    """2 log M / m, with M the Mahler measure of the acting matrix of size m."""
    f = action_char_poly(g, use_adjoint)
    if is_cyclotomic_product(f):
        return 0.0
    return 2.0 * log_mahler_measure(f) / action_size(g, use_adjoint)


def systole_lower_bound(elements: Sequence[GroupElement], use_adjoint: bool = False) -> float:
    """min over elements with M > 1 of the translation bound; inf if there are none."""
    if not elements:
        raise ValueError("systole_lower_bound needs at least one element")
    best = math.inf
    for g in elements:
        if is_cyclotomic_product(action_char_poly(g, use_adjoint)):
            continue
        best = min(best, translation_lower_bound(g, use_adjoint))
    return best


def spectral_radius(g: GroupElement) -> float:
    return max(abs(z) for z in complex_roots(action_char_poly(g, False)))


def random_rotation(n: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def sample_spd(n: int, seed: int, spread: float = 1.0) -> SpdPoint:
    """Q diag(e^t) Q^T with sum(t) = 0 and Q a random rotation, for a fixed seed."""
    if n < 2:
        raise ValueError("sample_spd needs n >= 2")
    rng = np.random.default_rng(seed)
    q = random_rotation(n, rng)
    t = rng.standard_normal(n) * spread
    t -= t.mean()
    x = linalg.symmetrize((q * np.exp(t)) @ q.T)
    return normalize(x)


def elementary_generators(n: int) -> list[np.ndarray]:
    """The transvections I + E_ij and I - E_ij, i != j, which generate SL(n, Z)."""
    gens = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for sign in (1, -1):
                e = linalg.exact_identity(n)
                e[i, j] = sign
                gens.append(e)
    return gens


def random_word_element(n: int, word_length: int, rng: np.random.Generator) -> GroupElement:
    gens = elementary_generators(n)
    g = linalg.exact_identity(n)
    for k in rng.integers(0, len(gens), size=word_length):
        g = g @ gens[int(k)]
    return GroupElement(g)


def sample_hyperbolic_elements(n: int, count: int, seed: int, word_length: int = 6,
                               use_adjoint: bool = False) -> list[GroupElement]:
    """``count`` word-random elements of SL(n, Z) whose acting matrix has M > 1."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        g = random_word_element(n, word_length, rng)
        if not is_cyclotomic_product(action_char_poly(g, use_adjoint)):
            out.append(g)
    return out
