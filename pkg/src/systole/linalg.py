"""Exact and floating-point matrix kernels.

Exact matrices are numpy arrays of ``dtype=object`` holding Python ``int`` or
``fractions.Fraction`` entries, so products and traces never round.  Real
symmetric matrices are plain ``float64`` arrays.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import ConvergenceError
from .polynomials import IntPolynomial

DEFAULT_EIG_TOL = 1e-12


def as_exact(m) -> np.ndarray:
    """Return ``m`` as a square object array of ints/Fractions."""
    a = np.array(m, dtype=object)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        if isinstance(v, (bool, np.bool_)):
            raise TypeError("boolean matrix entries are not allowed")
        if isinstance(v, (int, np.integer)):
            out[idx] = int(v)
        elif isinstance(v, Fraction):
            out[idx] = v.numerator if v.denominator == 1 else v
        elif isinstance(v, str):
            f = Fraction(v)
            out[idx] = f.numerator if f.denominator == 1 else f
        else:
            raise TypeError(f"exact matrix entries must be int or Fraction, got {type(v).__name__}")
    return out


def is_integral(m: np.ndarray) -> bool:
    return all(isinstance(v, int) for v in m.flat)


def exact_identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def _normalize_entry(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def exact_det(m) -> int | Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    a = [[Fraction(v) for v in row] for row in as_exact(m)]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return _normalize_entry(det)


def exact_inverse(m) -> np.ndarray:
    """Inverse by Gauss-Jordan over the rationals."""
    a = [[Fraction(v) for v in row] for row in as_exact(m)]
    n = len(a)
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            out[i, j] = _normalize_entry(aug[i][n + j])
    return out


def _exact_trace(m: np.ndarray):
    return sum((m[i, i] for i in range(m.shape[0])), 0)


def char_poly_coeffs(m) -> list:
    """Ascending coefficients of det(xI - m) by the Faddeev-LeVerrier recursion.

    Works for integer and rational matrices.  For integer input every
    division by ``k`` is exact and the result is a list of ints.
    """
    a = as_exact(m)
    n = a.shape[0]
    integral = is_integral(a)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    eye = exact_identity(n)
    mk = np.zeros((n, n), dtype=object)
    for k in range(1, n + 1):
        mk = a @ mk + coeffs[n - k + 1] * eye
        tr = _exact_trace(a @ mk)
        if integral:
            q, r = divmod(-tr, k)
            assert r == 0, "non-exact division in Faddeev-LeVerrier"
            coeffs[n - k] = q
        else:
            coeffs[n - k] = _normalize_entry(Fraction(-tr) / k)
    return coeffs


def char_poly(m) -> IntPolynomial:
    """Exact monic characteristic polynomial of an integer matrix."""
    a = as_exact(m)
    if not is_integral(a):
        raise ValueError("char_poly expects an integer matrix")
    return IntPolynomial(char_poly_coeffs(a))


# --- adjoint representation on sl(n) ---------------------------------------

def sl_basis_size(n: int) -> int:
    return n * n - 1


def _sl_basis(n: int) -> list[np.ndarray]:
    """Basis of traceless n x n matrices.

    Order: elementary units E_ij (i != j) in row-major order, followed by
    H_i = E_ii - E_{i+1,i+1} for i = 0..n-2.  Entries are Python ints.
    """
    basis = []
    for i in range(n):
        for j in range(n):
            if i != j:
                e = np.zeros((n, n), dtype=object)
                e[i, j] = 1
                basis.append(e)
    for i in range(n - 1):
        h = np.zeros((n, n), dtype=object)
        h[i, i] = 1
        h[i + 1, i + 1] = -1
        basis.append(h)
    return basis


def _sl_coordinates(x: np.ndarray) -> list:
    n = x.shape[0]
    coords = [x[i, j] for i in range(n) for j in range(n) if i != j]
    running = 0
    for i in range(n - 1):
        running = running + x[i, i]
        coords.append(_normalize_entry(running))
    return coords


def adjoint_matrix(g, n: int | None = None) -> np.ndarray:
    """Matrix of X -> g X g^-1 on sl(n) in the basis of :func:`_sl_basis`.

    ``g`` must have exact determinant 1.  Returns an exact object array of
    size n^2 - 1; it is integral whenever ``g`` is.
    """
    a = as_exact(g)
    if n is not None and a.shape[0] != n:
        raise ValueError(f"dimension mismatch: matrix is {a.shape[0]}x{a.shape[0]}, n={n}")
    if exact_det(a) != 1:
        raise ValueError("adjoint_matrix requires det(g) = 1")
    ginv = exact_inverse(a)
    basis = _sl_basis(a.shape[0])
    size = len(basis)
    out = np.empty((size, size), dtype=object)
    for col, b in enumerate(basis):
        for row, c in enumerate(_sl_coordinates(a @ b @ ginv)):
            out[row, col] = _normalize_entry(c)
    return out


# --- symmetric eigenproblems -----------------------------------------------

def _jacobi_batch(a: np.ndarray, tol: float, vectors: bool):
    """Cyclic Jacobi on a stack of symmetric matrices of shape (B, n, n).

    Converges when the off-diagonal Frobenius norm of every matrix is below
    ``tol * max(1, ||A||_F)``.  Capped at 100 n^2 sweeps.
    """
    a = np.array(a, dtype=float, copy=True)
    batch, n, _ = a.shape
    v = np.broadcast_to(np.eye(n), a.shape).copy() if vectors else None
    if n == 1:
        return a[:, 0, :].copy(), v
    scale = np.maximum(1.0, np.sqrt(np.einsum("bij,bij->b", a, a)))
    off_mask = ~np.eye(n, dtype=bool)
    max_sweeps = 100 * n * n
    off = np.sqrt(np.sum(a[:, off_mask] ** 2, axis=1))
    for _ in range(max_sweeps):
        if np.all(off < tol * scale):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p, q]
                active = apq != 0.0
                if not active.any():
                    continue
                safe = np.where(active, apq, 1.0)
                with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
                    theta = (a[:, q, q] - a[:, p, p]) / (2.0 * safe)
                    t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
                t = np.where(theta == 0.0, 1.0, t)
                t = np.where(active & np.isfinite(theta), t, 0.0)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                c3 = c[:, None]
                s3 = s[:, None]
                colp = a[:, :, p].copy()
                colq = a[:, :, q]
                a[:, :, p] = c3 * colp - s3 * colq
                a[:, :, q] = s3 * colp + c3 * colq
                rowp = a[:, p, :].copy()
                rowq = a[:, q, :]
                a[:, p, :] = c3 * rowp - s3 * rowq
                a[:, q, :] = s3 * rowp + c3 * rowq
                a[:, p, q] = 0.0
                a[:, q, p] = 0.0
                if vectors:
                    vp = v[:, :, p].copy()
                    vq = v[:, :, q]
                    v[:, :, p] = c3 * vp - s3 * vq
                    v[:, :, q] = s3 * vp + c3 * vq
        off = np.sqrt(np.sum(a[:, off_mask] ** 2, axis=1))
    else:
        if not np.all(off < tol * scale):
            worst = float(np.max(off / scale))
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps (relative off-diagonal {worst:.3e})",
                residual=worst,
            )
    return np.diagonal(a, axis1=1, axis2=2).copy(), v


def _as_symmetric(m) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2] or a.shape[-1] == 0:
        raise ValueError(f"expected square matrices, got shape {a.shape}")
    if not np.array_equal(a, np.swapaxes(a, -1, -2)):
        raise ValueError("matrix is not symmetric")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def sym_eigenvalues(m, tol: float = DEFAULT_EIG_TOL) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix in descending order.

    Accepts a single (n, n) matrix or a stack (..., n, n); the result has the
    matching leading shape.  Symmetry is checked exactly.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = _as_symmetric(m)
    lead, n = a.shape[:-2], a.shape[-1]
    w, _ = _jacobi_batch(a.reshape(-1, n, n), tol, vectors=False)
    w = -np.sort(-w, axis=1)
    return w.reshape(*lead, n)


def sym_eigh(m, tol: float = DEFAULT_EIG_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and orthonormal eigenvectors as columns."""
    a = _as_symmetric(m)
    lead, n = a.shape[:-2], a.shape[-1]
    w, v = _jacobi_batch(a.reshape(-1, n, n), tol, vectors=True)
    order = np.argsort(-w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    v = np.take_along_axis(v, order[:, None, :], axis=2)
    return w.reshape(*lead, n), v.reshape(*lead, n, n)


def cholesky_logdet(m: np.ndarray) -> float:
    """log det of a symmetric positive definite matrix; ValueError if not SPD."""
    try:
        chol = np.linalg.cholesky(np.asarray(m, dtype=float))
    except np.linalg.LinAlgError as exc:
        raise ValueError("matrix is not positive definite") from exc
    return 2.0 * float(np.sum(np.log(np.diagonal(chol))))


def symmetrize(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + np.swapaxes(m, -1, -2))


def spd_power(m, power: float, tol: float = DEFAULT_EIG_TOL) -> np.ndarray:
    """``m ** power`` for symmetric positive definite ``m`` (or a stack)."""
    w, v = sym_eigh(m, tol)
    if np.any(w <= tol):
        raise ValueError(f"matrix is not positive definite (min eigenvalue {float(np.min(w)):.3e})")
    out = (v * w[..., None, :] ** power) @ np.swapaxes(v, -1, -2)
    return symmetrize(out)


def spd_sqrt(x, tol: float = DEFAULT_EIG_TOL) -> np.ndarray:
    """Symmetric positive definite square root."""
    return spd_power(x, 0.5, tol)
