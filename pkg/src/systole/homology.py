"""Integral simplicial homology through the Smith normal form."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .nerve import SimplicialComplex

# e^(e^e): the inner logarithms log log v and log log log v are >= e and >= 1 above it
E_E_E = math.exp(math.exp(math.e))


def boundary_matrix(c: SimplicialComplex, k: int) -> list[list[int]]:
    """Matrix of the boundary map from k-chains to (k-1)-chains.

    Rows index sorted (k-1)-simplices, columns sorted k-simplices; the face
    obtained by deleting vertex i of a simplex gets sign (-1)^i.
    """
    if k < 1 or k > c.dimension:
        raise ValueError(f"boundary_matrix needs 1 <= k <= {c.dimension}, got {k}")
    rows = c.simplices_of_dim(k - 1)
    cols = c.simplices_of_dim(k)
    index = {s: i for i, s in enumerate(rows)}
    out = [[0] * len(cols) for _ in rows]
    for j, s in enumerate(cols):
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            out[index[face]][j] = -1 if i % 2 else 1
    return out


def mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    if not a or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


@dataclass
class SmithForm:
    """U @ original @ V = diag(diagonal) padded with zeros, U and V unimodular."""

    original: list[list[int]]
    diagonal: list[int]
    U: list[list[int]] | None
    V: list[list[int]] | None

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(m: list[list[int]], transforms: bool = True) -> SmithForm:
    """Smith normal form with exact integers.

    Pivot: the nonzero entry of least absolute value in the remaining block,
    ties broken by lowest row then lowest column.  The diagonal satisfies
    d_1 | d_2 | ... and all entries are nonnegative.
    """
    a = [list(map(int, row)) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(r) != cols for r in a):
        raise ValueError("ragged matrix")
    U = identity(rows) if transforms else None
    V = identity(cols) if transforms else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        ra, rs = a[dst], a[src]
        for c in range(cols):
            if rs[c]:
                ra[c] -= q * rs[c]
        if U is not None:
            ua, us = U[dst], U[src]
            for c in range(rows):
                if us[c]:
                    ua[c] -= q * us[c]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in a:
            if row[src]:
                row[dst] -= q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] -= q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        if U is not None:
            U[i] = [-x for x in U[i]]

    diag = []
    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, a[i][t] // p)
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, a[t][j] // p)
                    if a[t][j]:
                        done = False
            if done:
                # divisibility: every remaining entry must be a multiple of the pivot
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                add_row(t, bad[0], -1)
                continue
            # a remainder smaller than the pivot appeared: move the smallest to (t, t)
            best = None
            for i in range(t, rows):
                v = a[i][t]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, t)
            for j in range(t, cols):
                v = a[t][j]
                if v and abs(v) < best[0]:
                    best = (abs(v), t, j)
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
        if a[t][t] < 0:
            negate_row(t)
        diag.append(a[t][t])
        t += 1
    diag.extend([0] * (min(rows, cols) - len(diag)))
    return SmithForm([list(map(int, row)) for row in m], diag, U, V)


@dataclass
class HomologyGroup:
    degree: int
    betti: int
    torsion: list[int]

    @property
    def log_torsion(self) -> float:
        """log |tors H_k| = sum of log of the torsion coefficients."""
        return sum((math.log(t) for t in self.torsion), 0.0)

    def as_dict(self) -> dict:
        return {"degree": self.degree, "betti": self.betti, "torsion": self.torsion,
                "log_torsion": self.log_torsion}


def homology_groups(c: SimplicialComplex) -> list[HomologyGroup]:
    """H_k(c; Z) for k = 0..dim c as (betti, torsion coefficients > 1)."""
    top = c.dimension
    if top < 0:
        return []
    counts = c.counts()
    snf = {}
    for k in range(1, top + 1):
        snf[k] = smith_normal_form(boundary_matrix(c, k), transforms=False)
    out = []
    for k in range(top + 1):
        rank_k = snf[k].rank if k >= 1 else 0
        rank_next = snf[k + 1].rank if k + 1 <= top else 0
        torsion = [d for d in snf[k + 1].diagonal if d > 1] if k + 1 <= top else []
        out.append(HomologyGroup(k, counts[k] - rank_k - rank_next, torsion))
    return out


def torsion_bound_rhs(vol: float, d: int, C: float = 1.0) -> float:
    """C (log log v / log log log v)^(3d) v, defined for v > e^(e^e) (strict)."""
    if not vol > E_E_E:
        raise DomainError(f"torsion bound needs vol > e^(e^e) ~ {E_E_E:.6g}, got {vol!r}")
    if d < 1:
        raise DomainError("dimension must be positive")
    if not C > 0:
        raise DomainError("C must be positive")
    ll = math.log(math.log(vol))
    return C * (ll / math.log(ll)) ** (3 * d) * vol


def subdivide(c: SimplicialComplex) -> SimplicialComplex:
    """Barycentric subdivision; new vertices are the simplices of ``c`` in sorted order."""
    order = c.sorted_simplices()
    index = {s: i for i, s in enumerate(order)}
    chains = []

    def extend(chain):
        last = chain[-1]
        grew = False
        for s in order:
            if len(s) > len(last) and set(last) < set(s) and len(s) == len(last) + 1:
                extend(chain + [s])
                grew = True
        if not grew:
            chains.append(chain)

    for s in order:
        if len(s) == 1:
            extend([s])
    facets = [[index[s] for s in ch] for ch in chains]
    return SimplicialComplex.from_maximal(facets, vertex_count=len(order))


def projective_plane() -> SimplicialComplex:
    """The minimal 6-vertex, 10-triangle triangulation of the real projective plane."""
    facets = [(0, 1, 3), (0, 1, 5), (0, 2, 4), (0, 2, 5), (0, 3, 4),
              (1, 2, 3), (1, 2, 4), (1, 4, 5), (2, 3, 5), (3, 4, 5)]
    return SimplicialComplex.from_maximal(facets)


def sphere_boundary(n: int) -> SimplicialComplex:
    """Boundary of the n-simplex, a triangulated (n-1)-sphere."""
    verts = range(n + 1)
    return SimplicialComplex.from_maximal(
        [tuple(v for v in verts if v != skip) for skip in verts])
