"""Separated nets, witness nerves and (d, v)-complex certificates on finite metric clouds."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import symspace

METRICS = ("euclidean", "circle", "flat-torus", "spd")
DEFAULT_MAX_DIM = 3


@dataclass(eq=False)
class MetricCloud:
    """Finite point set with a named metric.

    * ``euclidean``: points are coordinate tuples in R^k;
    * ``circle``: points are 1-tuples (angle,) and the distance is arc length;
    * ``flat-torus``: points lie in [0, 1)^k with the quotient metric of R^k / Z^k;
    * ``spd``: points are square matrices in P(n, R) with the symmetric-space distance.
    """

    points: list
    metric: str = "euclidean"
    _dist: np.ndarray | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if self.metric not in METRICS:
            raise ValueError(f"unknown metric {self.metric!r}; expected one of {METRICS}")
        if self.metric == "spd":
            self.points = [p if isinstance(p, symspace.SpdPoint) else symspace.SpdPoint(p)
                           for p in self.points]
        else:
            pts = [tuple(float(c) for c in p) for p in self.points]
            if pts and len({len(p) for p in pts}) != 1:
                raise ValueError("all points must have the same dimension")
            if self.metric == "circle" and pts and len(pts[0]) != 1:
                raise ValueError("circle points are 1-tuples (angle,)")
            if self.metric == "flat-torus" and any(not 0.0 <= c < 1.0 for p in pts for c in p):
                raise ValueError("flat-torus coordinates must lie in [0, 1)")
            self.points = pts

    def __len__(self) -> int:
        return len(self.points)

    def distance(self, i: int, j: int) -> float:
        return float(self.distance_matrix()[i, j])

    def distance_matrix(self) -> np.ndarray:
        if self._dist is None:
            self._dist = self._compute_distances()
        return self._dist

    def _compute_distances(self) -> np.ndarray:
        n = len(self.points)
        if self.metric == "spd":
            out = np.zeros((n, n))
            for i in range(n):
                for j in range(i + 1, n):
                    out[i, j] = out[j, i] = symspace.distance(self.points[i], self.points[j])
            return out
        x = np.array(self.points, dtype=float).reshape(n, -1)
        diff = np.abs(x[:, None, :] - x[None, :, :])
        if self.metric == "circle":
            diff = np.mod(diff, 2.0 * math.pi)
            diff = np.minimum(diff, 2.0 * math.pi - diff)
        elif self.metric == "flat-torus":
            diff = np.minimum(diff, 1.0 - diff)
        out = np.sqrt(np.sum(diff * diff, axis=-1))
        np.fill_diagonal(out, 0.0)
        return np.minimum(out, out.T)


@dataclass(frozen=True)
class SimplicialComplex:
    """Finite simplicial complex on vertices 0..vertex_count-1, closed under faces."""

    vertex_count: int
    simplices: frozenset

    def __post_init__(self):
        simplices = frozenset(tuple(s) for s in self.simplices)
        for s in simplices:
            if not s or any(b <= a for a, b in zip(s, s[1:])):
                raise ValueError(f"simplex {s} is not a strictly increasing vertex tuple")
            if s[0] < 0 or s[-1] >= self.vertex_count:
                raise ValueError(f"simplex {s} uses a vertex outside 0..{self.vertex_count - 1}")
        object.__setattr__(self, "simplices", simplices)
        if not is_downward_closed(self):
            raise ValueError("simplex set is not closed under taking faces")

    @classmethod
    def from_maximal(cls, facets: Iterable[Sequence[int]], vertex_count: int | None = None):
        """Complex generated by ``facets`` (all faces are added)."""
        out = set()
        for f in facets:
            f = tuple(sorted(set(int(v) for v in f)))
            for k in range(1, len(f) + 1):
                out.update(itertools.combinations(f, k))
        if vertex_count is None:
            vertex_count = 1 + max((s[-1] for s in out), default=-1)
        return cls(vertex_count, frozenset(out))

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def simplices_of_dim(self, k: int) -> list[tuple[int, ...]]:
        return sorted(s for s in self.simplices if len(s) == k + 1)

    def counts(self) -> list[int]:
        return [len(self.simplices_of_dim(k)) for k in range(self.dimension + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.counts()))

    def sorted_simplices(self) -> list[tuple[int, ...]]:
        return sorted(self.simplices, key=lambda s: (len(s), s))


def is_downward_closed(c: SimplicialComplex) -> bool:
    for s in c.simplices:
        if len(s) > 1:
            for face in itertools.combinations(s, len(s) - 1):
                if face not in c.simplices:
                    return False
    return True


def greedy_net(cloud: MetricCloud, eps: float) -> list[int]:
    """Indices chosen in input order, keeping a point iff it is >= eps from all kept ones."""
    if len(cloud) == 0:
        raise ValueError("greedy_net needs a non-empty cloud")
    if not eps > 0:
        raise ValueError("eps must be positive")
    dist = cloud.distance_matrix()
    chosen: list[int] = []
    for i in range(len(cloud)):
        if all(dist[i, j] >= eps for j in chosen):
            chosen.append(i)
    return chosen


def build_nerve(cloud: MetricCloud, net: Sequence[int], eps: float,
                max_dim: int = DEFAULT_MAX_DIM) -> SimplicialComplex:
    """Witness nerve of the closed eps-balls around the net points.

    Centers c_0..c_k span a simplex (k <= max_dim) iff some cloud point lies
    within eps of every c_i.  Vertex i of the result is ``net[i]``.
    """
    if max_dim < 1:
        raise ValueError("max_dim must be >= 1")
    net = list(net)
    if len(set(net)) != len(net) or any(not 0 <= c < len(cloud) for c in net):
        raise ValueError("net must be distinct indices into the cloud")
    dist = cloud.distance_matrix()
    cover = dist[:, net] <= eps
    simplices = set()
    for row in cover:
        members = tuple(int(i) for i in np.flatnonzero(row))
        for k in range(1, min(len(members), max_dim + 1) + 1):
            simplices.update(itertools.combinations(members, k))
    for i in range(len(net)):
        simplices.add((i,))
    return SimplicialComplex(len(net), frozenset(simplices))


def vertex_degrees(c: SimplicialComplex) -> list[int]:
    deg = [0] * c.vertex_count
    for s in c.simplices:
        if len(s) == 2:
            deg[s[0]] += 1
            deg[s[1]] += 1
    return deg


def max_degree(c: SimplicialComplex) -> int:
    return max(vertex_degrees(c), default=0)


@dataclass
class DVCertificate:
    d_cap: int
    v_cap: int
    vertex_count: int
    max_degree: int
    vertices_ok: bool
    degree_ok: bool
    simplex_counts: list[int]
    simplex_caps: list[float]
    simplex_ok: list[bool]

    @property
    def passed(self) -> bool:
        return self.vertices_ok and self.degree_ok and all(self.simplex_ok)

    def as_dict(self) -> dict:
        return {
            "d_cap": self.d_cap,
            "v_cap": self.v_cap,
            "vertex_count": self.vertex_count,
            "max_degree": self.max_degree,
            "vertices_ok": self.vertices_ok,
            "degree_ok": self.degree_ok,
            "simplex_counts": self.simplex_counts,
            "simplex_caps": self.simplex_caps,
            "simplex_ok": self.simplex_ok,
            "passed": self.passed,
        }


def dv_certificate(c: SimplicialComplex, d_cap: int, v_cap: int) -> DVCertificate:
    """Check at most v_cap vertices, degree at most d_cap, and k-simplex counts
    at most v_cap * C(d_cap, k) / (k + 1)."""
    counts = c.counts()
    caps = [v_cap * math.comb(d_cap, k) / (k + 1) for k in range(len(counts))]
    deg = max_degree(c)
    return DVCertificate(
        d_cap=d_cap,
        v_cap=v_cap,
        vertex_count=c.vertex_count,
        max_degree=deg,
        vertices_ok=c.vertex_count <= v_cap,
        degree_ok=deg <= d_cap,
        simplex_counts=counts,
        simplex_caps=caps,
        simplex_ok=[n <= cap for n, cap in zip(counts, caps)],
    )


def hexagon_cloud() -> MetricCloud:
    """Six points at 60 degree spacing on the unit circle, as planar coordinates.

    Coordinates are mirror-symmetric so that no adjacent chord rounds above
    1.0 in floating point (cos/sin coordinates overshoot by a few ulps).
    """
    h = math.sqrt(3.0) / 2.0
    pts = [(1.0, 0.0), (0.5, h), (-0.5, h), (-1.0, 0.0), (-0.5, -h), (0.5, -h)]
    return MetricCloud(pts, "euclidean")


def random_cloud(metric: str, n: int, seed: int, dim: int = 2) -> MetricCloud:
    rng = np.random.default_rng(seed)
    if metric == "euclidean":
        pts = rng.uniform(0.0, 1.0, size=(n, dim))
    elif metric == "circle":
        pts = rng.uniform(0.0, 2.0 * math.pi, size=(n, 1))
    elif metric == "flat-torus":
        pts = rng.uniform(0.0, 1.0, size=(n, dim))
    elif metric == "spd":
        return MetricCloud([symspace.sample_spd(dim, int(s)) for s in rng.integers(0, 2**31, n)], "spd")
    else:
        raise ValueError(f"unknown metric {metric!r}")
    return MetricCloud([tuple(p) for p in pts], metric)
