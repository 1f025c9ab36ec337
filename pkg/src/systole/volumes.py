"""Ball volumes in Euclidean and hyperbolic space and the vertex-degree constant.

For curvature in [-1, 0] a ball of radius r has volume between the Euclidean
one and the hyperbolic one, so a maximal separated net at scale s has vertex
degree at most vol_H(1.25 s) / vol_E(0.25 s).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import ConvergenceError

QUAD_TOL = 1e-10
_MAX_DEPTH = 60


@dataclass(frozen=True)
class VolumeQuery:
    d: int
    r: float

    def __post_init__(self):
        if isinstance(self.d, bool) or int(self.d) != self.d or self.d < 2:
            raise ValueError(f"dimension must be an integer >= 2, got {self.d!r}")
        if not (math.isfinite(self.r) and self.r > 0):
            raise ValueError(f"radius must be finite and positive, got {self.r!r}")


def _gamma_half(k: int) -> float:
    """Gamma(k / 2) for a positive integer k, by the recursion Gamma(x+1) = x Gamma(x)."""
    if k < 1:
        raise ValueError("Gamma(k/2) needs k >= 1")
    if k % 2 == 0:
        return float(math.factorial(k // 2 - 1))
    val = math.sqrt(math.pi)
    x = 0.5
    while 2 * x < k:
        val *= x
        x += 1.0
    return val


def sphere_area(d: int) -> float:
    """(d-1)-dimensional volume of the unit sphere in R^d: 2 pi^(d/2) / Gamma(d/2)."""
    return 2.0 * math.pi ** (d / 2) / _gamma_half(d)


def euclidean_ball_volume(d: int, r: float) -> float:
    q = VolumeQuery(d, r)
    return math.pi ** (q.d / 2) * q.r ** q.d / _gamma_half(q.d + 2)


def adaptive_simpson(f, a: float, b: float, tol: float) -> tuple[float, float]:
    """Integrate f on [a, b]; returns (value, estimated absolute error)."""
    def simpson(fa, fm, fb, h):
        return h / 6.0 * (fa + 4.0 * fm + fb)

    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = simpson(fa, fm, fb, b - a)
    # explicit stack instead of recursion; entries are subintervals still to refine
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    total = 0.0
    err_total = 0.0
    while stack:
        lo, hi, flo, fmid, fhi, est, eps, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        left = simpson(flo, flm, fmid, mid - lo)
        right = simpson(fmid, frm, fhi, hi - mid)
        delta = left + right - est
        # second clause: the difference is already at rounding level
        if abs(delta) <= 15.0 * eps or abs(delta) <= 1e-15 * abs(left + right):
            total += left + right + delta / 15.0
            err_total += abs(delta) / 15.0
        elif depth >= _MAX_DEPTH:
            raise ConvergenceError(
                f"adaptive Simpson hit depth {_MAX_DEPTH} on [{lo}, {hi}]", residual=abs(delta))
        else:
            stack.append((lo, mid, flo, flm, fmid, left, eps / 2.0, depth + 1))
            stack.append((mid, hi, fmid, frm, fhi, right, eps / 2.0, depth + 1))
    return total, err_total


def hyperbolic_ball_volume(d: int, r: float, tol: float = QUAD_TOL) -> float:
    """vol(S^(d-1)) * integral_0^r sinh^(d-1)(t) dt, to absolute tolerance ``tol``."""
    q = VolumeQuery(d, r)
    area = sphere_area(q.d)
    p = q.d - 1
    value, _ = adaptive_simpson(lambda t: math.sinh(t) ** p, 0.0, q.r, tol / area)
    return area * value


def hyperbolic_ball_volume_closed(d: int, r: float) -> float:
    """Closed forms for d = 2 and d = 3."""
    if d == 2:
        return 2.0 * math.pi * (math.cosh(r) - 1.0)
    if d == 3:
        return math.pi * (math.sinh(2.0 * r) - 2.0 * r)
    raise ValueError("closed form only available for d = 2, 3")


def lemma_constant(d: int) -> float:
    """vol_H(B(1.25)) / vol_E(B(0.25)) in dimension d."""
    return hyperbolic_ball_volume(d, 1.25) / euclidean_ball_volume(d, 0.25)


@dataclass
class ComparisonReport:
    d: int
    radii: list[float]
    euclidean: list[float]
    hyperbolic: list[float]
    ok: bool

    @property
    def ratios(self) -> list[float]:
        return [h / e for e, h in zip(self.euclidean, self.hyperbolic)]


def verify_comparison(d: int, radii: Iterable[float], slack: float = 1e-12) -> ComparisonReport:
    """Check vol_E(B(r)) <= vol_H(B(r)) at every radius (the checkable half of the sandwich).

    ``slack`` is relative.  Quadrature tolerance scales with the Euclidean
    volume so tiny radii stay meaningful.
    """
    radii = [float(r) for r in radii]
    if any(not r > 0 for r in radii):
        raise ValueError("radii must be positive")
    eu = [euclidean_ball_volume(d, r) for r in radii]
    hy = [hyperbolic_ball_volume(d, r, tol=min(QUAD_TOL, 1e-6 * e)) for r, e in zip(radii, eu)]
    ok = all(e <= h * (1.0 + slack) for e, h in zip(eu, hy))
    return ComparisonReport(d, radii, eu, hy, ok)
