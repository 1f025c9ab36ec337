"""Closed-form lower and upper bounds relating systole, volume and degree of definition.

Every unspecified constant is an explicit field of :class:`BoundParams` and
defaults to 1.  Iterated logarithms are only evaluated where they are at
least 1, i.e. for arguments at or above e^(e^e).
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Iterable

from . import volumes
from .errors import DomainError
from .homology import E_E_E
from .polynomials import dobrowolski_shape

# relative slack for the v >= e^(e^e) test: exp(exp(e)) rounds, so log log of it
# can land one ulp below e
_THRESHOLD_RTOL = 1e-12


@dataclass(frozen=True)
class BoundParams:
    C: float = 1.0
    C1: float = 1.0
    c_prime: float = 1.0
    c_tilde: float = 1.0
    c3: float = 1.0
    alpha: float = 1.0
    d: int = 2

    def __post_init__(self):
        for f in ("C", "C1", "c_prime", "c_tilde", "c3", "alpha"):
            v = getattr(self, f)
            if isinstance(v, bool) or not (math.isfinite(float(v)) and v > 0):
                raise DomainError(f"{f} must be a finite positive number, got {v!r}")
            object.__setattr__(self, f, float(v))
        if isinstance(self.d, bool) or int(self.d) != self.d or self.d < 2:
            raise DomainError(f"d must be an integer >= 2, got {self.d!r}")
        object.__setattr__(self, "d", int(self.d))

    @classmethod
    def from_mapping(cls, data: dict) -> "BoundParams":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise DomainError(f"unknown parameter(s): {', '.join(sorted(unknown))}")
        return cls(**data)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def _loglog_from_log(log_v: float, what: str) -> tuple[float, float]:
    """(log log v, log log log v) given log v, requiring log v >= e^e."""
    if not (math.isfinite(log_v) and log_v >= math.exp(math.e) * (1.0 - _THRESHOLD_RTOL)):
        raise DomainError(f"{what} needs an argument >= e^(e^e) ~ {E_E_E:.6g}")
    ll = max(math.log(log_v), math.e)
    return ll, math.log(ll)


def _log_positive(v: float, what: str) -> float:
    if not v > 0:
        raise DomainError(f"{what} needs a positive argument, got {v!r}")
    return math.log(v)


def phi(v: float, d: int) -> float:
    """(log log v / log log log v)^(3d), for v >= e^(e^e)."""
    return phi_from_log(_log_positive(v, "phi"), d)


def phi_from_log(log_v: float, d: int) -> float:
    """phi evaluated from log v, for volumes too large to hold in a float."""
    if isinstance(d, bool) or int(d) != d or d < 1:
        raise DomainError(f"d must be a positive integer, got {d!r}")
    ll, lll = _loglog_from_log(log_v, "phi")
    return (ll / lll) ** (3 * int(d))


def systole_volume_lb(vol: float, p: BoundParams = BoundParams()) -> float:
    """C1 (log log log vol^C / log log vol^C)^3, for vol^C >= e^(e^e)."""
    return systole_volume_lb_from_log(_log_positive(vol, "systole_volume_lb"), p)


def systole_volume_lb_from_log(log_vol: float, p: BoundParams = BoundParams()) -> float:
    ll, lll = _loglog_from_log(p.C * log_vol, "systole_volume_lb")
    return p.C1 * (lll / ll) ** 3


def systole_degree_lb(s: float, p: BoundParams = BoundParams(),
                      c_prime: float | None = None) -> float:
    """c' (log log s / log s)^3 for a degree of definition s >= 3.

    ``c_prime`` overrides ``p.c_prime`` and may be 0.
    """
    c = p.c_prime if c_prime is None else float(c_prime)
    if c < 0:
        raise DomainError("c_prime must be nonnegative")
    return c * dobrowolski_shape(s)


def degree_ub(covol: float, p: BoundParams = BoundParams()) -> float:
    """c3 log covol, for covol > 1."""
    if not covol > 1:
        raise DomainError(f"degree_ub needs covol > 1, got {covol!r}")
    return p.c3 * math.log(covol)


@dataclass(frozen=True)
class ComplexityCertificate:
    vol: float
    systole: float
    d: int
    s: float
    max_vertices: int
    max_degree: int

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def complexity_certificate(vol: float, systole: float, d: int) -> ComplexityCertificate:
    """Vertex and degree caps for the nerve of a maximal s/2-discrete net, s = min(systole, 1).

    Disjoint s/4-balls give vol / vol_E(s/4) vertices at most; the degree is at
    most vol_H(1.25 s) / vol_E(0.25 s).
    """
    if not (math.isfinite(vol) and vol > 0):
        raise DomainError(f"vol must be finite and positive, got {vol!r}")
    if not (math.isfinite(systole) and systole > 0):
        raise DomainError(f"systole must be finite and positive, got {systole!r}")
    s = min(float(systole), 1.0)
    small = volumes.euclidean_ball_volume(d, s / 4.0)
    big = volumes.hyperbolic_ball_volume(d, 1.25 * s)
    return ComplexityCertificate(float(vol), float(systole), int(d), s,
                                 math.floor(vol / small), math.floor(big / small))


@dataclass
class AlphaReport:
    d: int
    vols: list[float]
    systoles: list[float]
    max_vertices: list[int]
    alphas: list[float]

    @property
    def alpha(self) -> float:
        return max(self.alphas)

    def as_dict(self) -> dict:
        return {"d": self.d, "vols": self.vols, "systoles": self.systoles,
                "max_vertices": self.max_vertices, "alphas": self.alphas, "alpha": self.alpha}


def empirical_alpha(vols: Iterable[float], p: BoundParams = BoundParams()) -> AlphaReport:
    """Smallest alpha with max_vertices <= alpha phi(vol) vol along the pipeline.

    The systole fed to the certificate is the volume lower bound.  The ratio
    is reported; nothing is asserted about its size.
    """
    vols = [float(v) for v in vols]
    if not vols:
        raise ValueError("empirical_alpha needs at least one volume")
    syst, verts, alphas = [], [], []
    for v in vols:
        s = systole_volume_lb(v, p)
        cert = complexity_certificate(v, s, p.d)
        syst.append(s)
        verts.append(cert.max_vertices)
        alphas.append(cert.max_vertices / (phi(v, p.d) * v))
    return AlphaReport(p.d, vols, syst, verts, alphas)
