"""Explicit geodesics from the origin to light vertices.

For ``beta >= beta_c(0)`` geodesics run along light diagonals and square
sides only (octagon regime).  For ``sqrt(3/2) <= beta < beta_c(0)`` they are
built from S3-paths, the Snell paths spanning three squares of a strip,
plus light diagonals and horizontal unit segments (S3 regime).  Below
``sqrt(3/2)`` no closed form is available and callers should use
:mod:`chessgeo.oracle`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import medium, normlen
from .errors import DomainError, UnsupportedRegimeError
from .oracle import DEFAULT_REFINEMENT, oracle_path
from .snell import StripSpec, snell_polyline, solve_sigma

SQRT2 = math.sqrt(2.0)
SQRT_3_2 = math.sqrt(1.5)


@lru_cache(maxsize=1)
def beta_c0() -> float:
    """Threshold between the octagon and the S3 regimes."""
    return normlen.beta_c(0)


def regime(beta: float) -> str:
    """``"octagon"``, ``"s3"`` or ``"oracle"`` for a given index."""
    if beta >= beta_c0():
        return "octagon"
    if beta >= SQRT_3_2:
        return "s3"
    return "oracle"


@dataclass(frozen=True)
class LightVertex:
    n: int
    j: int

    def __post_init__(self):
        if self.n < 0 or self.j < 0:
            raise DomainError(f"light vertex indices must be non-negative, got ({self.n}, {self.j})")

    @property
    def point(self) -> tuple[int, int]:
        return (2 * self.n + self.j, self.j)


@dataclass
class GeodesicResult:
    breakpoints: np.ndarray
    optical_length: float
    regime: str
    error_bar: float | None = None

    def to_dict(self) -> dict:
        out = {
            "regime": self.regime,
            "length": float(f"{self.optical_length:.12g}"),
            "breakpoints": [[float(f"{x:.12g}"), float(f"{y:.12g}")] for x, y in self.breakpoints],
        }
        if self.error_bar is not None:
            out["error_bar"] = float(f"{self.error_bar:.12g}")
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


@dataclass(frozen=True)
class S3Path:
    anchor: tuple[int, int]
    sigma3: float
    lambda3: float
    Lambda3: float
    polyline: np.ndarray


def lambda3(beta: float) -> float:
    """Normalized length ``l(2, beta)`` of an S3-path."""
    return normlen.norm_len(2.0, beta)


def Lambda3(beta: float) -> float:
    """Optical length of an S3-path."""
    return lambda3(beta) + 2.0 + SQRT2


def s3_path(beta: float, anchor=(0, 0)) -> S3Path:
    """Snell path from the light vertex ``anchor`` to ``anchor + (3, 1)``."""
    if beta <= 1:
        raise DomainError(f"beta must exceed 1, got {beta}")
    if not medium.is_light_vertex(*anchor):
        raise DomainError(f"anchor {anchor} is not a light vertex")
    spec = StripSpec(2.0, 1.0, 1.0, beta)
    lam = lambda3(beta)
    return S3Path(
        anchor=(int(anchor[0]), int(anchor[1])),
        sigma3=solve_sigma(spec),
        lambda3=lam,
        Lambda3=lam + 2.0 + SQRT2,
        polyline=snell_polyline(anchor[0], anchor[1], spec, "light"),
    )


def closed_form_length(x: float, y: float, beta: float, which: str | None = None) -> float:
    """Distance from the origin to a light vertex ``(x, y)``, ``0 <= y <= x``.

    ``which`` forces the octagon (``"octagon"``) or S3 (``"s3"``) formula;
    by default the regime of ``beta`` decides.
    """
    if not 0 <= y <= x:
        raise DomainError(f"need 0 <= y <= x, got ({x}, {y})")
    which = which or regime(beta)
    if which == "octagon":
        return x + (SQRT2 - 1.0) * y
    if which == "s3":
        L3 = Lambda3(beta)
        if 3 * y <= x:
            return x + (L3 - 3.0) * y
        return 0.5 * (L3 - SQRT2) * x + 0.5 * (3 * SQRT2 - L3) * y
    raise UnsupportedRegimeError(
        f"no closed form for beta={beta} < sqrt(3/2); use the oracle instead"
    )


def geodesic_to_light_vertex(n: int, j: int, beta: float) -> GeodesicResult:
    """Explicit geodesic from the origin to the light vertex ``(2n + j, j)``.

    Among the equal-length decompositions the one listing S3-paths first,
    then light diagonals, then horizontal segments is returned.  At
    ``beta == beta_c(0)`` both regimes apply and the octagon path is used.
    """
    target = LightVertex(n, j)
    x, y = target.point
    kind = regime(beta)
    if kind == "oracle":
        raise UnsupportedRegimeError(
            f"explicit geodesics need beta >= sqrt(3/2) ~ {SQRT_3_2:.5f}, got {beta}; "
            "use the oracle (oracle_path / --oracle N)"
        )
    if kind == "octagon":
        pts = [(0.0, 0.0), (float(j), float(j)), (float(x), float(y))]
        length = closed_form_length(x, y, beta, "octagon")
        return GeodesicResult(_dedupe(pts), length, "octagon")

    t = min(j, n)
    d = y - t
    r = x - 3 * t - d
    pieces = [np.zeros((1, 2))]
    for i in range(t):
        pieces.append(s3_path(beta, (3 * i, i)).polyline[1:])
    corner = (3.0 * t, float(t))
    pieces.append(np.array([[corner[0] + d, corner[1] + d], [float(x), float(y)]]))
    pts = np.concatenate(pieces)
    length = t * Lambda3(beta) + r + d * SQRT2
    return GeodesicResult(_dedupe(pts), length, "s3")


def oracle_geodesic(n: int, j: int, beta: float, refinement: int = DEFAULT_REFINEMENT) -> GeodesicResult:
    """Numerical geodesic to ``(2n + j, j)`` for any ``beta``.

    The error bar is the change of the oracle distance between ``N/2`` and
    ``N``; the distance itself is an upper bound.
    """
    x, y = LightVertex(n, j).point
    length, pts = oracle_path((0, 0), (x, y), beta, refinement)
    coarse, _ = oracle_path((0, 0), (x, y), beta, max(2, refinement // 2))
    return GeodesicResult(pts, length, "oracle", error_bar=abs(coarse - length))


def _dedupe(pts) -> np.ndarray:
    pts = np.asarray(pts, dtype=float)
    keep = [pts[0]]
    for p in pts[1:]:
        if np.hypot(*(p - keep[-1])) > 1e-12:
            keep.append(p)
    return np.array(keep)


def diagonal_cuts_per_strip(polyline) -> list[int]:
    """Number of light diagonals cut inside each horizontal strip.

    A diagonal ``y = x - 2m`` is cut in strip ``r - 1 < y < r`` when a
    piece of the path strictly inside the strip passes from one side of it
    to the other.  Running along a diagonal or touching it at a grid vertex
    does not count.
    """
    pts = np.asarray(polyline, dtype=float)
    top = int(math.ceil(pts[:, 1].max() - 1e-12))
    cuts = [set() for _ in range(top)]
    for p, q in zip(pts[:-1], pts[1:]):
        if abs(q[1] - p[1]) <= 1e-12:
            continue
        ylo, yhi = sorted((p[1], q[1]))
        for r in range(max(1, math.floor(ylo) + 1), min(top, math.ceil(yhi)) + 1):
            ta = (max(ylo, r - 1) - p[1]) / (q[1] - p[1])
            tb = (min(yhi, r) - p[1]) / (q[1] - p[1])
            fa = (p + ta * (q - p)) @ (1.0, -1.0)
            fb = (p + tb * (q - p)) @ (1.0, -1.0)
            lo, hi = sorted((fa, fb))
            for m in range(math.floor(lo / 2), math.ceil(hi / 2) + 1):
                if lo + 1e-12 < 2 * m < hi - 1e-12:
                    cuts[r - 1].add(m)
    return [len(c) for c in cuts]


def counterexample_curve(beta: float, t) -> float:
    """Normalized length ``l(t, beta) + l(2 - t, beta)`` of the two-strip comparison path.

    The path runs from the origin through ``(1 + t, 1)`` to ``(4, 2)``; at
    ``t = 0`` it is the diagonal followed by an S3-path.
    """
    if not 1 < beta < SQRT_3_2:
        raise DomainError(f"need 1 < beta < sqrt(3/2), got {beta}")
    t = np.asarray(t, dtype=float)
    if np.any(t < 0) or np.any(t > 1):
        raise DomainError("t must lie in [0, 1]")
    out = normlen.norm_len(t, beta) + normlen.norm_len(2.0 - t, beta)
    return out if np.ndim(out) else float(out)


def counterexample_slope(beta: float) -> float:
    """Right derivative of :func:`counterexample_curve` at ``t = 0``."""
    s3 = normlen.sigma_hat(2.0, beta)
    return math.sqrt(beta * beta - 0.5) - math.sqrt(1.0 - s3 * s3)


def _psi(beta: float) -> float:
    b2 = beta * beta
    return 2 * math.sqrt((3 - 2 * b2) / (2 * b2 - 1)) + math.sqrt((3 - 2 * b2) / (4 * b2 - 3)) - 1


def tilde_beta() -> float:
    """Index below which the diagonal-plus-S3 path to ``(4, 2)`` stops being optimal."""
    return normlen.bisect_monotone(_psi, 1.0, SQRT_3_2, increasing=False)
