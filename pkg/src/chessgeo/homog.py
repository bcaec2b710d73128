"""Homogenized Finsler metric of the chessboard and its unit ball.

``Phi_beta(xi)`` is the limit of the rescaled chessboard distance from the
origin to ``xi``.  It is known in closed form for ``beta >= sqrt(3/2)``
(octagon or sixteen-sided unit ball); for smaller ``beta`` it is known only
on the two thin cones around the axes, and elsewhere it is estimated with
the shortest-path oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import normlen
from .errors import CoverageError, DomainError, UnsupportedRegimeError
from .geodesic import Lambda3, beta_c0
from .oracle import DEFAULT_REFINEMENT, oracle_distance
from .render import csv_table

SQRT2 = math.sqrt(2.0)
SQRT_3_2 = math.sqrt(1.5)
ORACLE_TOL = 5e-3


def _Mm(x, y):
    ax, ay = np.abs(np.asarray(x, dtype=float)), np.abs(np.asarray(y, dtype=float))
    return np.maximum(ax, ay), np.minimum(ax, ay)


def _scalar(out):
    return out if np.ndim(out) else float(out)


def phi(x, y, beta: float):
    """Closed-form metric for ``beta >= sqrt(3/2)``; vectorized over ``x, y``."""
    if beta < SQRT_3_2:
        raise UnsupportedRegimeError(
            f"Phi has no closed form for beta={beta} < sqrt(3/2); use phi_on_cone or phi_estimate"
        )
    M, m = _Mm(x, y)
    if beta >= beta_c0():
        return _scalar(M + (SQRT2 - 1.0) * m)
    L3 = Lambda3(beta)
    near_axis = M + (L3 - 3.0) * m
    near_diag = 0.5 * (L3 - SQRT2) * M + 0.5 * (3 * SQRT2 - L3) * m
    return _scalar(np.where(3 * m <= M, near_axis, near_diag))


def cone_slope(beta: float) -> float:
    """Coefficient ``l(2 k_c, beta) + sqrt(2) - 1`` of the flat faces next to the axes."""
    return normlen.norm_len(2.0 * normlen.k_c(beta), beta) + SQRT2 - 1.0


def in_cones(x, y, beta: float):
    """Whether ``(x, y)`` lies in ``(2 k_c + 1)|y| <= |x|`` or its mirror image."""
    M, m = _Mm(x, y)
    return (2 * normlen.k_c(beta) + 1) * m <= M * (1 + 1e-12)


def phi_on_cone(x, y, beta: float):
    """Metric on the cones around the axes, valid for every ``beta > 1``."""
    if not np.all(in_cones(x, y, beta)):
        raise CoverageError(f"point outside the cones (2k_c+1)m <= M for beta={beta}")
    M, m = _Mm(x, y)
    return _scalar(M + cone_slope(beta) * m)


@dataclass(frozen=True)
class FinslerMetric:
    """Metric for a fixed ``beta`` with the regime data precomputed.

    Calling it evaluates the closed form when one exists and the cone
    formula otherwise; the latter raises :class:`CoverageError` off the cones.
    """

    beta: float
    regime: str
    kc: int
    l_min: float
    Lambda3: float | None = None

    @classmethod
    def build(cls, beta: float) -> "FinslerMetric":
        if beta <= 1:
            raise DomainError(f"beta must exceed 1, got {beta}")
        kc = normlen.k_c(beta)
        regime = "closed-form" if beta >= SQRT_3_2 else "cone-only"
        L3 = Lambda3(beta) if SQRT_3_2 <= beta < beta_c0() else None
        return cls(beta, regime, kc, normlen.norm_len(2.0 * kc, beta), L3)

    def __call__(self, x, y):
        if self.regime == "closed-form":
            return phi(x, y, self.beta)
        return phi_on_cone(x, y, self.beta)


@dataclass(frozen=True)
class PhiEstimate:
    value: float
    error_bound: float
    conjectural: bool
    lattice_target: tuple[int, int]
    scale: int

    def __float__(self):
        return self.value


def lattice_target(x: float, y: float, scale: int) -> tuple[int, int]:
    """Lattice point standing in for ``scale * (x, y)`` after folding into ``0 <= y <= x``.

    Exact lattice points are used as they are.  Otherwise the light vertex
    ``(2n + j, j)`` with ``j = floor(s y)`` and ``n = floor((s x - j) / 2)``
    is taken, which lies within ``sqrt(5)`` of the scaled point.
    """
    M, m = (float(v) for v in _Mm(x, y))
    sx, sy = scale * M, scale * m
    if abs(sx - round(sx)) < 1e-9 and abs(sy - round(sy)) < 1e-9:
        return int(round(sx)), int(round(sy))
    j = math.floor(sy)
    n = math.floor((sx - j) / 2)
    return 2 * n + j, j


def phi_estimate(
    x: float,
    y: float,
    beta: float,
    scale: int,
    refinement: int = DEFAULT_REFINEMENT,
    oracle_tol: float = ORACLE_TOL,
) -> PhiEstimate:
    """Oracle estimate ``d(0, s xi) / s`` of the metric in any direction.

    Values off the cones for ``beta < sqrt(3/2)`` have no closed form to
    compare with and are flagged ``conjectural``.
    """
    if scale < 1 or int(scale) != scale:
        raise ValueError(f"scale must be a positive integer, got {scale}")
    target = lattice_target(x, y, scale)
    d = oracle_distance((0, 0), target, beta, refinement)
    conjectural = beta < SQRT_3_2 and not bool(in_cones(x, y, beta))
    return PhiEstimate(d / scale, math.sqrt(5) / scale + oracle_tol, conjectural, target, int(scale))


@dataclass
class UnitBall:
    """Polygon ``{Phi_beta = 1}`` listed counterclockwise from ``(1, 0)``.

    ``faces[i]`` describes the edge from vertex ``i`` to vertex ``i + 1``:
    ``"flat"`` for a true face of the ball, ``"gap"`` for a chord across a
    region where the metric is not determined.
    """

    beta: float
    vertices: np.ndarray
    faces: list[str]
    coverage: str
    corners: list[bool] = field(default_factory=list)

    def __post_init__(self):
        if not self.corners:
            self.corners = _corner_flags(self.vertices, self.faces)

    def cross_products(self) -> np.ndarray:
        v = self.vertices
        d = np.roll(v, -1, axis=0) - v
        return d[:, 0] * np.roll(d, -1, axis=0)[:, 1] - d[:, 1] * np.roll(d, -1, axis=0)[:, 0]

    def is_convex(self, tol: float = 1e-12) -> bool:
        return bool(np.all(self.cross_products() > -tol))

    def has_flat_face(self) -> bool:
        v = self.vertices
        lengths = np.hypot(*(np.roll(v, -1, axis=0) - v).T)
        return any(f == "flat" and L > 0 for f, L in zip(self.faces, lengths))

    def has_corner(self) -> bool:
        return any(self.corners)

    def to_csv(self) -> str:
        return csv_table(("x", "y"), [(float(x), float(y)) for x, y in self.vertices])


def _corner_flags(vertices, faces, tol=1e-12) -> list[bool]:
    """A vertex is a corner when both adjacent edges are faces with distinct normals."""
    v = np.asarray(vertices)
    n = len(v)
    flags = []
    for i in range(n):
        e_in = v[i] - v[i - 1]
        e_out = v[(i + 1) % n] - v[i]
        cross = e_in[0] * e_out[1] - e_in[1] * e_out[0]
        both_flat = faces[i - 1] == "flat" and faces[i] == "flat"
        flags.append(bool(both_flat and cross > tol))
    return flags


def _symmetrize(octant_points) -> np.ndarray:
    """Images of points with ``0 <= y <= x`` under the eight symmetries, sorted by angle."""
    pts = []
    for x, y in octant_points:
        for a, b in ((x, y), (y, x)):
            for sx in (1, -1):
                for sy in (1, -1):
                    pts.append((sx * a, sy * b))
    pts = np.array(pts, dtype=float)
    ang = np.mod(np.arctan2(pts[:, 1], pts[:, 0]), 2 * np.pi)
    ang = np.round(ang, 12)
    _, first = np.unique(ang, return_index=True)
    return pts[first]


def unit_ball(beta: float) -> UnitBall:
    """Unit sphere of the metric as a polygon.

    Octagon for ``beta >= beta_c(0)``, sixteen-gon for
    ``sqrt(3/2) <= beta < beta_c(0)``; below ``sqrt(3/2)`` only the flat faces
    inside the cones around the axes are known and the remaining arcs are
    closed by ``"gap"`` chords.
    """
    if beta >= beta_c0():
        verts = _symmetrize([(1.0, 0.0), (1 / SQRT2, 1 / SQRT2)])
        return UnitBall(beta, verts, ["flat"] * len(verts), "full")
    if beta >= SQRT_3_2:
        L3 = Lambda3(beta)
        verts = _symmetrize([(1.0, 0.0), (3.0 / L3, 1.0 / L3), (1 / SQRT2, 1 / SQRT2)])
        return UnitBall(beta, verts, ["flat"] * len(verts), "full")

    K = 2 * normlen.k_c(beta) + 1
    c = cone_slope(beta)
    edge = np.array([K, 1.0]) / (K + c)
    verts = _symmetrize([(1.0, 0.0), tuple(edge)])
    on_axis = np.isclose(np.abs(verts).min(axis=1), 0.0)
    faces = ["flat" if on_axis[i] or on_axis[(i + 1) % len(verts)] else "gap" for i in range(len(verts))]
    return UnitBall(beta, verts, faces, "cone")
