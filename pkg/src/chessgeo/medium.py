"""The two-valued chessboard medium.

Unit squares ``[i, i+1] x [j, j+1]`` alternate between a light material
(index 1) and a dark material (index ``beta``); the square at the origin is
light.  Square sides carry index 1, so a path running along a side is never
penalized.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

_EDGE_TOL = 1e-12


def is_dark(i: int, j: int) -> bool:
    """Whether the unit square with lower-left corner ``(i, j)`` is dark."""
    return (i + j) % 2 == 1


def refractive_index(x: float, y: float, beta: float) -> float:
    """Index of the medium at ``(x, y)``; points on square sides get 1."""
    if _on_grid_line(x) or _on_grid_line(y):
        return 1.0
    return beta if is_dark(math.floor(x), math.floor(y)) else 1.0


def _on_grid_line(v: float) -> bool:
    return abs(v - round(v)) <= _EDGE_TOL


def is_light_vertex(x: float, y: float) -> bool:
    """Integer points with ``x - y`` even, i.e. on some light diagonal."""
    if not (float(x).is_integer() and float(y).is_integer()):
        return False
    return (int(x) - int(y)) % 2 == 0


def light_vertex_point(n: int, j: int) -> tuple[int, int]:
    """Point ``(2n + j, j)`` on the light diagonal ``y = x - 2n``."""
    if n < 0 or j < 0:
        raise DomainError(f"light vertex indices must be non-negative, got n={n}, j={j}")
    return (2 * n + j, j)


def strip_layout(x_start: float, x_end: float, row: int) -> list[tuple[float, bool]]:
    """Column widths and darkness crossed by a horizontal run in strip ``row``.

    Returns a list of ``(width, dark)`` pairs, left to right, split at the
    integer abscissae between ``x_start`` and ``x_end``.
    """
    if x_end < x_start:
        raise DomainError("x_end must not be smaller than x_start")
    pieces = []
    x = x_start
    while x_end - x > _EDGE_TOL:
        col = math.floor(x + _EDGE_TOL)
        right = min(float(col + 1), x_end)
        pieces.append((right - x, is_dark(col, row)))
        x = right
    return pieces


def strip_thicknesses(x_start: float, x_end: float, row: int) -> tuple[float, float]:
    """Light and dark thickness ``(p, q)`` between two abscissae in one strip."""
    p = q = 0.0
    for width, dark in strip_layout(x_start, x_end, row):
        if dark:
            q += width
        else:
            p += width
    return p, q


def optical_length(points, beta: float) -> float:
    """Optical length of a polyline, integrating the index along each segment.

    Every segment is cut where it crosses a grid line; each piece is then
    weighted by the index of the open square it runs through, or by 1 when
    it runs along a square side.
    """
    pts = np.asarray(points, dtype=float)
    total = 0.0
    for (x0, y0), (x1, y1) in zip(pts[:-1], pts[1:]):
        cuts = {0.0, 1.0}
        for a, b in ((x0, x1), (y0, y1)):
            if abs(b - a) > _EDGE_TOL:
                lo, hi = sorted((a, b))
                for g in range(math.ceil(lo), math.floor(hi) + 1):
                    cuts.add((g - a) / (b - a))
        ts = sorted(c for c in cuts if 0.0 <= c <= 1.0)
        seg = math.hypot(x1 - x0, y1 - y0)
        for ta, tb in zip(ts[:-1], ts[1:]):
            if tb - ta <= 0.0:
                continue
            tm = 0.5 * (ta + tb)
            xm, ym = x0 + tm * (x1 - x0), y0 + tm * (y1 - y0)
            along_side = (abs(x1 - x0) <= _EDGE_TOL and _on_grid_line(x0)) or (
                abs(y1 - y0) <= _EDGE_TOL and _on_grid_line(y0)
            )
            weight = 1.0 if along_side else refractive_index(xm, ym, beta)
            total += weight * seg * (tb - ta)
    return total
