"""Brute-force optical distance on the chessboard.

Geodesics are straight inside every open square, so it is enough to place
nodes on the square sides.  Each side is cut into ``N`` equal pieces (corners
included, so nested for ``N -> 2N``), every pair of nodes on different sides
of a square is joined by a chord weighted by the square's index, and
consecutive nodes along a side are joined with weight 1.  Dijkstra on that
graph gives an upper bound of the true distance that can only decrease under
refinement.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import dijkstra

from . import medium
from .errors import DomainError, OracleResourceError

DEFAULT_REFINEMENT = 64
MAX_NODES = 2_000_000
MAX_EDGES = 40_000_000


@lru_cache(maxsize=8)
def _cell_template(N: int):
    """Local ring of boundary nodes and the chord / side pairs of one square."""
    s = np.arange(N)
    ring = np.concatenate(
        [
            np.stack([s, np.zeros(N, int)], 1),  # bottom, left to right
            np.stack([np.full(N, N), s], 1),  # right, bottom to top
            np.stack([N - s, np.full(N, N)], 1),  # top, right to left
            np.stack([np.zeros(N, int), N - s], 1),  # left, top to bottom
        ]
    )
    iu, iv = np.triu_indices(len(ring), k=1)
    a, b = ring[iu], ring[iv]
    on_side = (
        ((a[:, 0] == 0) & (b[:, 0] == 0))
        | ((a[:, 0] == N) & (b[:, 0] == N))
        | ((a[:, 1] == 0) & (b[:, 1] == 0))
        | ((a[:, 1] == N) & (b[:, 1] == N))
    )
    chords = (iu[~on_side], iv[~on_side])
    chord_len = np.hypot(*(a[~on_side] - b[~on_side]).T) / N
    nxt = np.roll(np.arange(len(ring)), -1)
    sides = (np.arange(len(ring)), nxt)
    return ring, chords, chord_len, sides


def _cone_cells(a, b):
    """Squares meeting the region a geodesic between light vertices can visit."""
    dx, dy = int(b[0] - a[0]), int(b[1] - a[1])
    n2 = dx - dy
    x0, y0 = int(a[0]), int(a[1])
    cells = []
    for r in range(max(dy, 1)):
        for c in range(r, r + n2 + 1):
            cells.append((x0 + c, y0 + r))
    return cells


def _box_cells(a, b, margin):
    xs = (min(a[0], b[0]), max(a[0], b[0]))
    ys = (min(a[1], b[1]), max(a[1], b[1]))
    i0, i1 = math.floor(xs[0]) - margin, max(math.ceil(xs[1]), math.floor(xs[0]) + 1) + margin
    j0, j1 = math.floor(ys[0]) - margin, max(math.ceil(ys[1]), math.floor(ys[0]) + 1) + margin
    return [(i, j) for i in range(i0, i1) for j in range(j0, j1)]


def _cone_applies(a, b) -> bool:
    if not (medium.is_light_vertex(*a) and medium.is_light_vertex(*b)):
        return False
    dx, dy = b[0] - a[0], b[1] - a[1]
    return 0 <= dy <= dx


def select_cells(a, b, region: str = "auto", margin: int = 0):
    """Squares used by the oracle graph.

    ``"cone"`` keeps the squares meeting ``{0 <= y <= j, y <= x <= 2n + y}``
    (relative to ``a``), which contains every geodesic between the light
    vertices ``a`` and ``b = a + (2n + j, j)``.  ``"box"`` keeps the integer
    bounding box of the endpoints, grown by ``margin`` squares; a geodesic
    never leaves the box because any excursion past a grid line can be
    replaced by a run along that line.  ``"auto"`` picks the cone when it
    applies.
    """
    if region == "auto":
        region = "cone" if _cone_applies(a, b) and margin == 0 else "box"
    if region == "cone":
        if not _cone_applies(a, b):
            raise DomainError("the cone region needs light vertices with 0 <= dy <= dx")
        return _cone_cells(a, b)
    if region == "box":
        return _box_cells(a, b, margin)
    raise DomainError(f"unknown region {region!r}")


class _Graph:
    def __init__(self, cells, beta, N, max_nodes, max_edges):
        ring, chords, chord_len, sides = _cell_template(N)
        cells = np.array(sorted(set(cells)), dtype=np.int64).reshape(-1, 2)
        n_est = len(cells) * len(ring)
        if n_est > max_nodes:
            raise OracleResourceError(f"{n_est} nodes requested, cap is {max_nodes}")
        if len(cells) * len(chord_len) > max_edges:
            raise OracleResourceError(f"{len(cells) * len(chord_len)} edges requested, cap is {max_edges}")

        # integer node coordinates in units of 1/N, one row per (cell, ring slot)
        pts = (cells[:, None, :] * N + ring[None, :, :]).reshape(-1, 2)
        self.N = N
        self.offset = pts.min(0) - 1
        self.width = int(pts[:, 1].max() - self.offset[1] + 2)
        keys = self._key(pts)
        self.keys, inverse = np.unique(keys, return_inverse=True)
        local = inverse.reshape(len(cells), len(ring))

        dark = (cells.sum(1) % 2 == 1)
        weight = np.where(dark, beta, 1.0)
        u = local[:, chords[0]].ravel()
        v = local[:, chords[1]].ravel()
        w = (weight[:, None] * chord_len[None, :]).ravel()

        su = local[:, sides[0]].ravel()
        sv = local[:, sides[1]].ravel()
        lo, hi = np.minimum(su, sv), np.maximum(su, sv)
        side_keys = np.unique(lo.astype(np.int64) * len(self.keys) + hi)
        su, sv = np.divmod(side_keys, len(self.keys))

        self.cells = cells
        self.beta = beta
        self.ring = ring
        self.local = local
        self._u = [u, su]
        self._v = [v, sv]
        self._w = [w, np.full(len(su), 1.0 / N)]
        self.n_nodes = len(self.keys)
        self.extra_xy = []

    def _key(self, pts):
        pts = np.asarray(pts, dtype=np.int64)
        return (pts[:, 0] - self.offset[0]) * self.width + (pts[:, 1] - self.offset[1])

    def node_xy(self, idx):
        if idx >= len(self.keys):
            return self.extra_xy[idx - len(self.keys)]
        X, Y = divmod(int(self.keys[idx]), self.width)
        return ((X + self.offset[0]) / self.N, (Y + self.offset[1]) / self.N)

    def locate(self, point) -> int:
        """Index of ``point``, adding it as an extra node when it is off the grid."""
        N = self.N
        X, Y = point[0] * N, point[1] * N
        Xr, Yr = round(X), round(Y)
        on_node = abs(X - Xr) < 1e-9 and abs(Y - Yr) < 1e-9 and (Xr % N == 0 or Yr % N == 0)
        if on_node:
            key = self._key([(Xr, Yr)])[0]
            pos = np.searchsorted(self.keys, key)
            if pos < len(self.keys) and self.keys[pos] == key:
                return int(pos)
            raise DomainError(f"point {point} lies outside the oracle window")
        return self._add_extra(point)

    def _add_extra(self, point):
        x, y = point
        idx = self.n_nodes
        hits = 0
        for c, (i, j) in enumerate(self.cells):
            if not (i - 1e-12 <= x <= i + 1 + 1e-12 and j - 1e-12 <= y <= j + 1 + 1e-12):
                continue
            hits += 1
            nodes = self.local[c]
            xy = (self.ring + np.array([i, j]) * self.N) / self.N
            d = np.hypot(xy[:, 0] - x, xy[:, 1] - y)
            same_line = (
                (np.abs(xy[:, 0] - x) < 1e-12) & medium._on_grid_line(x)
            ) | ((np.abs(xy[:, 1] - y) < 1e-12) & medium._on_grid_line(y))
            a = self.beta if medium.is_dark(int(i), int(j)) else 1.0
            w = np.where(same_line, 1.0, a) * d
            keep = d > 0
            self._u.append(np.full(keep.sum(), idx))
            self._v.append(nodes[keep])
            self._w.append(w[keep])
            # earlier off-grid points in the same square see this one directly
            for k, (ex, ey) in enumerate(self.extra_xy):
                if i <= ex <= i + 1 and j <= ey <= j + 1 and (ex, ey) != (x, y):
                    self._u.append(np.array([idx]))
                    self._v.append(np.array([len(self.keys) + k]))
                    self._w.append(np.array([a * math.hypot(ex - x, ey - y)]))
        if hits == 0:
            raise DomainError(f"point {point} lies outside the oracle window")
        self.extra_xy.append((float(x), float(y)))
        self.n_nodes += 1
        return idx

    def matrix(self):
        u = np.concatenate(self._u)
        v = np.concatenate(self._v)
        w = np.concatenate(self._w)
        return coo_matrix((w, (u, v)), shape=(self.n_nodes, self.n_nodes)).tocsr()


def _solve(a, b, beta, refinement, region, margin, max_nodes, max_edges):
    if beta < 1:
        raise DomainError(f"refractive index must be >= 1, got {beta}")
    if refinement < 2 or int(refinement) != refinement:
        raise DomainError(f"refinement must be an integer >= 2, got {refinement}")
    a = (float(a[0]), float(a[1]))
    b = (float(b[0]), float(b[1]))
    if a == b:
        return None
    g = _Graph(select_cells(a, b, region, margin), beta, int(refinement), max_nodes, max_edges)
    src, dst = g.locate(a), g.locate(b)
    dist, pred = dijkstra(g.matrix(), directed=False, indices=src, return_predecessors=True)
    return g, src, dst, dist, pred


def oracle_distance(
    a,
    b,
    beta: float,
    refinement: int = DEFAULT_REFINEMENT,
    *,
    region: str = "auto",
    margin: int = 0,
    max_nodes: int = MAX_NODES,
    max_edges: int = MAX_EDGES,
) -> float:
    """Optical distance from ``a`` to ``b`` on the discretized chessboard."""
    solved = _solve(a, b, beta, refinement, region, margin, max_nodes, max_edges)
    if solved is None:
        return 0.0
    _, _, dst, dist, _ = solved
    return float(dist[dst])


def oracle_path(
    a,
    b,
    beta: float,
    refinement: int = DEFAULT_REFINEMENT,
    *,
    region: str = "auto",
    margin: int = 0,
    max_nodes: int = MAX_NODES,
    max_edges: int = MAX_EDGES,
) -> tuple[float, np.ndarray]:
    """Distance and the minimizing polyline, with collinear breakpoints merged."""
    solved = _solve(a, b, beta, refinement, region, margin, max_nodes, max_edges)
    if solved is None:
        return 0.0, np.array([a], dtype=float)
    g, src, dst, dist, pred = solved
    chain = [dst]
    while chain[-1] != src:
        chain.append(int(pred[chain[-1]]))
    pts = np.array([g.node_xy(i) for i in reversed(chain)], dtype=float)
    return float(dist[dst]), simplify_polyline(pts)


def simplify_polyline(pts, tol: float = 1e-12) -> np.ndarray:
    """Drop breakpoints lying on the straight line through their neighbours."""
    pts = np.asarray(pts, dtype=float)
    if len(pts) <= 2:
        return pts
    keep = [pts[0]]
    for cur, nxt in zip(pts[1:-1], pts[2:]):
        prev = keep[-1]
        d1, d2 = cur - prev, nxt - cur
        cross = d1[0] * d2[1] - d1[1] * d2[0]
        if abs(cross) > tol or np.dot(d1, d2) < 0:
            keep.append(cur)
    keep.append(pts[-1])
    return np.array(keep)
