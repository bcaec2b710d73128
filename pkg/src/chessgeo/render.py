"""Deterministic text output: CSV tables and hand-written SVG."""

from __future__ import annotations

import math

import numpy as np

SIZE = 512


def fmt(v: float) -> str:
    """12 significant digits, no locale, no negative zero."""
    v = float(v) + 0.0
    if v == 0:
        return "0"
    return format(v, ".12g")


def csv_table(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


class _Canvas:
    """Affine map from a world box onto the square SVG viewport (y up)."""

    def __init__(self, xmin, xmax, ymin, ymax, pad=24):
        span = max(xmax - xmin, ymax - ymin) or 1.0
        self.scale = (SIZE - 2 * pad) / span
        self.x0 = pad - xmin * self.scale + 0.5 * (SIZE - 2 * pad - (xmax - xmin) * self.scale)
        self.y0 = SIZE - pad + ymin * self.scale - 0.5 * (SIZE - 2 * pad - (ymax - ymin) * self.scale)
        self.parts = []

    def xy(self, x, y):
        return fmt(self.x0 + x * self.scale), fmt(self.y0 - y * self.scale)

    def path(self, points, closed=False):
        cmds = []
        for i, (x, y) in enumerate(points):
            px, py = self.xy(x, y)
            cmds.append(f"{'M' if i == 0 else 'L'}{px} {py}")
        if closed:
            cmds.append("Z")
        return " ".join(cmds)

    def add(self, element):
        self.parts.append(element)

    def document(self, title=""):
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
            f'viewBox="0 0 {SIZE} {SIZE}">'
        )
        body = [head]
        if title:
            body.append(f"<title>{title}</title>")
        body.append(f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>')
        body.extend(self.parts)
        body.append("</svg>")
        return "\n".join(body) + "\n"


def ball_svg(ball) -> str:
    """Unit ball polygon over the Euclidean unit circle.

    In cone-only coverage the sectors where the boundary is known are
    shaded and the chords across undetermined arcs are dashed.
    """
    cv = _Canvas(-1.1, 1.1, -1.1, 1.1)
    circle = [(math.cos(t), math.sin(t)) for t in np.linspace(0, 2 * math.pi, 181)]
    cv.add(f'<path d="{cv.path(circle, closed=True)}" fill="none" stroke="#999" stroke-width="1"/>')
    v = ball.vertices
    if ball.coverage == "cone":
        for i, face in enumerate(ball.faces):
            if face == "flat":
                a, b = v[i], v[(i + 1) % len(v)]
                tri = [(0.0, 0.0), tuple(a), tuple(b)]
                cv.add(f'<path d="{cv.path(tri, closed=True)}" fill="#dde8f7" stroke="none"/>')
    for i, face in enumerate(ball.faces):
        a, b = v[i], v[(i + 1) % len(v)]
        dash = ' stroke-dasharray="6 4"' if face == "gap" else ""
        cv.add(f'<path d="{cv.path([tuple(a), tuple(b)])}" fill="none" stroke="#1f4e9c" stroke-width="2"{dash}/>')
    for (x, y), corner in zip(v, ball.corners):
        px, py = cv.xy(x, y)
        fill = "#c0392b" if corner else "#1f4e9c"
        cv.add(f'<circle cx="{px}" cy="{py}" r="3" fill="{fill}"/>')
    return cv.document(f"unit ball beta={fmt(ball.beta)} coverage={ball.coverage}")


def polyline_svg(points, beta: float) -> str:
    """Path drawn over the chessboard squares it spans."""
    pts = np.asarray(points, dtype=float)
    xmin, ymin = np.floor(pts.min(0))
    xmax, ymax = np.ceil(pts.max(0))
    xmax, ymax = max(xmax, xmin + 1), max(ymax, ymin + 1)
    cv = _Canvas(xmin, xmax, ymin, ymax)
    for i in range(int(xmin), int(xmax)):
        for j in range(int(ymin), int(ymax)):
            fill = "#555" if (i + j) % 2 else "#f4f4f4"
            sq = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
            cv.add(f'<path d="{cv.path(sq, closed=True)}" fill="{fill}" stroke="#bbb" stroke-width="0.5"/>')
    cv.add(f'<path d="{cv.path(pts)}" fill="none" stroke="#e67e22" stroke-width="3"/>')
    return cv.document(f"geodesic beta={fmt(beta)}")


def line_plot_svg(xs, ys, title: str = "") -> str:
    """Plain line plot with the two coordinate axes."""
    xs, ys = np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)
    xmin, xmax = float(xs.min()), float(xs.max())
    ymin, ymax = float(min(ys.min(), 0.0)), float(max(ys.max(), 0.0))
    pad_y = 0.05 * (ymax - ymin or 1.0)
    # stretch y so the curve fills the square viewport
    sy = (xmax - xmin or 1.0) / ((ymax - ymin) + 2 * pad_y)
    cv = _Canvas(xmin, xmax, (ymin - pad_y) * sy, (ymax + pad_y) * sy)
    cv.add(f'<path d="{cv.path([(xmin, 0.0), (xmax, 0.0)])}" stroke="#999" stroke-width="1"/>')
    if xmin <= 0 <= xmax:
        cv.add(f'<path d="{cv.path([(0.0, (ymin - pad_y) * sy), (0.0, (ymax + pad_y) * sy)])}" stroke="#999" stroke-width="1"/>')
    curve = list(zip(xs, ys * sy))
    cv.add(f'<path d="{cv.path(curve)}" fill="none" stroke="#1f4e9c" stroke-width="1.5"/>')
    return cv.document(title)
