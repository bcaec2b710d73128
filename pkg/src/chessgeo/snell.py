"""Snell paths in a medium of alternating vertical strips.

A Snell path crosses a total light thickness ``p`` and dark thickness ``q``
while rising by ``h``.  Writing ``sigma`` for the sine of the incidence angle
on the light side, Snell's law fixes the dark-side sine at ``sigma / beta``
and the rise condition reads::

    p * sigma / sqrt(1 - sigma**2) + q * sigma / sqrt(beta**2 - sigma**2) = h

The left-hand side is strictly increasing in ``sigma``, so the root is found
by bisection.  All kernels accept numpy arrays and broadcast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import medium
from .errors import DomainError

TOL_SIGMA = 1e-12
TOL_LEN = 1e-9
_POLE_GAP = 1e-14
_MAX_BISECT = 200


@dataclass(frozen=True)
class StripSpec:
    """Light thickness ``p``, dark thickness ``q``, height ``h`` and index ``beta``.

    ``beta = 1`` (a uniform medium) is accepted as the limiting case.
    """

    p: float
    q: float
    h: float
    beta: float

    def __post_init__(self):
        if not (self.p >= 0 and self.q >= 0 and self.p + self.q > 0):
            raise DomainError(f"need p, q >= 0 and p + q > 0, got p={self.p}, q={self.q}")
        if not (0 < self.h <= 1):
            raise DomainError(f"height must lie in (0, 1], got h={self.h}")
        if not self.beta >= 1:
            raise DomainError(f"refractive index must be >= 1, got beta={self.beta}")

    @property
    def thickness(self) -> float:
        return self.p + self.q

    @property
    def euclidean(self) -> float:
        return math.hypot(self.p + self.q, self.h)


@dataclass(frozen=True)
class SnellSolution:
    sigma: float
    length: float


def constraint_residual(sigma, p, q, h, beta):
    """Rise of the refracted path minus the target height ``h``."""
    sigma = np.asarray(sigma, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        light = np.where(p > 0, p * sigma / np.sqrt(1.0 - sigma**2), 0.0)
        dark = np.where(q > 0, q * sigma / np.sqrt(beta**2 - sigma**2), 0.0)
    return light + dark - h


def sigma_kernel(p, q, h, beta):
    """Vectorized solution of the rise condition for ``sigma``.

    Single-medium inputs (``p == 0`` or ``q == 0``) use the straight-line
    closed form; everything else is bisected on ``[0, sigma_hi]`` down to
    adjacent floating point numbers.
    """
    p, q, h, beta = (np.asarray(a, dtype=float) for a in np.broadcast_arrays(p, q, h, beta))
    lo = np.zeros_like(p)
    hi = np.where(p > 0, 1.0 - _POLE_GAP, beta - _POLE_GAP)
    for _ in range(_MAX_BISECT):
        mid = 0.5 * (lo + hi)
        done = (mid <= lo) | (mid >= hi)
        if np.all(done):
            break
        below = constraint_residual(mid, p, q, h, beta) < 0
        lo = np.where(below & ~done, mid, lo)
        hi = np.where(~below & ~done, mid, hi)
    r_lo = np.abs(constraint_residual(lo, p, q, h, beta))
    r_hi = np.abs(constraint_residual(hi, p, q, h, beta))
    sigma = np.where(r_lo <= r_hi, lo, hi)
    with np.errstate(divide="ignore", invalid="ignore"):
        sigma = np.where(q == 0, h / np.hypot(p, h), sigma)
        sigma = np.where(p == 0, beta * h / np.hypot(q, h), sigma)
    return sigma


def length_kernel(sigma, p, q, h, beta):
    """Optical length ``p/cos(theta1) + beta*q/cos(theta2)`` at a root ``sigma``.

    Uses the equivalent form ``p*sqrt(1-s^2) + q*sqrt(beta^2-s^2) + s*h``,
    which is stationary in ``s`` at the root and so insensitive to the
    bisection error.
    """
    sigma = np.asarray(sigma, dtype=float)
    light = np.where(p > 0, p * np.sqrt(np.clip(1.0 - sigma**2, 0.0, None)), 0.0)
    dark = q * np.sqrt(beta**2 - sigma**2)
    out = light + dark + sigma * h
    with np.errstate(invalid="ignore"):
        out = np.where(p == 0, beta * np.hypot(q, h), out)
    return out


def solve_sigma(spec: StripSpec) -> float:
    """Sine of the light-side incidence angle of the Snell path."""
    return float(sigma_kernel(spec.p, spec.q, spec.h, spec.beta))


def snell_solution(spec: StripSpec) -> SnellSolution:
    sigma = sigma_kernel(spec.p, spec.q, spec.h, spec.beta)
    length = length_kernel(sigma, spec.p, spec.q, spec.h, spec.beta)
    return SnellSolution(float(sigma), float(length))


def snell_length(spec: StripSpec) -> float:
    """Optical length of the Snell path described by ``spec``."""
    return snell_solution(spec).length


def snell_partials(spec: StripSpec) -> tuple[float, float]:
    """Partial derivatives of the optical length in ``p`` and ``q``.

    By the envelope argument they are the cosine-like factors
    ``sqrt(1 - sigma^2)`` and ``sqrt(beta^2 - sigma^2)``.  When ``p == 0`` the
    light-side factor is the one-sided limit and is clipped at zero.
    """
    s = solve_sigma(spec)
    return math.sqrt(max(1.0 - s * s, 0.0)), math.sqrt(spec.beta**2 - s * s)


def snell_polyline(x0: float, y0: float, spec: StripSpec, parity: str = "light") -> np.ndarray:
    """Breakpoints of the Snell path starting at ``(x0, y0)``.

    Columns are delimited by the integer abscissae; the first crossed
    column is light when ``parity == "light"`` and dark when
    ``parity == "dark"``, and the materials alternate from there.  The
    column widths must add up to ``spec.p`` light and ``spec.q`` dark.

    Returns an ``(m, 2)`` array whose rows are the start point, every
    interface crossing and the end point.
    """
    if parity not in ("light", "dark"):
        raise DomainError(f"parity must be 'light' or 'dark', got {parity!r}")
    s = solve_sigma(spec)
    slope_light = s / math.sqrt(1.0 - s * s) if s < 1.0 else math.inf
    slope_dark = s / math.sqrt(spec.beta**2 - s * s)

    x_end = x0 + spec.p + spec.q
    dark = parity == "dark"
    x, y = float(x0), float(y0)
    pts = [(x, y)]
    seen_light = seen_dark = 0.0
    while x_end - x > 1e-12:
        nxt = math.floor(x + 1e-12) + 1.0
        right = min(nxt, x_end)
        width = right - x
        if dark:
            y += width * slope_dark
            seen_dark += width
        else:
            y += width * slope_light
            seen_light += width
        x = right
        pts.append((x, y))
        dark = not dark
    if abs(seen_light - spec.p) > TOL_LEN or abs(seen_dark - spec.q) > TOL_LEN:
        raise DomainError(
            f"column layout from x0={x0} gives p={seen_light}, q={seen_dark}; "
            f"spec asks for p={spec.p}, q={spec.q}"
        )
    return np.array(pts)


def chessboard_snell_path(a, b, beta: float) -> tuple[np.ndarray, float]:
    """Snell path between two points on the sides of one horizontal strip.

    ``a = (xa, r)`` and ``b = (xb, r + 1)`` with integer ``r`` and
    ``xb > xa``.  The light and dark thicknesses are read off the
    chessboard row ``r``.  Returns the polyline and its optical length.
    """
    (xa, ya), (xb, yb) = a, b
    if not float(ya).is_integer() or abs(yb - ya - 1.0) > 1e-12:
        raise DomainError("endpoints must lie on consecutive horizontal grid lines")
    if xb <= xa:
        raise DomainError("the path must move to the right")
    row = int(ya)
    layout = medium.strip_layout(xa, xb, row)
    p, q = medium.strip_thicknesses(xa, xb, row)
    spec = StripSpec(p, q, 1.0, beta)
    parity = "dark" if layout[0][1] else "light"
    return snell_polyline(xa, ya, spec, parity), snell_length(spec)
