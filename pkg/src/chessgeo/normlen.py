"""Normalized length of Snell paths leaving a light vertex.

For a horizontal excess ``t >= 0`` the Snell path from the origin to
``(t + 1, 1)`` crosses light thickness ``p(t)`` and dark thickness ``q(t)``.
Its optical length minus ``t + sqrt(2)`` (the best path avoiding dark
squares) is the normalized length ``l(t, beta)``.  The increments
``delta(k, beta) = l(2k + 2, beta) - l(2k, beta)`` change sign at the
critical indices ``beta_c(k)``, which organize the whole geodesic picture.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .render import csv_table
from .snell import length_kernel, sigma_kernel

SQRT2 = math.sqrt(2.0)
SQRT_3_2 = math.sqrt(1.5)
TOL_DELTA = 1e-10
BETA_C_BRACKET = (1.0 + 1e-9, SQRT2)


def _check_t(t):
    t = np.asarray(t, dtype=float)
    if np.any(t < 0) or np.any(~np.isfinite(t)):
        raise DomainError("t must be finite and non-negative")
    return t


def _check_beta(beta, strict=False):
    ok = beta > 1 if strict else beta >= 1
    if not (np.all(ok) and np.all(np.isfinite(beta))):
        raise DomainError(f"refractive index must be {'>' if strict else '>='} 1, got {beta}")


def q_of_t(t):
    """Dark thickness crossed on the way from the origin to ``(t + 1, 1)``."""
    t = _check_t(t)
    ft = np.floor(t)
    out = np.where(ft % 2 == 1, np.floor(t + 1) / 2, t - ft / 2)
    return out if out.ndim else float(out)


def p_of_t(t):
    """Light thickness, ``t + 1 - q(t)``."""
    t = _check_t(t)
    return t + 1 - q_of_t(t)


def interval_kind(t: float) -> str:
    """``"dark"`` on ``(2k, 2k+1)``, ``"light"`` on ``(2k+1, 2k+2)``, else ``"integer"``.

    The label names the material holding the last stretch of the path.
    """
    if float(t).is_integer():
        return "integer"
    return "dark" if math.floor(t) % 2 == 0 else "light"


def sigma_hat(t, beta):
    """Sine of the light-side angle of the Snell path from the origin to ``(t + 1, 1)``."""
    t = _check_t(t)
    _check_beta(beta)
    q = q_of_t(t)
    out = sigma_kernel(t + 1 - q, q, 1.0, beta)
    return out if out.ndim else float(out)


def norm_len(t, beta):
    """Normalized length ``l(t, beta)``; vectorized over ``t``."""
    t = _check_t(t)
    _check_beta(beta)
    q = q_of_t(t)
    p = t + 1 - q
    s = sigma_kernel(p, q, 1.0, beta)
    out = length_kernel(s, p, q, 1.0, beta) - t - SQRT2
    return out if out.ndim else float(out)


def norm_len_deriv(t: float, beta: float, side: str | None = None) -> float:
    """Derivative of ``l(., beta)`` at ``t``.

    The derivative jumps at integers, so there ``side`` must be ``"left"``
    or ``"right"``; it is ignored elsewhere.
    """
    _check_t(t)
    _check_beta(beta)
    kind = interval_kind(t)
    if kind == "integer":
        if side not in ("left", "right"):
            raise DomainError(f"l_t jumps at integer t={t}; pass side='left' or side='right'")
        if t == 0 and side == "left":
            raise DomainError("no left derivative at t = 0")
        even = int(t) % 2 == 0
        kind = "dark" if even == (side == "right") else "light"
    s = sigma_hat(t, beta)
    if kind == "dark":
        return math.sqrt(beta * beta - s * s) - 1.0
    return math.sqrt(1.0 - s * s) - 1.0


@dataclass(frozen=True)
class NormLenPoint:
    t: float
    beta: float
    sigma_hat: float
    value: float
    regime: str


def evaluate(t: float, beta: float) -> NormLenPoint:
    return NormLenPoint(float(t), float(beta), sigma_hat(t, beta), norm_len(t, beta), interval_kind(t))


def bisect_monotone(f, lo, hi, increasing=True):
    """Bisection to floating point adjacency for a monotone scalar map."""
    sign = 1.0 if increasing else -1.0
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if sign * f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return lo if abs(f(lo)) <= abs(f(hi)) else hi


def t_zero(beta: float) -> float:
    """Unique ``t0 > 0`` with ``sigma_hat(t0, beta) = sqrt(beta^2 - 1)``.

    Only defined for ``1 < beta < sqrt(3/2)``; beyond it ``sigma_hat`` never
    drops to the target because it starts at ``1/sqrt(2)``.
    """
    if not 1 < beta < SQRT_3_2:
        raise DomainError(f"t_zero needs 1 < beta < sqrt(3/2), got {beta}")
    target = math.sqrt(beta * beta - 1.0)

    def g(t):
        return sigma_hat(t, beta) - target

    hi = 1.0
    while g(hi) > 0:
        hi *= 2.0
    return bisect_monotone(g, 0.0, hi, increasing=False)


def delta(k, beta):
    """Increment ``l(2k + 2, beta) - l(2k, beta)``; vectorized over ``k``."""
    k = np.asarray(k)
    if np.any(k < 0) or not np.issubdtype(k.dtype, np.integer):
        raise DomainError("k must be a non-negative integer")
    _check_beta(beta)
    out = norm_len(2 * k + 2, beta) - norm_len(2 * k, beta)
    return out if np.ndim(out) else float(out)


def delta_at_one(k):
    """Closed form of ``delta(k, 1)`` in a uniform medium."""
    k = np.asarray(k, dtype=float)
    return np.sqrt(1 + (2 * k + 3) ** 2) - np.sqrt(1 + (2 * k + 1) ** 2) - 2


def delta_asymptote(k, beta):
    """Two-term large-``k`` expansion ``(beta - 1) - beta / (2 (beta + 1) k^2)``."""
    k = np.asarray(k, dtype=float)
    return (beta - 1) - beta / (2 * (beta + 1) * k**2)


def beta_c(k: int) -> float:
    """Critical index ``beta_c(k)``, the root of ``delta(k, .)`` in ``(1, sqrt(2))``."""
    if k < 0 or int(k) != k:
        raise DomainError("k must be a non-negative integer")
    k = int(k)
    lo, hi = BETA_C_BRACKET
    if not (delta(k, lo) < 0 < delta(k, hi)):
        raise RuntimeError(f"delta({k}, .) does not change sign on {BETA_C_BRACKET}")
    return bisect_monotone(lambda b: delta(k, b), lo, hi)


def beta_c_upper_bound(k: int) -> float:
    """Upper estimate ``1 + (sqrt(2) - 1)/(k + 1)`` for ``beta_c(k)``."""
    return 1.0 + (SQRT2 - 1.0) / (k + 1)


def k_c_cap(beta: float) -> int:
    return math.ceil((SQRT2 - 1.0) / (beta - 1.0)) + 2


def k_c(beta: float) -> int:
    """Smallest ``k`` with ``delta(k, beta) > 0``."""
    _check_beta(beta, strict=True)
    cap = k_c_cap(beta)
    ks = np.arange(cap + 1)
    positive = np.flatnonzero(delta(ks, beta) > 0)
    if positive.size == 0:
        raise RuntimeError(f"no positive delta(k, {beta}) for k <= {cap}; bound violated")
    return int(positive[0])


@dataclass
class CriticalTable:
    entries: list[tuple[int, float]] = field(default_factory=list)

    @classmethod
    def build(cls, max_k: int) -> "CriticalTable":
        if max_k < 0:
            raise DomainError("max_k must be non-negative")
        return cls([(k, beta_c(k)) for k in range(max_k + 1)])

    def to_csv(self) -> str:
        return csv_table(("k", "beta_c"), self.entries)


def _tilde_pq(t, h):
    t = _check_t(t)
    h = np.asarray(h, dtype=float)
    if np.any(h <= 0) or np.any(h > 1):
        raise DomainError("h must lie in (0, 1]")
    q = q_of_t(t)
    p = t + h - q
    if np.any(p < 0):
        raise DomainError("light thickness t + h - q(t) is negative")
    return t, h, p, q


def tilde_sigma(t, beta, h):
    """Root of the rise condition for thickness ``(p(t, h), q(t))`` and height ``h``."""
    _check_beta(beta)
    t, h, p, q = _tilde_pq(t, h)
    out = sigma_kernel(p, q, h, beta)
    return out if out.ndim else float(out)


def tilde_norm_len(t, beta, h):
    """Normalized length of the Snell path from ``(-h, -h)`` to ``(t, 0)``."""
    _check_beta(beta)
    t, h, p, q = _tilde_pq(t, h)
    s = sigma_kernel(p, q, h, beta)
    out = length_kernel(s, p, q, h, beta) - t - h * SQRT2
    return out if out.ndim else float(out)


def tilde_norm_len_dh(t, beta, h):
    """``d/dh`` of :func:`tilde_norm_len`, namely ``sqrt(1 - s^2) + s - sqrt(2)``."""
    s = np.asarray(tilde_sigma(t, beta, h))
    out = np.sqrt(1 - s**2) + s - SQRT2
    return out if out.ndim else float(out)
