"""Numerical self-checks run by ``chessgeo verify`` and the acceptance tests.

Every check returns a :class:`CheckResult` carrying the worst residual it
saw, so a failing run says by how much it failed.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import geodesic, homog, normlen
from .oracle import oracle_distance
from .snell import StripSpec, snell_length, snell_partials

SQRT2 = math.sqrt(2.0)

REFERENCE_BETA_C = (1.24084, 1.06413, 1.02820, 1.01577, 1.01006, 1.00698, 1.00512, 1.00392)
TOL_BETA_C = 5e-6
TIME_BETA_C = 5.0
TOL_DELTA_ONE = 1e-12
DELTA_ONE_KMAX = 50
ASYMPTOTIC_BETAS = (1.1, 1.5, 2.0)
ASYMPTOTIC_K = (200, 400)
ASYMPTOTIC_RATIO = (0.3, 3.0)
TILDE_BETA = 1.17868
TOL_TILDE_BETA = 5e-6
COUNTER_BETA = 1.1
COUNTER_STEP = 1e-3
TOL_GRAD = 1e-6
GRAD_SAMPLES = 100
FD_STEP = 1e-5
ORACLE_BETAS = (1.25, 1.3, 1.5, 2.0)
ORACLE_TARGETS = ((3, 1), (4, 2), (5, 1), (7, 3))
ORACLE_N = 64
TOL_ORACLE = 5e-3
TIME_ORACLE = 60.0
GAP_SLACK = 1e-12
TOL_BALL = 1e-12
MINIMUM_BETAS = (1.26, 1.23, 1.2, 1.1, 1.05, 1.009)
MINIMUM_STEP = 1e-3
TOL_MINIMUM = 2e-3
T1_BETAS = (1.01, 1.05, 1.1, 1.2)
TOL_T1 = 1e-10
PHI_SCALE = 8
TOL_PHI_CONE = 1e-12
CONE_SAMPLES = 100
SEED = 20240607


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float
    detail: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: residual={self.residual:.3e} {self.detail}"


def check_critical_table() -> CheckResult:
    start = time.perf_counter()
    table = normlen.CriticalTable.build(len(REFERENCE_BETA_C) - 1)
    elapsed = time.perf_counter() - start
    errs = [abs(b - ref) for (_, b), ref in zip(table.entries, REFERENCE_BETA_C)]
    worst = max(errs)
    ok = worst <= TOL_BETA_C and elapsed < TIME_BETA_C
    return CheckResult(
        "critical_table", ok, worst, f"tol={TOL_BETA_C:g} time={elapsed:.2f}s limit={TIME_BETA_C:g}s"
    )


def check_delta_at_one() -> CheckResult:
    ks = np.arange(DELTA_ONE_KMAX + 1)
    worst = float(np.max(np.abs(normlen.delta(ks, 1.0) - normlen.delta_at_one(ks))))
    return CheckResult("delta_at_one", worst <= TOL_DELTA_ONE, worst, f"k=0..{DELTA_ONE_KMAX} tol={TOL_DELTA_ONE:g}")


def _scaled_remainder(k: int, beta: float) -> float:
    return k**3 * abs(normlen.delta(k, beta) - normlen.delta_asymptote(k, beta))


def check_delta_asymptotics() -> CheckResult:
    lo, hi = ASYMPTOTIC_RATIO
    ratios = []
    for beta in ASYMPTOTIC_BETAS:
        r1, r2 = (_scaled_remainder(k, beta) for k in ASYMPTOTIC_K)
        ratios.append(r1 / r2 if r2 > 0 else math.inf)
    ok = all(lo <= r <= hi for r in ratios)
    # distance from the admissible band, 0 when inside
    worst = max(max(lo - r, r - hi, 0.0) for r in ratios)
    shown = " ".join(f"{b:g}:{r:.4f}" for b, r in zip(ASYMPTOTIC_BETAS, ratios))
    return CheckResult("delta_asymptotics", ok, worst, f"ratios {shown} band=[{lo:g},{hi:g}]")


def check_counterexample() -> CheckResult:
    tb = geodesic.tilde_beta()
    err = abs(tb - TILDE_BETA)
    ts = np.arange(1, round(0.1 / COUNTER_STEP)) * COUNTER_STEP
    curve = geodesic.counterexample_curve(COUNTER_BETA, ts)
    base = geodesic.counterexample_curve(COUNTER_BETA, 0.0)
    dip = float(base - curve.min())
    ok = err <= TOL_TILDE_BETA and dip > 0
    return CheckResult(
        "counterexample", ok, err, f"tilde_beta={tb:.9f} tol={TOL_TILDE_BETA:g} L(0)-min L(t)={dip:.3e}"
    )


def _fd(f, x, h=FD_STEP):
    return (f(x + h) - f(x - h)) / (2 * h)


def check_gradients(seed: int = SEED) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(GRAD_SAMPLES):
        p, q = rng.uniform(0.1, 5.0, 2)
        h = 1.0 - rng.uniform(0.0, 1.0 - 1e-3)
        beta = 3.0 - rng.uniform(0.0, 2.0 - 1e-6)
        lp, lq = snell_partials(StripSpec(p, q, h, beta))
        fp = _fd(lambda v: snell_length(StripSpec(v, q, h, beta)), p)
        fq = _fd(lambda v: snell_length(StripSpec(p, v, h, beta)), q)
        worst = max(worst, abs(lp - fp), abs(lq - fq))
    for _ in range(GRAD_SAMPLES):
        t = rng.uniform(0.0, 12.0)
        h = rng.uniform(0.05, 0.95)
        beta = rng.uniform(1.01, 2.0)
        exact = normlen.tilde_norm_len_dh(t, beta, h)
        fd = _fd(lambda v: normlen.tilde_norm_len(t, beta, v), h)
        worst = max(worst, abs(exact - fd))
    return CheckResult("gradients", worst <= TOL_GRAD, worst, f"{2 * GRAD_SAMPLES} points tol={TOL_GRAD:g}")


def check_oracle_equivalence() -> CheckResult:
    start = time.perf_counter()
    worst = 0.0
    shrinking = True
    for beta in ORACLE_BETAS:
        for x, y in ORACLE_TARGETS:
            exact = geodesic.geodesic_to_light_vertex((x - y) // 2, y, beta).optical_length
            gap64 = oracle_distance((0, 0), (x, y), beta, ORACLE_N) - exact
            gap128 = oracle_distance((0, 0), (x, y), beta, 2 * ORACLE_N) - exact
            worst = max(worst, abs(gap64))
            shrinking &= gap128 <= gap64 + GAP_SLACK
    elapsed = time.perf_counter() - start
    ok = worst <= TOL_ORACLE and shrinking and elapsed < TIME_ORACLE
    return CheckResult(
        "oracle_equivalence",
        ok,
        worst,
        f"tol={TOL_ORACLE:g} gap non-increasing={shrinking} time={elapsed:.2f}s limit={TIME_ORACLE:g}s",
    )


def check_unit_balls() -> CheckResult:
    oct_ball = homog.unit_ball(1.5)
    ball16 = homog.unit_ball(1.23)
    v = oct_ball.vertices
    axis = np.min(np.hypot(v[:, 0] - 1.0, v[:, 1]))
    diag = np.min(np.hypot(v[:, 0] - 1 / SQRT2, v[:, 1] - 1 / SQRT2))
    worst = float(max(axis, diag))
    counts = (len(oct_ball.vertices), len(ball16.vertices))
    shape_ok = all(b.is_convex() and b.has_flat_face() and b.has_corner() for b in (oct_ball, ball16))
    ok = counts == (8, 16) and worst <= TOL_BALL and shape_ok
    return CheckResult(
        "unit_balls", ok, worst, f"vertices={counts[0]}/{counts[1]} convex+face+corner={shape_ok} tol={TOL_BALL:g}"
    )


def grid_minimizer(beta: float, step: float = MINIMUM_STEP) -> tuple[float, int]:
    """Grid argmin of ``l(., beta)`` on ``[0, 2 k_c + 6]`` and the ``k_c`` used."""
    kc = normlen.k_c(beta)
    n = round((2 * kc + 6) / step)
    ts = np.arange(n + 1) * step
    return float(ts[np.argmin(normlen.norm_len(ts, beta))]), kc


def check_minimum_structure() -> CheckResult:
    worst = 0.0
    found = []
    for beta in MINIMUM_BETAS:
        tmin, kc = grid_minimizer(beta)
        worst = max(worst, abs(tmin - 2 * kc))
        found.append(f"{beta:g}:{tmin:g}")
    return CheckResult("minimum_structure", worst <= TOL_MINIMUM, worst, f"argmin {' '.join(found)} tol={TOL_MINIMUM:g}")


def check_t1() -> CheckResult:
    worst = -math.inf
    for beta in T1_BETAS:
        t0 = normlen.t_zero(beta)
        k0 = max(0, math.ceil((t0 - 2) / 2))
        excess = normlen.norm_len(2 * k0 + 2, beta) - normlen.norm_len(t0, beta)
        worst = max(worst, excess)
    return CheckResult("t1_bound", worst <= TOL_T1, worst, f"max l(2k0+2)-l(t0) tol={TOL_T1:g}")


def check_homogenization(seed: int = SEED) -> CheckResult:
    est = homog.phi_estimate(1.0, 1.0, 1.5, PHI_SCALE, refinement=ORACLE_N)
    est_err = abs(est.value - SQRT2)
    est_tol = math.sqrt(5) / PHI_SCALE + homog.ORACLE_TOL
    rng = np.random.default_rng(seed)
    worst_cone = 0.0
    for _ in range(CONE_SAMPLES):
        beta = rng.uniform(homog.SQRT_3_2, 2.5)
        K = 2 * normlen.k_c(beta) + 1
        M = rng.uniform(0.1, 10.0)
        m = rng.uniform(0.0, M / K)
        x, y = (M, m) if rng.random() < 0.5 else (m, M)
        x, y = x * rng.choice((-1, 1)), y * rng.choice((-1, 1))
        worst_cone = max(worst_cone, abs(homog.phi_on_cone(x, y, beta) - homog.phi(x, y, beta)))
    ok = est_err <= est_tol and worst_cone <= TOL_PHI_CONE
    return CheckResult(
        "homogenization",
        ok,
        max(est_err, worst_cone),
        f"|estimate-sqrt2|={est_err:.3e} tol={est_tol:.4g} cone mismatch={worst_cone:.3e} tol={TOL_PHI_CONE:g}",
    )


CHECKS = (
    check_critical_table,
    check_delta_at_one,
    check_delta_asymptotics,
    check_counterexample,
    check_gradients,
    check_oracle_equivalence,
    check_unit_balls,
    check_minimum_structure,
    check_t1,
    check_homogenization,
)


def run_all() -> list[CheckResult]:
    return [check() for check in CHECKS]
