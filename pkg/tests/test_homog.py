import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chessgeo import geodesic, homog, normlen
from chessgeo.errors import CoverageError, DomainError, UnsupportedRegimeError

SQRT2 = math.sqrt(2)
SQRT_3_2 = math.sqrt(1.5)

coord = st.floats(-10, 10)
closed_beta = st.floats(SQRT_3_2, 3.0)


@pytest.mark.parametrize("beta", [SQRT_3_2, 1.23, 1.3, 2.0])
def test_axis_value(beta):
    assert homog.phi(1.0, 0.0, beta) == 1.0
    assert homog.phi(0.0, -1.0, beta) == 1.0


def test_examples():
    assert homog.phi(1, 1, 1.3) == pytest.approx(SQRT2, abs=1e-15)
    assert homog.phi(3, 1, 1.23) == pytest.approx(geodesic.Lambda3(1.23), abs=1e-12)


def test_unsupported_below_three_halves_root():
    with pytest.raises(UnsupportedRegimeError):
        homog.phi(1, 1, 1.2)


def test_branches_meet():
    for beta in (SQRT_3_2, 1.23, 1.235):
        near_axis = 3 + (geodesic.Lambda3(beta) - 3) * 1
        assert homog.phi(3, 1, beta) == pytest.approx(near_axis, abs=1e-12)
        assert homog.phi(3, 1 + 1e-12, beta) == pytest.approx(near_axis, abs=1e-10)
    b0 = geodesic.beta_c0()
    L3 = geodesic.Lambda3(b0)
    for M, m in [(1, 0.2), (1, 0.5), (1, 1)]:
        octagon = M + (SQRT2 - 1) * m
        s3 = M + (L3 - 3) * m if 3 * m <= M else 0.5 * (L3 - SQRT2) * M + 0.5 * (3 * SQRT2 - L3) * m
        assert octagon == pytest.approx(s3, abs=1e-12)


def test_metric_matches_geodesic_lengths():
    for beta in (1.23, 1.3):
        for n in range(4):
            for j in range(4):
                x, y = 2 * n + j, j
                res = geodesic.geodesic_to_light_vertex(n, j, beta)
                assert homog.phi(x, y, beta) == pytest.approx(res.optical_length, abs=1e-12)


@given(coord, coord, closed_beta, st.floats(0.01, 50))
def test_homogeneous(x, y, beta, lam):
    assert homog.phi(lam * x, lam * y, beta) == pytest.approx(lam * homog.phi(x, y, beta), rel=1e-12, abs=1e-12)


@given(coord, coord, closed_beta)
def test_symmetric(x, y, beta):
    v = homog.phi(x, y, beta)
    for a, b in [(-x, y), (x, -y), (-x, -y), (y, x), (-y, x)]:
        assert homog.phi(a, b, beta) == v


@given(coord, coord, closed_beta)
def test_sandwich(x, y, beta):
    r = math.hypot(x, y)
    v = homog.phi(x, y, beta)
    assert r - 1e-12 <= v <= beta * r + 1e-12


@given(coord, coord, coord, coord, closed_beta)
def test_triangle_inequality(x1, y1, x2, y2, beta):
    assert homog.phi(x1 + x2, y1 + y2, beta) <= homog.phi(x1, y1, beta) + homog.phi(x2, y2, beta) + 1e-12


def test_vectorized():
    xs = np.array([1.0, 3.0, 1.0])
    ys = np.array([0.0, 1.0, 1.0])
    out = homog.phi(xs, ys, 1.23)
    assert out.shape == (3,)
    assert out[1] == pytest.approx(geodesic.Lambda3(1.23), abs=1e-12)


def test_cone_formula():
    assert homog.phi_on_cone(1, 0, 1.1) == 1.0
    assert homog.phi_on_cone(3, 1, 1.1) == pytest.approx(3 + normlen.norm_len(2.0, 1.1) + SQRT2 - 1, abs=1e-12)
    assert homog.phi_on_cone(1, 0.5, 1.3) == pytest.approx(homog.phi(1, 0.5, 1.3), abs=1e-12)
    with pytest.raises(CoverageError):
        homog.phi_on_cone(3, 1.5, 1.1)


def test_cone_formula_matches_closed_form_on_random_cone_points():
    rng = np.random.default_rng(3)
    for _ in range(100):
        beta = rng.uniform(SQRT_3_2, 2.5)
        K = 2 * normlen.k_c(beta) + 1
        M = rng.uniform(0.1, 10)
        m = rng.uniform(0, M / K)
        x, y = (M, m) if rng.random() < 0.5 else (-m, M)
        assert homog.phi_on_cone(x, y, beta) == pytest.approx(homog.phi(x, y, beta), abs=1e-12)


def test_finsler_metric_wrapper():
    metric = homog.FinslerMetric.build(1.1)
    assert metric.regime == "cone-only" and metric.kc == 1
    assert metric(3, 1) == homog.phi_on_cone(3, 1, 1.1)
    assert homog.FinslerMetric.build(1.23).Lambda3 == pytest.approx(geodesic.Lambda3(1.23))
    with pytest.raises(DomainError):
        homog.FinslerMetric.build(1.0)


@pytest.mark.parametrize("scale", [1, 3, 8])
def test_estimate_on_axis_is_exact(scale):
    est = homog.phi_estimate(1, 0, 1.1, scale, refinement=8)
    assert est.value == 1.0


def test_estimate_diagonal():
    est = homog.phi_estimate(1, 1, 1.5, 8, refinement=64)
    assert abs(est.value - SQRT2) <= math.sqrt(5) / 8 + 5e-3
    assert est.error_bound == pytest.approx(math.sqrt(5) / 8 + 5e-3)
    assert not est.conjectural


def test_estimate_sixteen_gon_direction():
    est = homog.phi_estimate(1, 1 / 3, 1.23, 9)
    assert abs(est.value - geodesic.Lambda3(1.23) / 3) <= est.error_bound


def test_estimate_flags_uncovered_directions():
    assert homog.phi_estimate(1, 0.5, 1.1, 4, refinement=16).conjectural
    assert not homog.phi_estimate(1, 0.2, 1.1, 4, refinement=16).conjectural


def test_lattice_target_floor_construction():
    assert homog.lattice_target(1, 1, 8) == (8, 8)
    x, y = homog.lattice_target(0.7, 0.33, 10)
    assert (x - y) % 2 == 0
    assert math.hypot(7 - x, 3.3 - y) < math.sqrt(5)


def test_octagon_ball():
    ball = homog.unit_ball(1.5)
    assert len(ball.vertices) == 8 and ball.coverage == "full"
    np.testing.assert_allclose(ball.vertices[0], (1, 0), atol=1e-12)
    np.testing.assert_allclose(ball.vertices[1], (1 / SQRT2, 1 / SQRT2), atol=1e-12)
    assert ball.is_convex() and ball.has_flat_face() and ball.has_corner()


def test_sixteen_gon_ball():
    ball = homog.unit_ball(1.23)
    assert len(ball.vertices) == 16
    assert ball.is_convex() and ball.has_flat_face() and ball.has_corner()
    values = homog.phi(ball.vertices[:, 0], ball.vertices[:, 1], 1.23)
    assert np.max(np.abs(values - 1)) <= 1e-12


def test_cone_only_ball():
    ball = homog.unit_ball(1.1)
    assert ball.coverage == "cone"
    assert {"flat", "gap"} == set(ball.faces)
    axis = [i for i, v in enumerate(ball.vertices) if np.isclose(np.abs(v).min(), 0)]
    assert len(axis) == 4 and all(ball.corners[i] for i in axis)
    assert ball.is_convex() and ball.has_flat_face() and ball.has_corner()


@pytest.mark.parametrize("beta", [1.01, 1.1, 1.2, SQRT_3_2, 1.23, 1.24, 1.3, 2.0, 3.0])
def test_ball_invariants(beta):
    ball = homog.unit_ball(beta)
    v = ball.vertices
    r = np.hypot(v[:, 0], v[:, 1])
    assert np.all(r <= 1 + 1e-12) and np.all(r >= 1 / beta - 1e-12)
    ang = np.mod(np.arctan2(v[:, 1], v[:, 0]), 2 * np.pi)
    assert ang[0] == 0 and np.all(np.diff(ang) > 0)
    assert ball.is_convex()
    assert ball.has_flat_face() and ball.has_corner()
    if ball.coverage == "full":
        # edges stay outside the disc of radius 1/beta
        a, b = v, np.roll(v, -1, axis=0)
        d = b - a
        dist = np.abs(a[:, 0] * d[:, 1] - a[:, 1] * d[:, 0]) / np.hypot(d[:, 0], d[:, 1])
        assert np.all(dist >= 1 / beta - 1e-12)


def test_ball_csv_is_deterministic():
    a = homog.unit_ball(1.23).to_csv()
    assert a == homog.unit_ball(1.23).to_csv()
    lines = a.splitlines()
    assert lines[0] == "x,y" and lines[1] == "1,0" and len(lines) == 17
