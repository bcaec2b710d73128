import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chessgeo import normlen
from chessgeo.errors import DomainError

SQRT2 = math.sqrt(2)
REFERENCE_TABLE = (1.24084, 1.06413, 1.02820, 1.01577, 1.01006, 1.00698, 1.00512, 1.00392)
L2_AT_15 = 0.26790686712182482  # 40-digit reference
L2_AT_11 = -0.14689132900851066


@pytest.mark.parametrize("t,q,p", [(0.0, 0.0, 1.0), (1.0, 1.0, 1.0), (2.5, 1.5, 2.0), (3.0, 2.0, 2.0), (4.2, 2.2, 3.0)])
def test_thicknesses(t, q, p):
    assert normlen.q_of_t(t) == pytest.approx(q, abs=1e-15)
    assert normlen.p_of_t(t) == pytest.approx(p, abs=1e-15)


def test_thicknesses_vectorized_and_sum():
    t = np.linspace(0, 9, 901)
    assert np.allclose(normlen.p_of_t(t) + normlen.q_of_t(t), t + 1, atol=1e-14)
    assert np.all(normlen.q_of_t(t) >= 0) and np.all(normlen.p_of_t(t) >= 0)


def test_negative_t_rejected():
    with pytest.raises(DomainError):
        normlen.q_of_t(-0.1)
    with pytest.raises(DomainError):
        normlen.norm_len(-1.0, 1.2)


@pytest.mark.parametrize("beta", [1.01, 1.2, 1.5, 3.0])
def test_start_values(beta):
    assert normlen.sigma_hat(0.0, beta) == pytest.approx(1 / SQRT2, abs=1e-15)
    assert abs(normlen.norm_len(0.0, beta)) <= 1e-15


def test_uniform_medium_sigma():
    t = np.linspace(0, 10, 41)
    assert np.allclose(normlen.sigma_hat(t, 1.0), 1 / np.sqrt((1 + t) ** 2 + 1), atol=1e-14)


def test_regression_values():
    assert normlen.norm_len(2.0, 1.5) == pytest.approx(L2_AT_15, abs=1e-13)
    assert normlen.norm_len(2.0, 1.1) == pytest.approx(L2_AT_11, abs=1e-13)
    assert abs(normlen.norm_len(2.0, normlen.beta_c(0))) <= 1e-12


@given(st.floats(0.0, 15.0), st.floats(0.01, 2.0), st.floats(1.01, 2.5))
def test_sigma_hat_monotone(t, dt, beta):
    s = normlen.sigma_hat(t, beta)
    assert normlen.sigma_hat(t + dt, beta) < s
    # strictness is only observable once t is above rounding level
    if t > 1e-3:
        assert normlen.sigma_hat(t, beta + 0.05) > s
        assert s > 1 / math.hypot(1 + t, 1)


def test_interval_kind():
    assert normlen.interval_kind(0.5) == "dark"
    assert normlen.interval_kind(1.5) == "light"
    assert normlen.interval_kind(2.0) == "integer"
    pt = normlen.evaluate(2.5, 1.3)
    assert pt.regime == "dark" and pt.value == normlen.norm_len(2.5, 1.3)


@pytest.mark.parametrize("t", [0.3, 1.5, 2.7, 5.25, 8.9])
@pytest.mark.parametrize("beta", [1.05, 1.3, 2.0])
def test_derivative_matches_finite_differences(t, beta):
    e = 1e-6
    fd = (normlen.norm_len(t + e, beta) - normlen.norm_len(t - e, beta)) / (2 * e)
    assert normlen.norm_len_deriv(t, beta) == pytest.approx(fd, abs=1e-6)


def test_derivative_signs():
    for t in (1.2, 1.5, 3.7):
        assert -1 < normlen.norm_len_deriv(t, 1.1) < 0
    for beta in (math.sqrt(1.5), 1.3, 2.0):
        assert normlen.norm_len_deriv(0.5, beta) > 0


def test_derivative_needs_side_at_integers():
    with pytest.raises(DomainError):
        normlen.norm_len_deriv(2.0, 1.3)
    with pytest.raises(DomainError):
        normlen.norm_len_deriv(0.0, 1.3, side="left")
    e = 1e-7
    right = (normlen.norm_len(2 + e, 1.3) - normlen.norm_len(2.0, 1.3)) / e
    left = (normlen.norm_len(2.0, 1.3) - normlen.norm_len(2 - e, 1.3)) / e
    assert normlen.norm_len_deriv(2.0, 1.3, side="right") == pytest.approx(right, abs=1e-5)
    assert normlen.norm_len_deriv(2.0, 1.3, side="left") == pytest.approx(left, abs=1e-5)


@pytest.mark.parametrize("beta", [1.05, 1.2, 1.5])
def test_convex_on_each_open_interval(beta):
    for k in range(6):
        a, b = k + 1e-3, k + 1 - 1e-3
        ts = np.linspace(a, b, 3)
        v = normlen.norm_len(ts, beta)
        assert v[1] < 0.5 * (v[0] + v[2])


def test_t_zero_domain_and_trend():
    with pytest.raises(DomainError):
        normlen.t_zero(1.3)
    with pytest.raises(DomainError):
        normlen.t_zero(1.0)
    betas = [1.2, 1.1, 1.05, 1.01]
    ts = [normlen.t_zero(b) for b in betas]
    assert all(a < b for a, b in zip(ts, ts[1:]))
    for b, t0 in zip(betas, ts):
        assert normlen.sigma_hat(t0, b) == pytest.approx(math.sqrt(b * b - 1), abs=1e-12)
    assert normlen.t_zero(math.sqrt(1.5) - 1e-9) < 1e-6


def test_delta_closed_form_at_one():
    ks = np.arange(51)
    assert np.max(np.abs(normlen.delta(ks, 1.0) - normlen.delta_at_one(ks))) <= 1e-12
    assert normlen.delta(0, 1.0) == pytest.approx(math.sqrt(10) - SQRT2 - 2, abs=1e-12)


def test_delta_needs_integer_k():
    with pytest.raises(DomainError):
        normlen.delta(1.5, 1.2)
    with pytest.raises(DomainError):
        normlen.delta(-1, 1.2)


def test_delta_far_out():
    k, beta = 1000, 1.5
    assert normlen.delta(k, beta) == pytest.approx(normlen.delta_asymptote(k, beta), abs=1e-8)


@pytest.mark.parametrize("beta", [1.01, 1.1, 1.3, 1.6])
def test_delta_increasing_in_k(beta):
    d = normlen.delta(np.arange(40), beta)
    assert np.all(np.diff(d) > 0)


@pytest.mark.parametrize("k", [0, 1, 3, 10, 25])
def test_delta_increasing_in_beta_with_sign_change(k):
    betas = np.linspace(1.0, SQRT2, 30)
    d = [normlen.delta(k, b) for b in betas]
    assert all(a < b for a, b in zip(d, d[1:]))
    assert d[0] < 0 < d[-1]


def test_critical_table_matches_known_digits():
    table = normlen.CriticalTable.build(7)
    values = [b for _, b in table.entries]
    assert np.max(np.abs(np.array(values) - REFERENCE_TABLE)) <= 5e-6
    assert all(a > b for a, b in zip(values, values[1:]))
    for k, b in table.entries:
        assert 1 < b < normlen.beta_c_upper_bound(k)
        assert abs(normlen.delta(k, b)) <= normlen.TOL_DELTA
    lines = table.to_csv().splitlines()
    assert lines[0] == "k,beta_c" and lines[1].startswith("0,1.24084")


def test_second_critical_index_below_three_halves_root():
    assert normlen.beta_c(1) < math.sqrt(1.5) < normlen.beta_c(0)
    assert normlen.beta_c(60) < 1.01


@pytest.mark.parametrize("beta,kc", [(1.3, 0), (1.1, 1), (1.05, 2), (1.009, 5), (1.25, 0)])
def test_k_c_examples(beta, kc):
    assert normlen.k_c(beta) == kc


def test_k_c_rejects_uniform_medium():
    with pytest.raises(DomainError):
        normlen.k_c(1.0)


@pytest.mark.parametrize("beta", [1.26, 1.23, 1.2, 1.1, 1.05, 1.009, 1.003])
def test_global_minimum_at_twice_k_c(beta):
    kc = normlen.k_c(beta)
    ts = np.arange(round((2 * kc + 6) / 1e-3) + 1) * 1e-3
    tmin = ts[np.argmin(normlen.norm_len(ts, beta))]
    assert abs(tmin - 2 * kc) <= 2e-3


def test_two_minimizers_at_a_critical_index():
    b = normlen.beta_c(1)
    assert normlen.norm_len(2.0, b) == pytest.approx(normlen.norm_len(4.0, b), abs=1e-12)


@pytest.mark.parametrize("beta", [1.01, 1.05, 1.1, 1.2])
def test_t1_inequality(beta):
    t0 = normlen.t_zero(beta)
    k0 = max(0, math.ceil((t0 - 2) / 2))
    assert 2 * k0 + 2 >= t0 and (k0 == 0 or 2 * k0 < t0)
    assert normlen.norm_len(2 * k0 + 2, beta) <= normlen.norm_len(t0, beta) + 1e-10


@given(st.floats(0.0, 10.0), st.floats(1.01, 2.0))
def test_generalized_length_reduces_at_full_height(t, beta):
    assert normlen.tilde_norm_len(t, beta, 1.0) == pytest.approx(normlen.norm_len(t, beta), abs=1e-12)
    assert normlen.tilde_sigma(t, beta, 1.0) == pytest.approx(normlen.sigma_hat(t, beta), abs=1e-15)


@given(st.floats(0.01, 10.0), st.floats(1.01, 2.0), st.floats(0.02, 0.98))
def test_generalized_length_decreasing_in_h(t, beta, h):
    assert normlen.tilde_norm_len_dh(t, beta, h) < 0


def test_generalized_derivative_fd_point():
    t, beta, h, e = 1.5, 1.3, 0.5, 1e-5
    fd = (normlen.tilde_norm_len(t, beta, h + e) - normlen.tilde_norm_len(t, beta, h - e)) / (2 * e)
    assert normlen.tilde_norm_len_dh(t, beta, h) == pytest.approx(fd, abs=1e-6)


@pytest.mark.parametrize("t,beta", [(0.5, 1.1), (2.3, 1.3), (6.0, 1.05)])
def test_generalized_length_convex_in_h(t, beta):
    v = [normlen.tilde_norm_len(t, beta, h) for h in (0.2, 0.5, 0.8)]
    assert v[1] < 0.5 * (v[0] + v[2])


def test_generalized_length_domain():
    with pytest.raises(DomainError):
        normlen.tilde_norm_len(1.0, 1.2, 0.0)
    with pytest.raises(DomainError):
        normlen.tilde_norm_len(1.0, 1.2, 1.2)
