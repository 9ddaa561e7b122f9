import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dirichlet_families import (
    DomainError,
    GeneralDirichletSeries,
    evaluate_derivative,
    series_difference,
)
from dirichlet_families.stieltjes import (
    PiecewiseLinearFunction,
    StepFunction,
    final_diagnostic,
    lip_norm_estimate,
    ls_transform_eval,
    step_from_series,
    wid_norm_estimate,
    widder_quotient,
)

RAMP = PiecewiseLinearFunction([0.0, 1.0], [1.0])


def _series(mu, a):
    return GeneralDirichletSeries(np.asarray(mu, float), np.asarray(a, float), 0.0)


# --- step functions -----------------------------------------------------------


def test_step_from_single_term():
    f = step_from_series(_series([0.0], [1.0]))
    assert f(0.0) == 1.0 and f(7.5) == 1.0 and f(-1e-9) == 0.0


def test_step_values_between_jumps():
    f = step_from_series(_series([0.5, 1.5], [1.0, 2.0]))
    assert f(1.0) == 1.0 and f(2.0) == 3.0
    assert f(0.5) == 1.0  # right-continuous


def test_step_rejections():
    with pytest.raises(DomainError):
        step_from_series(_series([-1.0, 2.0], [1.0, 1.0]))
    with pytest.raises(DomainError):
        step_from_series(GeneralDirichletSeries(np.array([1.0]), np.array([1j]), 0.0))
    shifted = step_from_series(_series([-1.0, 2.0], [1.0, 1.0]), shift=1.0)
    assert shifted.locations.tolist() == [0.0, 3.0]
    with pytest.raises(DomainError):
        StepFunction([1.0, 1.0], [1.0, 2.0])


def test_piecewise_linear_validation():
    with pytest.raises(DomainError):
        PiecewiseLinearFunction([0.5, 1.0], [1.0])
    with pytest.raises(DomainError):
        PiecewiseLinearFunction([0.0, 1.0], [1.0, 2.0])
    with pytest.raises(DomainError):
        PiecewiseLinearFunction.from_samples([0.0, 1.0], [1.0, 2.0])
    g = PiecewiseLinearFunction([0.0, 1.0, 3.0], [2.0, -1.0], tail_slope=0.5)
    assert g(1.0) == 2.0 and g(3.0) == 0.0 and g(5.0) == 1.0


# --- transforms ---------------------------------------------------------------


@pytest.mark.parametrize("s", [0.3, 1.0, 2.0 + 1.5j, 7.0])
def test_ramp_transform(s):
    oracle = complex(mp.quad(lambda t: mp.exp(-s * t), [0, 1]))
    assert abs(ls_transform_eval(RAMP, s) - oracle) <= 1e-14
    assert abs(ls_transform_eval(RAMP, s) - (1 - np.exp(-s)) / s) <= 1e-14


def test_unit_jump_transform():
    f = StepFunction([0.8], [1.0])
    assert ls_transform_eval(f, 2.0) == math.exp(-1.6)
    assert ls_transform_eval(f, -3.0) == math.exp(3.0 * 0.8)  # finite sums are entire


def test_unbounded_ramp_needs_positive_real_part():
    f = PiecewiseLinearFunction([0.0, 1.0], [1.0], tail_slope=1.0)
    assert ls_transform_eval(f, 2.0) == pytest.approx(1 / 2, abs=1e-15)  # slope 1 everywhere
    with pytest.raises(DomainError):
        ls_transform_eval(f, -0.5)


series_terms = st.lists(st.tuples(st.floats(0.0, 30.0), st.floats(-5.0, 5.0)),
                        min_size=1, max_size=12, unique_by=lambda x: x[0])


@given(series_terms, st.floats(0.1, 4.0), st.floats(-3.0, 3.0))
def test_round_trip_matches_series(terms, sigma, tau):
    terms.sort()
    d = _series([t for t, _ in terms], [a for _, a in terms])
    s = complex(sigma, tau)
    direct = complex(np.sum(d.coefficients * np.exp(-s * d.exponents)))
    assert ls_transform_eval(step_from_series(d), s) == direct


@given(series_terms, series_terms, st.floats(0.1, 4.0))
def test_transform_linearity(t1, t2, s):
    f = StepFunction(*zip(*sorted(t1)))
    g = StepFunction(*zip(*sorted(t2)))
    lhs = ls_transform_eval(f + g, s)
    rhs = ls_transform_eval(f, s) + ls_transform_eval(g, s)
    assert abs(lhs - rhs) <= 1e-12 * (1 + abs(lhs))


# --- Lip ---------------------------------------------------------------------


def test_lip_ramp_is_one():
    est = lip_norm_estimate(RAMP, omega=0.0)
    assert est.value == pytest.approx(1.0, abs=1e-12)
    assert not est.saturated


def test_lip_zero_function():
    assert lip_norm_estimate(StepFunction([], [])).value == 0.0
    assert lip_norm_estimate(PiecewiseLinearFunction([0.0, 2.0], [0.0])).value == 0.0


def test_lip_unit_step_saturates():
    est = lip_norm_estimate(StepFunction([1.0], [1.0]), delta_min=1e-3)
    assert est.value == pytest.approx(1000.0, rel=1e-9)
    assert est.saturated
    lo, hi = est.argmax
    assert lo < 1.0 <= hi


def test_lip_weight_damps():
    assert lip_norm_estimate(RAMP, omega=1.0).value == pytest.approx(1.0, abs=1e-5)
    f = StepFunction([2.0], [1.0])
    est = lip_norm_estimate(f, omega=0.5, delta_min=1e-3)
    assert est.value == pytest.approx(1000 * math.exp(-0.5 * 2.0), rel=1e-3)


def test_lip_seed_reproducible():
    f = PiecewiseLinearFunction.from_samples(np.linspace(0, 3, 7), np.sin(np.linspace(0, 3, 7)))
    assert lip_norm_estimate(f, seed=4) == lip_norm_estimate(f, seed=4)
    with pytest.raises(DomainError):
        lip_norm_estimate(f, delta_min=0.0)


@given(st.lists(st.floats(-3, 3), min_size=3, max_size=9), st.floats(-10, 10), st.floats(0, 1))
def test_lip_scaling_and_soundness(vals, c, omega):
    t = np.linspace(0.0, 4.0, len(vals) + 1)
    f = PiecewiseLinearFunction.from_samples(t, [0.0] + vals)
    est = lip_norm_estimate(f, omega=omega, pair_budget=200, delta_min=1e-4)
    scaled = lip_norm_estimate(c * f, omega=omega, pair_budget=200, delta_min=1e-4)
    assert scaled.value == pytest.approx(abs(c) * est.value, rel=1e-9, abs=1e-300)
    # the reported value is an achieved quotient and never beats the steepest slope
    lo, hi = est.argmax
    if est.value > 0:
        achieved = abs(f(hi) - f(lo)) / ((hi - lo) * math.exp(omega * hi))
        assert achieved == pytest.approx(est.value, rel=1e-14)  # scalar vs vector exp
        assert not est.saturated
    # rounding in f(t) - f(s) over spacings near delta_min
    assert est.value <= np.max(np.abs(f.slopes)) * (1 + 1e-9)


# --- Wid ---------------------------------------------------------------------


def test_wid_ramp_is_one():
    est = wid_norm_estimate(RAMP, omega=0.0, k_max=20)
    assert abs(est.value - 1.0) <= 1e-3
    assert not est.saturated


@pytest.mark.parametrize("k", [0, 1, 4, 9])
@pytest.mark.parametrize("s", [0.5, 2.0, 6.0])
def test_wid_ramp_terms_closed_form(k, s):
    deriv = mp.diff(lambda x: (1 - mp.exp(-x)) / x, s, k)
    oracle = float(mp.power(s, k + 1) / mp.factorial(k) * abs(deriv))
    assert widder_quotient(RAMP, s, k) == pytest.approx(oracle, rel=1e-10)


def test_wid_zero_series():
    assert wid_norm_estimate(_series([1.0], [0.0])).value == 0.0


def test_wid_single_term_grows_like_sqrt_k():
    d = _series([1.0], [1.0])
    values = []
    for k_max in (10, 40, 160):
        grid = np.arange(1, k_max + 2, dtype=float)  # contains every per-k optimum (k+1)/mu
        est = wid_norm_estimate(d, k_max=k_max, s_grid=grid)
        assert est.saturated
        oracle = float(mp.power(k_max + 1, k_max + 1) / mp.factorial(k_max) * mp.exp(-(k_max + 1)))
        assert est.value == pytest.approx(oracle, rel=1e-10)
        assert est.value == pytest.approx(math.sqrt((k_max + 1) / (2 * math.pi)), rel=0.02)
        values.append(est.value)
    assert values[0] < values[1] < values[2]


def test_wid_log_space_beyond_factorial_overflow():
    d = _series([1.0, 2.0], [1.0, -0.5])
    q = widder_quotient(d, 200.0, 199)
    assert math.isfinite(q) and q > 0
    assert wid_norm_estimate(d, k_max=250, s_grid=[50.0, 200.0]).value >= q


@pytest.mark.parametrize("k", [0, 1, 3, 6])
def test_wid_terms_reproduce_from_derivatives(k):
    d = _series([0.3, 1.0, 2.2], [1.0, -2.0, 0.5])
    for s in (0.7, 1.9, 4.0):
        deriv = evaluate_derivative(d, s, k, 1e-14).value
        direct = (s - 0.2) ** (k + 1) / math.factorial(k) * abs(deriv)
        assert widder_quotient(d, s, k, omega=0.2) == pytest.approx(direct, rel=1e-12)


def test_wid_pl_recurrence_matches_direct_quotient():
    t = np.linspace(0, 5, 41)
    f = PiecewiseLinearFunction.from_samples(t, np.sin(t))
    grid = [0.4, 1.3, 5.0, 20.0]
    est = wid_norm_estimate(f, k_max=15, s_grid=grid)
    direct = max(widder_quotient(f, s, k) for s in grid for k in range(16))
    assert est.value == pytest.approx(direct, rel=1e-9)


def test_wid_rejects_bad_grid():
    with pytest.raises(DomainError):
        wid_norm_estimate(RAMP, omega=1.0, s_grid=[0.5, 2.0])
    with pytest.raises(DomainError):
        wid_norm_estimate(RAMP, k_max=-1)


@given(st.floats(-20, 20), st.floats(0.0, 1.0))
def test_wid_scaling(c, omega):
    d = _series([0.5, 1.5, 4.0], [1.0, -0.3, 2.0])
    cd = _series([0.5, 1.5, 4.0], [c, -0.3 * c, 2.0 * c])
    grid = omega + np.geomspace(0.01, 100, 50)
    a = wid_norm_estimate(d, omega, 12, grid).value
    b = wid_norm_estimate(cd, omega, 12, grid).value
    assert b == pytest.approx(abs(c) * a, rel=1e-12, abs=1e-300)


# --- isometry on Lipschitz inputs ---------------------------------------------


def test_isometry_ramp():
    lip = lip_norm_estimate(RAMP).value
    wid = wid_norm_estimate(RAMP).value
    assert abs(lip - wid) <= 2e-2


def test_isometry_sampled_exponential():
    t = np.linspace(0.0, 20.0, 1001)
    f = PiecewiseLinearFunction.from_samples(t, 1 - np.exp(-t))
    lip, wid = lip_norm_estimate(f), wid_norm_estimate(f)
    assert abs(lip.value - wid.value) <= 2e-2
    assert not lip.saturated and not wid.saturated


# --- family diagnostic --------------------------------------------------------

MU = np.array([0.5, 1.0, 3.0, 4.0, 5.0])
A = 2.0 ** -MU
LIMIT = _series(MU, A)


def test_identical_family_is_zero():
    rows = final_diagnostic([LIMIT, LIMIT], LIMIT, k_max=10)
    for row in rows:
        assert row.wid.value == 0.0 and row.lip.value == 0.0


def test_aligned_family_decays_like_one_over_n():
    ns = (1, 2, 4, 8)
    members = [_series(MU, A + 1 / (n * 2.0 ** np.arange(MU.size))) for n in ns]
    rows = final_diagnostic(members, LIMIT, delta_min=1e-3, k_max=30)
    wid = np.array([r.wid.value for r in rows]) * ns
    lip = np.array([r.lip.value for r in rows]) * ns
    assert np.allclose(wid, wid[0], rtol=1e-9)
    assert np.allclose(lip, lip[0], rtol=1e-9)
    assert all(r.lip.saturated for r in rows)  # jumps never are Lipschitz
    # pair straddling the first jump gives |Delta a| / delta_min
    assert rows[0].lip.value >= (1.0 / 1e-3) * (1 - 1e-12)


def test_misaligned_family_saturates_without_decay():
    ns = (1, 2, 4, 8)
    members = []
    for n in ns:
        mu = MU.copy()
        mu[1] = 1.0 + 1.0 / n
        members.append(_series(mu, A))
    rows = final_diagnostic(members, LIMIT, delta_min=1e-3, k_max=60)
    assert all(r.lip.saturated and r.wid.saturated for r in rows)
    lips = [r.lip.value for r in rows]
    assert max(lips) == pytest.approx(min(lips), rel=1e-9)
    wids = np.array([r.wid.value for r in rows])
    assert wids[-1] * ns[-1] > 4 * wids[0]  # far from the 1/n trend


def test_diagnostic_length_mismatch():
    with pytest.raises(DomainError):
        final_diagnostic([LIMIT], LIMIT, steps=[])


def test_diagnostic_uses_series_difference():
    d = _series([0.5, 2.0], [1.0, 1.0])
    row = final_diagnostic([d], LIMIT, k_max=8, s_grid=[1.0, 3.0])[0]
    assert row.wid == wid_norm_estimate(series_difference(d, LIMIT), 0.0, 8, [1.0, 3.0])
