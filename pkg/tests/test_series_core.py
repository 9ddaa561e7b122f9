import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from dirichlet_families import (
    DomainError,
    GeneralDirichletSeries,
    GeometricTail,
    PowerTail,
    ResourceError,
    abscissa_estimate,
    classical_series,
    evaluate,
    evaluate_derivative,
    hurwitz_zeta,
    partial_sum,
    riemann_zeta,
    series_difference,
    truncation_bound,
)


@pytest.fixture(scope="module")
def zeta_million():
    return classical_series(10 ** 6, tail_model=PowerTail(C=1.0, p=0.0, q=1.0))


# --- construction ---------------------------------------------------------


def test_rejects_non_increasing_exponents():
    with pytest.raises(DomainError, match="index 2"):
        GeneralDirichletSeries([0.0, 1.0, 1.0], [1, 1, 1], 0.0)


def test_rejects_empty_and_mismatched():
    with pytest.raises(DomainError):
        GeneralDirichletSeries([], [], 0.0)
    with pytest.raises(DomainError):
        GeneralDirichletSeries([0.0, 1.0], [1.0], 0.0)
    with pytest.raises(DomainError):
        GeneralDirichletSeries([0.0], [1.0], math.inf)


def test_arrays_are_read_only():
    d = GeneralDirichletSeries([0.0, 1.0], [1.0, 2.0], 0.0)
    with pytest.raises(ValueError):
        d.coefficients[0] = 5


# --- eval -----------------------------------------------------------------


def test_zeta2_classical(zeta_million):
    res = evaluate(zeta_million, 2.0, tol=1e-6)
    assert res.truncation_bound <= 1e-6
    assert res.rigorous
    assert abs(res.value - oracles.zeta(2)) <= 1e-6


def test_zeta3_classical(zeta_million):
    res = evaluate(zeta_million, 3.0, tol=1e-10)
    assert abs(res.value - 1.2020569031595942) <= 1e-10
    assert res.terms_used < 10 ** 5


def test_single_term_is_exact():
    d = GeneralDirichletSeries([0.0], [1.0], 0.0, GeometricTail(C=0.0, gap=1.0))
    for s in (0.5, 2.0, 7.0 + 3j):
        res = evaluate(d, s)
        assert res.value == 1.0
        assert res.truncation_bound == 0.0


def test_eval_domain_errors():
    d = classical_series(10)
    with pytest.raises(DomainError):
        evaluate(d, 1.0)
    with pytest.raises(DomainError):
        evaluate(d, 0.5 + 4j)
    with pytest.raises(DomainError):
        evaluate(d, 2.0, tol=0.0)


def test_no_tail_model_is_heuristic():
    res = evaluate(classical_series(50), 2.0, tol=1e-3)
    assert not res.rigorous


def test_minimal_terms(zeta_million):
    res = evaluate(zeta_million, 2.0, tol=1e-4)
    n = res.terms_used
    assert truncation_bound(zeta_million, n, 2.0) <= 1e-4
    assert truncation_bound(zeta_million, n - 1, 2.0) > 1e-4


def test_unreachable_tolerance_flags():
    d = classical_series(100, tail_model=PowerTail(1.0, 0.0, 1.0))
    res = evaluate(d, 2.0, tol=1e-9)
    assert res.terms_used == 100
    assert not res.converged and not res.rigorous


def test_complex_argument():
    d = classical_series(20000, tail_model=PowerTail(1.0, 0.0, 1.0))
    s = 3.0 + 2.0j
    res = evaluate(d, s, tol=1e-8)
    assert abs(res.value - complex(oracles.mp.zeta(s))) <= 1e-8


# --- derivative -----------------------------------------------------------


def test_derivative_k0_matches_eval(zeta_million):
    a = evaluate(zeta_million, 2.5, tol=1e-8)
    b = evaluate_derivative(zeta_million, 2.5, 0, tol=1e-8)
    assert a == b


def test_derivative_single_term():
    d = GeneralDirichletSeries([math.log(2)], [1.0], 0.0)
    res = evaluate_derivative(d, 1.0, 1)
    assert res.value == pytest.approx(-math.log(2) / 2, rel=1e-15)


def test_zeta_prime(zeta_million):
    res = evaluate_derivative(zeta_million, 2.0, 1, tol=1e-4)
    assert res.truncation_bound <= 1e-4
    assert abs(res.value - oracles.zeta_prime(2)) <= 1e-4
    h = 1e-5
    fd = (evaluate(zeta_million, 2 + h, 1e-9).value
          - evaluate(zeta_million, 2 - h, 1e-9).value) / (2 * h)
    assert abs(res.value - fd) <= 1e-4


def test_derivative_rejects_negative_order():
    with pytest.raises(DomainError):
        evaluate_derivative(classical_series(5), 2.0, -1)


# --- partial sums and abscissa --------------------------------------------


def test_partial_sum_examples():
    assert partial_sum(GeneralDirichletSeries([0.0], [3.0], 0.0), 1, 2.0) == 3.0
    d = classical_series(100)
    assert partial_sum(d, 100, 2.0) == pytest.approx(1.6349839001848923, abs=1e-12)
    with pytest.raises(DomainError):
        partial_sum(d, 101, 2.0)
    with pytest.raises(DomainError):
        partial_sum(d, 0, 2.0)


def test_partial_sum_full_equals_eval_without_tail():
    d = classical_series(300)
    res = evaluate(d, 2.0, tol=1e-300)
    assert res.terms_used == 300
    assert partial_sum(d, 300, 2.0) == res.value


def test_abscissa_estimates():
    nu = np.arange(1, 1001, dtype=float)
    assert abscissa_estimate(classical_series(1000), (10, 1000)) == pytest.approx(1.0)
    d2 = GeneralDirichletSeries(2 * np.log(nu), np.ones(1000), 0.5)
    assert abscissa_estimate(d2, (10, 1000)) == pytest.approx(0.5)
    geo = GeneralDirichletSeries(nu * math.log(2), np.ones(1000), 0.0)
    first = abscissa_estimate(geo, (10, 1000))
    assert first <= math.log(1000) / (10 * math.log(2))
    later = [abscissa_estimate(geo, (lo, 1000)) for lo in (10, 50, 200, 800)]
    assert all(b < a for a, b in zip(later, later[1:]))


def test_abscissa_rejects_nonpositive_exponents():
    with pytest.raises(DomainError):
        abscissa_estimate(classical_series(10), (1, 10))


# --- zeta -----------------------------------------------------------------


@pytest.mark.parametrize("s,expected", [(2.0, math.pi ** 2 / 6), (4.0, math.pi ** 4 / 90),
                                        (10.0, 1.0009945751278180853)])
def test_riemann_zeta_examples(s, expected):
    assert abs(riemann_zeta(s, 1e-12) - expected) <= 1e-12


@pytest.mark.parametrize("s", np.linspace(0.6, 10, 25))
def test_riemann_zeta_accuracy(s):
    assert abs(riemann_zeta(float(s), 1e-10) - oracles.zeta(float(s))) <= 1e-10


def test_riemann_zeta_domain():
    with pytest.raises(DomainError):
        riemann_zeta(0.5)
    with pytest.raises(DomainError):
        riemann_zeta(2.0, tol=-1.0)


def test_riemann_zeta_unreachable_tol():
    with pytest.raises(ResourceError):
        riemann_zeta(2.0, tol=1e-30)


@pytest.mark.parametrize("s", [0.8, 1.5, 3.0])
def test_zeta_against_alternating_series(s):
    # eta(s) summed with mpmath's alternating-series acceleration
    eta = float(oracles.mp.nsum(lambda n: (-1) ** (n + 1) / n ** s, [1, oracles.mp.inf]))
    assert abs(riemann_zeta(s) * (1 - 2 ** (1 - s)) - eta) <= 1e-9


def test_hurwitz_matches_mpmath():
    for s, q in [(1.5, 0.25), (3.0 + 1j, 0.75), (2.0, 5.0)]:
        val, err = hurwitz_zeta(s, q)
        assert abs(val - complex(oracles.mp.zeta(s, q))) <= max(err, 1e-13)


# --- differences ----------------------------------------------------------


def test_series_difference_merges_exponents():
    a = GeneralDirichletSeries([0.0, 1.0], [1.0, 2.0], 0.0)
    b = GeneralDirichletSeries([1.0, 2.0], [2.0, 5.0], 0.5)
    d = series_difference(a, b, drop_below=0.0)
    assert d.exponents.tolist() == [0.0, 2.0]
    assert d.coefficients.tolist() == [1.0, -5.0]
    assert d.abscissa == 0.5


# --- properties -----------------------------------------------------------

real_s = st.floats(1.2, 6.0)


@given(s=real_s, n=st.integers(5, 400), p=st.sampled_from([0.0, 0.5, 1.0]))
def test_power_tail_soundness(s, n, p):
    # a_nu = nu**p on mu_nu = 2 log nu satisfies the power model with C = 1
    if 2 * s - p - 1 <= 0:
        return
    nu = np.arange(1, 2 * n + 1, dtype=float)
    full = GeneralDirichletSeries(2 * np.log(nu), nu ** p, (p + 1) / 2)
    model = PowerTail(C=1.0, p=p, q=2.0)
    head = GeneralDirichletSeries(full.exponents[:n], full.coefficients[:n],
                                  full.abscissa, model)
    big = partial_sum(full, 2 * n, s)
    gap = abs(big - partial_sum(full, n, s))
    # the difference of two O(1) sums carries rounding of order eps * |sum|
    assert gap <= truncation_bound(head, n, s) * (1 + 1e-12) + 4e-16 * abs(big)


@given(s=real_s, n=st.integers(2, 200), k=st.integers(1, 3))
def test_power_tail_soundness_derivatives(s, n, k):
    nu = np.arange(1, 4 * n + 1, dtype=float)
    full = classical_series(4 * n)
    head = classical_series(n, tail_model=PowerTail(1.0, 0.0, 1.0))
    bound = truncation_bound(head, n, s, k)
    gap = abs(np.sum((-np.log(nu[n:])) ** k * nu[n:] ** -s))
    assert gap <= bound * (1 + 1e-12)


@given(s=st.floats(0.05, 4.0), gap=st.floats(0.1, 2.0), n=st.integers(1, 50))
def test_geometric_tail_soundness(s, gap, n):
    mu = gap * np.arange(4 * n, dtype=float)
    a = np.cos(np.arange(4 * n))
    full = GeneralDirichletSeries(mu, a, 0.0)
    head = GeneralDirichletSeries(mu[:n], a[:n], 0.0, GeometricTail(C=1.0, gap=gap))
    big = partial_sum(full, 4 * n, s)
    diff = abs(big - partial_sum(full, n, s))
    slack = 1e-15 * float(np.sum(np.abs(a) * np.exp(-s * mu)))
    assert diff <= truncation_bound(head, n, s) * (1 + 1e-12) + slack


@given(s=st.floats(1.6, 5.0))
def test_derivative_matches_finite_difference(s):
    d = classical_series(5000, tail_model=PowerTail(1.0, 0.0, 1.0))
    h = 1e-5
    der = evaluate_derivative(d, s, 1, tol=1e-9).value
    fd = (evaluate(d, s + h, 1e-11).value - evaluate(d, s - h, 1e-11).value) / (2 * h)
    assert abs(der - fd) <= 1e-5 * (1 + abs(der))


@given(coefs=st.lists(st.floats(0, 10), min_size=1, max_size=30),
       s1=st.floats(0.1, 5.0), ds=st.floats(0.0, 5.0))
def test_monotone_in_s_for_nonnegative_coefficients(coefs, s1, ds):
    d = GeneralDirichletSeries(np.log(np.arange(2, len(coefs) + 2)), coefs, 0.0,
                               GeometricTail(C=0.0, gap=0.1))
    assert evaluate(d, s1 + ds).value <= evaluate(d, s1).value * (1 + 1e-14) + 1e-300
