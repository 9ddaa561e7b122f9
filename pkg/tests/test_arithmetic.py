import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from dirichlet_families import (
    RATIONALS,
    DomainError,
    MetricConfig,
    QuadraticField,
    ResourceError,
    SplittingType,
    dedekind_zeta_eval,
    field_distance,
    field_distance_euler,
    kronecker_symbol,
    l_function_eval,
    local_factor,
    primorial_experiment,
    splitting_type,
)
from dirichlet_families.arithmetic import (
    character_table,
    ideal_count,
    is_prime,
    prime_ideal_count,
    primes_up_to,
)

Q5, Q6 = QuadraticField(5), QuadraticField(6)
DISCRIMINANTS = [5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 40, 120, 840]


# --- fields and characters ------------------------------------------------


def test_discriminants():
    assert Q5.discriminant == 5
    assert QuadraticField(2).discriminant == 8
    assert QuadraticField(30).discriminant == 120
    assert RATIONALS.discriminant == 1
    for bad in (1, 4, 12, -3, 0):
        with pytest.raises(DomainError):
            QuadraticField(bad)


def test_kronecker_examples():
    assert kronecker_symbol(5, 2) == -1
    assert kronecker_symbol(5, 4) == 1
    assert kronecker_symbol(5, 5) == 0
    assert kronecker_symbol(5, 11) == 1
    for delta in DISCRIMINANTS:
        assert kronecker_symbol(delta, 1) == 1
    with pytest.raises(DomainError):
        kronecker_symbol(5, 0)


def test_kronecker_matches_residue_table():
    squares = {(x * x) % 5 for x in range(1, 5)}
    for p in (3, 7, 11, 13, 17, 19):
        assert kronecker_symbol(5, p) == (1 if 5 % p in squares or (5 % p) in
                                          {(x * x) % p for x in range(1, p)} else -1)


@pytest.mark.parametrize("delta", DISCRIMINANTS)
def test_character_table_matches_oracle(delta):
    table = character_table(delta)
    assert table.tolist() == [oracles.kronecker(delta, n) if n else 0 for n in range(delta)]


@pytest.mark.parametrize("delta", DISCRIMINANTS)
def test_full_period_sum_is_zero(delta):
    assert int(np.sum(character_table(delta))) == 0


@given(delta=st.sampled_from(DISCRIMINANTS), m=st.integers(1, 10 ** 4), n=st.integers(1, 10 ** 4))
def test_character_multiplicative_and_periodic(delta, m, n):
    chi = lambda k: kronecker_symbol(delta, k)  # noqa: E731
    assert chi(m * n) == chi(m) * chi(n)
    assert chi(n + delta) == chi(n)
    assert (chi(n) == 0) == (math.gcd(n, delta) > 1)


# --- splitting and local data ---------------------------------------------


def test_splitting_examples():
    assert splitting_type(5, Q5) is SplittingType.RAMIFIED
    assert splitting_type(11, Q5) is SplittingType.SPLIT
    assert splitting_type(2, Q5) is SplittingType.INERT
    assert splitting_type(2, Q6) is SplittingType.RAMIFIED
    with pytest.raises(DomainError):
        splitting_type(9, Q5)


@given(p=st.sampled_from(list(primes_up_to(500))), d=st.sampled_from([2, 3, 5, 6, 7, 10, 30]))
def test_ramified_iff_divides_discriminant(p, d):
    k = QuadraticField(d)
    p = int(p)
    assert (splitting_type(p, k) is SplittingType.RAMIFIED) == (k.discriminant % p == 0)


def test_ideal_count_examples():
    for p in (2, 3, 7):
        for f in range(1, 5):
            assert ideal_count(RATIONALS, p, f) == 1
    assert [ideal_count(Q5, 11, f) for f in (1, 2)] == [2, 3]
    assert [ideal_count(Q5, 2, f) for f in (1, 2)] == [0, 1]


def _series_coefficients(factor_kind, x_terms=7):
    # brute-force expansion of the local factor as a polynomial in x
    geo = np.ones(x_terms)
    if factor_kind is SplittingType.SPLIT:
        return np.convolve(geo, geo)[:x_terms]
    if factor_kind is SplittingType.INERT:
        out = np.zeros(x_terms)
        out[::2] = 1
        return out
    return geo


@pytest.mark.parametrize("k", [Q5, Q6, QuadraticField(7)])
def test_generating_function_identity(k):
    for p in primes_up_to(60):
        kind = splitting_type(int(p), k)
        coeffs = _series_coefficients(kind)
        got = [1] + [ideal_count(k, int(p), f) for f in range(1, 7)]
        assert got == coeffs.astype(int).tolist()


@pytest.mark.parametrize("k", [Q5, Q6])
@pytest.mark.parametrize("s", [1.2, 2.0, 3.0])
def test_local_factorization_identity(k, s):
    for p in primes_up_to(1000):
        p = int(p)
        chi = kronecker_symbol(k.discriminant, p)
        rhs = 1 / (1 - p ** -s) / (1 - chi * p ** -s)
        assert abs(local_factor(k, p)(s) - rhs) <= 1e-14 * rhs


def test_prime_ideal_counts_reproduce_log_zeta():
    s = 2.0
    for p in primes_up_to(200):
        p = int(p)
        lhs = math.log(local_factor(Q5, p)(s))
        rhs = -sum(prime_ideal_count(Q5, p, f) * math.log(1 - p ** (-f * s)) for f in (1, 2))
        assert abs(lhs - rhs) <= 1e-15


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == oracles.primes(29)


# --- L-values ---------------------------------------------------------------


def test_l_chi5_at_one():
    lv = l_function_eval(Q5, 1.0, tol=1e-10)
    assert lv.error_bound <= 1e-10
    assert abs(lv.value - oracles.golden_l_value()) <= 1e-10


def test_l_chi8_at_one():
    lv = l_function_eval(QuadraticField(2), 1.0, tol=1e-9)
    assert abs(lv.value - math.log(1 + math.sqrt(2)) / math.sqrt(2)) <= 1e-9


def test_l_chi5_at_two():
    # closed form 4 pi^2 / (25 sqrt 5); see the notes on the listed 0.5883
    lv = l_function_eval(Q5, 2.0, tol=1e-12)
    assert abs(lv.value - 4 * math.pi ** 2 / (25 * math.sqrt(5))) <= 1e-12
    assert abs(lv.value - oracles.l_value(5, 2.0)) <= 1e-12


@pytest.mark.parametrize("delta", [5, 8, 12, 13, 24, 120])
@pytest.mark.parametrize("s", [1.0, 1.3, 2.5])
def test_l_values_against_hurwitz_oracle(delta, s):
    d = delta if delta % 4 == 1 else delta // 4
    lv = l_function_eval(QuadraticField(d), s, tol=1e-9)
    assert abs(lv.value - oracles.l_value(delta, s)) <= max(lv.error_bound, 1e-12) + 1e-12


def test_l_tends_to_one():
    for d in (2, 5, 6, 30):
        lv = l_function_eval(QuadraticField(d), 8.0, tol=1e-12)
        assert abs(lv.value - 1) < 0.008


def test_l_resource_error():
    with pytest.raises(ResourceError) as info:
        l_function_eval(Q5, 1.0, tol=1e-14, max_terms=1000)
    assert info.value.achieved > 1e-14


def test_l_domain():
    with pytest.raises(DomainError):
        l_function_eval(Q5, 0.9)
    with pytest.raises(DomainError):
        l_function_eval(RATIONALS, 2.0)


# --- Dedekind zeta ----------------------------------------------------------


def test_dedekind_q5_at_two():
    val = dedekind_zeta_eval(Q5, 2.0, 10 ** 5)
    expected = oracles.zeta(2) * oracles.l_value(5, 2.0)
    assert abs(val.value - expected) <= val.error_bound
    assert val.error_bound < 1e-4


def test_dedekind_empty_product_and_rationals():
    assert dedekind_zeta_eval(Q5, 2.0, 0).value == 1.0
    val = dedekind_zeta_eval(RATIONALS, 2.0, 10 ** 5)
    assert abs(val.value - math.pi ** 2 / 6) <= val.error_bound


def test_dedekind_bound_tightens():
    errs = [dedekind_zeta_eval(Q6, 1.5, p).error_bound for p in (100, 1000, 10000)]
    assert errs[0] > errs[1] > errs[2]
    with pytest.raises(DomainError):
        dedekind_zeta_eval(Q6, 1.0, 100)
    with pytest.raises(ResourceError):
        dedekind_zeta_eval(Q6, 1.5, 100, tol=1e-8)


# --- distances --------------------------------------------------------------


def test_field_distance_identity():
    assert field_distance(Q5, Q5).value == 0.0


def test_field_distance_q_vs_q5():
    res = field_distance(RATIONALS, Q5, a=1.0)
    assert abs(res.value - abs(math.log(oracles.golden_l_value()))) <= 1e-9
    assert res.argmax_s == 1.0
    # L(chi_5, s) increases toward 1 on [1, 2]
    logs = res.samples[:, 1]
    assert np.all(np.diff(-logs) > 0) and np.all(logs > 0)


def test_field_distance_two_routes_within_bounds():
    cfg = MetricConfig(gamma=1.5, width=1.5, grid_points=24)
    a = field_distance(Q5, Q6, a=2.0, guard=0.5, cfg=cfg)
    b = field_distance_euler(Q5, Q6, a=2.0, prime_bound=10 ** 4, cfg=cfg, lower=1.5)
    assert abs(a.value - b.value) <= a.error_estimate + b.error_estimate


def test_field_distance_two_routes_to_1e6():
    cfg = MetricConfig(gamma=3.0, width=1.0, grid_points=16)
    a = field_distance(RATIONALS, Q5, a=3.0, guard=2.0, cfg=cfg)
    b = field_distance_euler(RATIONALS, Q5, a=3.0, prime_bound=10 ** 4, cfg=cfg, lower=3.0)
    assert abs(a.value - b.value) <= 1e-6


def test_euler_route_error_is_infinite_at_one():
    res = field_distance_euler(RATIONALS, Q5, a=1.0, prime_bound=1000,
                               cfg=MetricConfig(gamma=1.0, grid_points=8))
    assert math.isinf(res.error_estimate) or res.argmax_s > 1.0


# --- primorials ---------------------------------------------------------------


def test_primorial_rows():
    rows = primorial_experiment(4, tol=1e-8)
    assert [r.d for r in rows] == [2, 6, 30, 210]
    assert [r.discriminant for r in rows] == [8, 24, 120, 840]
    assert abs(rows[0].l_value - math.log(1 + math.sqrt(2)) / math.sqrt(2)) <= 1e-8
    for r in rows:
        assert abs(r.l_value - oracles.l_one_logsine(r.discriminant)) <= r.error_bound + 1e-12


def test_primorial_cap():
    with pytest.raises(ResourceError):
        primorial_experiment(7, max_discriminant=10 ** 5)
    with pytest.raises(DomainError):
        primorial_experiment(0)
