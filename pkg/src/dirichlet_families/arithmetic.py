"""
Real quadratic fields, their Dedekind zeta functions and L-functions.

For ``K = Q(sqrt(D))`` with fundamental discriminant ``Delta`` the Dedekind
zeta function factors as ``zeta_K(s) = zeta(s) L(chi_Delta, s)``, where
``chi_Delta`` is the Kronecker symbol ``(Delta / .)``.  Ramified primes are
exactly the divisors of ``Delta``, which also settles the prime 2.

The distance between two fields

    d(K1, K2) = sup_{1 <= s <= 1+a} | log(zeta_K1(s) / zeta_K2(s)) |

is computed from L-values for quadratic and rational fields, so the common
pole of ``zeta`` at ``s = 1`` cancels before anything is evaluated.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List, Optional, Union

import numpy as np

from .errors import DomainError, ResourceError
from .zeta_metric import DistanceResult, MetricConfig, sup_abs

__all__ = [
    "QuadraticField",
    "Rationals",
    "RATIONALS",
    "SplittingType",
    "LocalFactor",
    "LValue",
    "PrimorialRow",
    "kronecker_symbol",
    "character_table",
    "is_prime",
    "primes_up_to",
    "splitting_type",
    "local_factor",
    "ideal_count",
    "prime_ideal_count",
    "l_function_eval",
    "dedekind_zeta_eval",
    "field_distance",
    "field_distance_euler",
    "primorial_experiment",
]


# ---------------------------------------------------------------------------
# elementary number theory
# ---------------------------------------------------------------------------


def primes_up_to(n: int) -> np.ndarray:
    """All primes ``<= n`` (sieve of Eratosthenes)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(math.isqrt(n)) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        if n % f == 0:
            n //= f
        f += 1
    return True


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol ``(a / n)`` for positive ``n``."""
    if n == 0:
        raise DomainError("kronecker_symbol is evaluated at positive n only")
    if n < 0:
        raise DomainError("kronecker_symbol needs n > 0")
    a, n = int(a), int(n)
    result = 1
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        while n % 2 == 0:
            n //= 2
            if a % 8 in (3, 5):
                result = -result
    # Jacobi symbol (a / n) for odd n
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticField:
    """Real quadratic field ``Q(sqrt(d))`` for squarefree ``d > 1``."""

    d: int

    def __post_init__(self):
        if int(self.d) != self.d or self.d <= 1:
            raise DomainError("QuadraticField needs an integer d > 1")
        if not _is_squarefree(int(self.d)):
            raise DomainError(f"{self.d} is not squarefree")
        object.__setattr__(self, "d", int(self.d))

    @property
    def discriminant(self) -> int:
        return self.d if self.d % 4 == 1 else 4 * self.d

    def __str__(self):
        return f"Q(sqrt({self.d}))"


@dataclass(frozen=True)
class Rationals:
    """The field of rational numbers (trivial character, discriminant 1)."""

    @property
    def discriminant(self) -> int:
        return 1

    def __str__(self):
        return "Q"


RATIONALS = Rationals()
Field = Union[QuadraticField, Rationals]


def _check_field(k):
    if not isinstance(k, (QuadraticField, Rationals)):
        raise DomainError(f"unsupported field {k!r}; only Q and real quadratic fields")
    return k


class SplittingType(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


def splitting_type(p: int, k: QuadraticField) -> SplittingType:
    """How the rational prime ``p`` decomposes in ``k``."""
    if not is_prime(int(p)):
        raise DomainError(f"{p} is not prime")
    _check_field(k)
    if isinstance(k, Rationals):
        raise DomainError("splitting type is defined for quadratic fields")
    chi = kronecker_symbol(k.discriminant, p)
    if chi == 0:
        return SplittingType.RAMIFIED
    return SplittingType.SPLIT if chi == 1 else SplittingType.INERT


@dataclass(frozen=True)
class LocalFactor:
    """Euler factor of ``zeta_K`` at ``p`` as a function of ``s``."""

    p: int
    kind: Optional[SplittingType]

    def __call__(self, s):
        x = float(self.p) ** (-s)
        if self.kind is None:
            return 1.0 / (1.0 - x)
        if self.kind is SplittingType.SPLIT:
            return 1.0 / (1.0 - x) ** 2
        if self.kind is SplittingType.INERT:
            return 1.0 / (1.0 - x * x)
        return 1.0 / (1.0 - x)


def local_factor(k: Field, p: int) -> LocalFactor:
    _check_field(k)
    if isinstance(k, Rationals):
        if not is_prime(int(p)):
            raise DomainError(f"{p} is not prime")
        return LocalFactor(int(p), None)
    return LocalFactor(int(p), splitting_type(p, k))


def ideal_count(k: Field, p: int, f: int) -> int:
    """Number of ideals of norm ``p**f``.

    This is the coefficient of ``x**f`` in the local factor written as a
    power series in ``x = p**(-s)``.
    """
    if f < 1:
        raise DomainError("f must be >= 1")
    kind = local_factor(k, p).kind
    if kind is None or kind is SplittingType.RAMIFIED:
        return 1
    if kind is SplittingType.SPLIT:
        return f + 1
    return 1 if f % 2 == 0 else 0


def prime_ideal_count(k: Field, p: int, f: int) -> int:
    """Number of prime ideals of norm ``p**f``.

    These are the counts for which ``log zeta_K(s) = -sum_{p,f} c(p,f)
    log(1 - p**(-fs))`` holds.
    """
    if f < 1:
        raise DomainError("f must be >= 1")
    kind = local_factor(k, p).kind
    if kind is SplittingType.SPLIT:
        return 2 if f == 1 else 0
    if kind is SplittingType.INERT:
        return 1 if f == 2 else 0
    return 1 if f == 1 else 0


# ---------------------------------------------------------------------------
# character sums and L-values
# ---------------------------------------------------------------------------


def character_table(delta: int) -> np.ndarray:
    """``chi_Delta(n)`` for ``n = 0 .. |Delta| - 1`` as an ``int8`` array.

    Built multiplicatively from values at primes (Euler's criterion, vectorised)
    and a smallest-prime-factor sieve.
    """
    m = abs(int(delta))
    if m < 1:
        raise DomainError("discriminant must be nonzero")
    chi = np.zeros(m, dtype=np.int8)
    if m == 1:
        return np.ones(1, dtype=np.int8)
    chi[1] = 1
    spf = np.zeros(m, dtype=np.int64)
    for p in range(2, int(math.isqrt(m - 1)) + 1):
        if spf[p] == 0:
            block = spf[p * p::p]
            block[block == 0] = p
    primes = np.flatnonzero(spf[2:] == 0) + 2
    spf[primes] = primes

    odd = primes[primes > 2]
    vals = _pow_mod(delta % odd, (odd - 1) // 2, odd)
    chi_p = np.where(vals == 1, 1, np.where(vals == 0, 0, -1)).astype(np.int8)
    chi[odd] = chi_p
    if m > 2:
        chi[2] = kronecker_symbol(delta, 2)

    # n // spf(n) <= n / 2, so each dyadic block only needs earlier blocks
    lo = 4
    while lo < m:
        hi = min(2 * lo, m)
        n = np.arange(lo, hi)
        comp = n[spf[n] != n]
        chi[comp] = chi[spf[comp]] * chi[comp // spf[comp]]
        lo = hi
    return chi


def _pow_mod(base, exp, mod):
    base = base.astype(np.int64) % mod
    exp = exp.astype(np.int64).copy()
    out = np.ones_like(base)
    while np.any(exp > 0):
        odd = (exp & 1) == 1
        out[odd] = (out[odd] * base[odd]) % mod[odd]
        base = (base * base) % mod
        exp >>= 1
    return out


@dataclass(frozen=True)
class LValue:
    """An L-value with a rigorous bound on the truncation error."""

    value: float
    error_bound: float
    terms_used: int


def _abel_constants(chi: np.ndarray):
    # A(n): partial character sums over one period; mean A_bar; B the partial
    # sums of A - A_bar.  Both A and B are periodic when the full-period sum
    # of chi vanishes.
    a = np.cumsum(chi[1:].astype(np.int64))
    a = np.concatenate([a, [0]])            # A(1..m-1), A(m) = A(0) = 0
    a_bar = float(a.mean())
    b = np.cumsum(a - a_bar)
    b_range = float(b.max() - min(b.min(), 0.0))
    return a, a_bar, b_range


def l_function_eval(k: QuadraticField, s: float, tol: float = 1e-10,
                    max_terms: int = 50_000_000, chi: Optional[np.ndarray] = None) -> LValue:
    """``L(chi_Delta, s)`` for real ``s >= 1``.

    The series ``sum chi(n) n**(-s)`` is summed to ``N`` and the tail is
    handled by two rounds of summation by parts: the leading correction
    ``(A_bar - A(N)) (N+1)**(-s)`` is added, and the remainder is bounded by
    ``range(B) * s * (N+1)**(-s-1)``.
    """
    _check_field(k)
    if isinstance(k, Rationals):
        raise DomainError("L(chi, s) is defined here for nonprincipal characters only")
    s = float(s)
    if s < 1:
        raise DomainError("l_function_eval needs s >= 1")
    if not tol > 0:
        raise DomainError("tol must be positive")
    delta = k.discriminant
    if chi is None:
        chi = character_table(delta)
    a, a_bar, b_range = _abel_constants(chi)

    chunk = max(delta, 1 << 20) // delta * delta

    def bound_at(m):
        # analytic remainder plus rounding: pairwise-summation depth times
        # sum |chi(n)| n**-s <= 1 + log m
        depth = math.log2(min(m, chunk)) + m / chunk + 3
        return (b_range * s * (m + 1.0) ** (-s - 1.0)
                + 1.2e-16 * depth * (1.0 + math.log(m)))

    n_needed = (b_range * s / tol) ** (1.0 / (s + 1.0))
    n = int(min(max(math.ceil(n_needed), delta), max_terms))
    while bound_at(n) > tol and n < max_terms:
        n = int(min(max_terms, math.ceil(n * 1.05) + 1))
    bound = bound_at(n)
    if bound > tol:
        raise ResourceError(f"L(chi_{delta}, {s}) to {tol} needs more than {max_terms} terms",
                            bound)

    total = 0.0
    for start in range(1, n + 1, chunk):
        stop = min(start + chunk, n + 1)
        idx = np.arange(start, stop)
        total += float(np.sum(chi[idx % delta] * idx.astype(float) ** (-s)))
    a_n = float(a[(n % delta) - 1]) if n % delta else 0.0
    total += (a_bar - a_n) * (n + 1.0) ** (-s)
    return LValue(total, bound, n)


@dataclass(frozen=True)
class DedekindValue:
    value: float
    error_bound: float
    prime_bound: int


def _prime_tail_log_bound(prime_bound: int, s: float, factors: int) -> float:
    # |sum_{p > P} log(local factor)| <= factors * sum_{n > P} n^-s / (1 - p0^-s)
    p0 = max(2, prime_bound + 1)
    head = (prime_bound + 0.5) ** (1 - s) / (s - 1)
    return factors * head / (1 - p0 ** (-s))


def dedekind_zeta_eval(k: Field, s: float, prime_bound: int,
                       tol: Optional[float] = None) -> DedekindValue:
    """Euler product of ``zeta_K`` over primes ``<= prime_bound``.

    The error bound compares the truncated product with the full one through
    ``zeta_K = zeta * L`` and the tail of ``sum n**(-s)``.
    """
    _check_field(k)
    s = float(s)
    if s <= 1:
        raise DomainError("dedekind_zeta_eval needs s > 1")
    primes = primes_up_to(int(prime_bound))
    x = primes.astype(float) ** (-s)
    if isinstance(k, Rationals):
        chi_p = np.zeros(primes.size)
        factors = 1
    else:
        chi_p = np.array([kronecker_symbol(k.discriminant, int(p)) for p in primes],
                         dtype=float)
        factors = 2
    log_val = -np.sum(np.log1p(-x))
    if factors == 2:
        log_val -= np.sum(np.log1p(-chi_p * x))
    value = math.exp(log_val)
    eta = _prime_tail_log_bound(int(prime_bound), s, factors)
    err = value * math.expm1(eta) if eta < 700 else math.inf
    if tol is not None and err > tol:
        raise ResourceError(f"prime bound {prime_bound} too small for tol {tol}", err)
    return DedekindValue(value, err, int(prime_bound))


# ---------------------------------------------------------------------------
# distances
# ---------------------------------------------------------------------------


def _log_l_function(k: Field, tol: float):
    if isinstance(k, Rationals):
        return lambda s: (0.0, 0.0)
    chi = character_table(k.discriminant)

    def f(s):
        lv = l_function_eval(k, s, tol, chi=chi)
        if lv.value <= lv.error_bound:
            raise DomainError(f"L-value indistinguishable from 0 at s = {s}")
        return math.log(lv.value), lv.error_bound / (lv.value - lv.error_bound)
    return f


def field_distance(k1: Field, k2: Field, a: float = 1.0,
                   cfg: Optional[MetricConfig] = None, guard: float = 0.0) -> DistanceResult:
    """``sup |log(zeta_K1(s) / zeta_K2(s))|`` over ``[1 + guard, 1 + a]``.

    Both ``zeta_K`` share the factor ``zeta(s)``, so the ratio is the ratio of
    L-values and the pole at ``s = 1`` never enters; ``guard`` may be 0.
    """
    _check_field(k1)
    _check_field(k2)
    if not a > 0:
        raise DomainError("a must be positive")
    if not 0 <= guard < a:
        raise DomainError("guard must lie in [0, a)")
    cfg = cfg or MetricConfig(gamma=1.0, width=a, eval_tol=1e-11)
    f1 = _log_l_function(k1, cfg.eval_tol)
    f2 = _log_l_function(k2, cfg.eval_tol)

    def log_ratio(s):
        l1, e1 = f1(s)
        l2, e2 = f2(s)
        return l1 - l2, e1 + e2

    return sup_abs(log_ratio, 1.0 + guard, 1.0 + a, cfg.grid_points, cfg.refine_tol)


def field_distance_euler(k1: Field, k2: Field, a: float = 1.0, prime_bound: int = 10_000,
                         cfg: Optional[MetricConfig] = None, lower: float = 1.0,
                         max_power: int = 64) -> DistanceResult:
    """Distance from truncated Euler products over primes ``<= prime_bound``.

    Evaluates ``|sum_{p <= P, f} (c_K1(p,f) - c_K2(p,f)) log(1 - p**(-f s))|``
    with ``c_K`` the prime-ideal counts, on ``[lower, 1 + a]``.  The reported
    error is the worst-case prime-tail bound, which is infinite at ``s = 1``.
    """
    _check_field(k1)
    _check_field(k2)
    if not 1.0 <= lower < 1.0 + a:
        raise DomainError("need 1 <= lower < 1 + a")
    cfg = cfg or MetricConfig(gamma=lower, width=1.0 + a - lower)
    primes = primes_up_to(int(prime_bound))
    pairs = []
    for p in primes:
        for f in (1, 2):
            c = prime_ideal_count(k1, int(p), f) - prime_ideal_count(k2, int(p), f)
            if c:
                pairs.append((float(p) ** f, c))
    norms = np.array([n for n, _ in pairs], dtype=float)
    weights = np.array([c for _, c in pairs], dtype=float)
    factors = sum(0 if isinstance(k, Rationals) else 1 for k in (k1, k2))

    def route(s):
        v = float(np.sum(weights * np.log1p(-norms ** (-s)))) if norms.size else 0.0
        err = _prime_tail_log_bound(int(prime_bound), s, factors) if s > 1 else math.inf
        return v, err

    return sup_abs(route, lower, 1.0 + a, cfg.grid_points, cfg.refine_tol)


# ---------------------------------------------------------------------------
# primorial experiment
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimorialRow:
    i: int
    d: int
    discriminant: int
    l_value: float
    error_bound: float


def primorial_experiment(i_max: int, tol: float = 1e-6,
                         max_discriminant: int = 10 ** 8) -> List[PrimorialRow]:
    """``L(chi_{D_i}, 1)`` for the primorials ``D_i = p_1 * ... * p_i``."""
    if i_max < 1:
        raise DomainError("i_max must be >= 1")
    primes = []
    p = 1
    while len(primes) < i_max:
        p += 1
        if is_prime(p):
            primes.append(p)
    rows = []
    d = 1
    for i, p in enumerate(primes, start=1):
        d *= p
        field = QuadraticField(d)
        if field.discriminant > max_discriminant:
            raise ResourceError(f"discriminant {field.discriminant} of D_{i} exceeds the "
                                f"cap {max_discriminant}")
        lv = l_function_eval(field, 1.0, tol)
        rows.append(PrimorialRow(i, d, field.discriminant, lv.value, lv.error_bound))
    return rows
