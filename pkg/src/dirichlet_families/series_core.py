"""
General Dirichlet series ``D(s) = sum_nu a_nu exp(-s mu_nu)``.

A series stores finitely many exponent/coefficient pairs together with an
optional tail model describing the terms that were not stored.  Evaluation
picks the shortest prefix whose omitted part is provably (or, without a tail
model, heuristically) below a requested tolerance.

Three tail models are supported:

``PowerTail``
    ``|a_nu| <= C nu**p`` and ``mu_nu >= q log(nu) + offset`` beyond the
    stored terms.  Gives a rigorous integral bound.
``GeometricTail``
    ``mu_{nu+1} - mu_nu >= gap`` and ``|a_nu| <= C`` beyond the stored terms.
``QuadraticTail``
    Every term has the closed form
    ``(slope*y + intercept) * (scale*(y**2 - eps))**(-s)`` with
    ``y = nu + shift``.  The tail is then summed through Hurwitz zeta values
    instead of merely bounded, which is what makes slowly convergent
    spectral series (circle at ``s = 0.75``) usable to ``1e-8``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np
from scipy import special

from .errors import DomainError, ResourceError

__all__ = [
    "PowerTail",
    "GeometricTail",
    "QuadraticTail",
    "GeneralDirichletSeries",
    "EvalResult",
    "evaluate",
    "evaluate_derivative",
    "partial_sum",
    "truncation_bound",
    "abscissa_estimate",
    "riemann_zeta",
    "hurwitz_zeta",
    "classical_series",
    "series_difference",
]

_EM_TERMS = 14
_BERNOULLI = special.bernoulli(2 * _EM_TERMS + 2)


def hurwitz_zeta(s, q: float, terms: int = _EM_TERMS) -> Tuple[complex, float]:
    """Hurwitz zeta ``sum_{n>=0} (n+q)**(-s)`` by Euler-Maclaurin summation.

    Works for complex ``s != 1`` (through analytic continuation for
    ``Re(s) <= 1``) and real ``q > 0``.

    Returns
    -------
    value, bound
        The value and a bound on the Euler-Maclaurin remainder.  The value is
        a Python ``float`` when ``s`` is real.
    """
    if q <= 0:
        raise DomainError(f"hurwitz_zeta needs q > 0, got {q}")
    if s == 1:
        raise DomainError("hurwitz_zeta has a pole at s = 1")
    real = not isinstance(s, complex) or s.imag == 0
    s = float(s.real) if real and isinstance(s, complex) else s
    sigma = s.real if isinstance(s, complex) else s
    if sigma <= -(2 * terms + 1):
        raise DomainError("Re(s) too negative for the Euler-Maclaurin expansion")

    # push the expansion point far enough out that the asymptotic series
    # decays like (|s| + 2k) / (2 pi a)
    m = max(0, int(math.ceil(12 + abs(s) - q)))
    n = np.arange(m) + q
    head = np.sum(n ** (-s)) if m else 0.0
    a = m + q
    a_pow = a ** (-s)
    value = head + a * a_pow / (s - 1) + a_pow / 2
    poch = s
    apow = a_pow / a
    last = 0.0
    for k in range(1, terms + 2):
        term = _BERNOULLI[2 * k] / math.factorial(2 * k) * poch * apow
        if k == terms + 1:
            last = abs(term)
            break
        value += term
        poch *= (s + 2 * k - 1) * (s + 2 * k)
        apow /= a * a
    bound = last * abs(s + 2 * terms + 1) / (sigma + 2 * terms + 1)
    bound += 1e-16 * abs(value) * (m + 4)
    if real:
        value = float(np.real(value))
    return value, float(bound)


def riemann_zeta(s: float, tol: float = 1e-12) -> float:
    """Riemann zeta function for real ``s > 0.5``."""
    if tol <= 0:
        raise DomainError("tol must be positive")
    s = float(s)
    if s <= 0.5:
        raise DomainError(f"riemann_zeta is only provided for s > 0.5, got {s}")
    if s == 1.0:
        raise DomainError("riemann_zeta has a pole at s = 1")
    value, bound = hurwitz_zeta(s, 1.0)
    if bound > tol:
        raise ResourceError(f"riemann_zeta({s}) cannot reach tol={tol}", bound)
    return value


# ---------------------------------------------------------------------------
# tail models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerTail:
    """Bound ``|a_nu| <= C nu**p`` with ``mu_nu >= q log(nu) + offset``.

    ``heuristic`` marks parameters fitted from data rather than proven.
    """

    C: float
    p: float
    q: float
    offset: float = 0.0
    heuristic: bool = False
    kind = "power"

    def bound(self, n: int, sigma: float, k: int = 0) -> float:
        """Bound on ``sum_{nu > n} |a_nu| mu_nu**k exp(-sigma mu_nu)``."""
        if self.C == 0:
            return 0.0
        beta = self.q * sigma - self.p - 1.0
        if sigma <= 0 or beta <= 0 or n < 1:
            return math.inf
        log_pref = math.log(self.C) - sigma * self.offset
        if k == 0:
            # x**(p - q sigma) is convex, so each term is at most its
            # integral over [nu - 1/2, nu + 1/2]
            return math.exp(log_pref - beta * math.log(n + 0.5)) / beta
        v_n = self.q * math.log(n) + self.offset
        # both the mu-monotonicity and the x-monotonicity of the integrand
        # must hold from n on for the integral comparison
        if v_n < k / sigma or (beta + 1.0) * v_n <= k * self.q:
            return math.inf
        z = beta * v_n / self.q
        tail = special.gammaincc(k + 1, z)
        if tail == 0.0:
            return 0.0
        log_val = (log_pref - math.log(self.q) + beta * self.offset / self.q
                   + (k + 1) * math.log(self.q / beta)
                   + special.gammaln(k + 1) + math.log(tail))
        return math.exp(log_val)

    def to_dict(self):
        return {"kind": "power", "C": self.C, "p": self.p, "q": self.q,
                "offset": self.offset, "heuristic": self.heuristic}


@dataclass(frozen=True)
class GeometricTail:
    """Bound for exponents spaced by at least ``gap`` with ``|a_nu| <= C``."""

    C: float
    gap: float
    heuristic: bool = False
    kind = "geometric"

    def bound_after(self, last_exponent: float, sigma: float, k: int = 0) -> float:
        if self.C == 0:
            return 0.0
        if sigma <= 0 or self.gap <= 0:
            return math.inf
        if k == 0:
            r = math.exp(-sigma * self.gap)
            return self.C * math.exp(-sigma * last_exponent) * r / (1 - r)
        if last_exponent < k / sigma or last_exponent <= 0:
            return math.inf
        tail = special.gammaincc(k + 1, sigma * last_exponent)
        if tail == 0.0:
            return 0.0
        return self.C * math.exp(special.gammaln(k + 1) + math.log(tail)
                                 - (k + 1) * math.log(sigma)) / self.gap

    def to_dict(self):
        return {"kind": "geometric", "C": self.C, "gap": self.gap,
                "heuristic": self.heuristic}


@dataclass(frozen=True)
class QuadraticTail:
    """Closed-form terms ``(slope*y + intercept) * (scale*(y**2 - eps))**(-s)``.

    ``y = nu + shift`` where ``nu`` is the 1-based index of the term.  The
    circle, sphere and real projective plane spectra all have this shape.
    The formula is only claimed for indices ``nu > start``.  Requires
    ``shift >= 0`` and ``0 <= eps <= shift**2`` so that
    ``y**2 - eps >= nu**2``.
    """

    scale: float
    shift: float
    eps: float
    slope: float
    intercept: float
    heuristic: bool = False
    start: int = 0
    kind = "quadratic"

    def __post_init__(self):
        if self.scale <= 0 or self.shift < 0 or not 0 <= self.eps <= self.shift ** 2:
            raise DomainError("QuadraticTail needs scale > 0, shift >= 0, "
                              "0 <= eps <= shift**2")

    def abscissa(self) -> float:
        return 1.0 if self.slope != 0 else 0.5

    def term(self, nu, s):
        y = np.asarray(nu, dtype=float) + self.shift
        return (self.slope * y + self.intercept) * (self.scale * (y * y - self.eps)) ** (-s)

    def tail(self, n: int, s) -> Tuple[complex, float]:
        """Sum of the terms with index ``> n`` and a bound on its error."""
        if n < self.start:
            raise DomainError(f"closed form only holds beyond index {self.start}")
        sigma = s.real if isinstance(s, complex) else float(s)
        if sigma <= self.abscissa():
            raise DomainError("QuadraticTail summed at or left of its abscissa")
        q = n + 1 + self.shift
        r = self.eps / (q * q)
        jmax = 0 if self.eps == 0 else int(max(4, math.ceil(abs(s)))) + 2
        prefactor = self.scale ** (-s)
        total = 0.0
        err = 0.0
        coeff = 1.0
        for j in range(jmax + 1):
            if j:
                coeff *= (s + j - 1) / j * self.eps
            part = 0.0
            if self.slope:
                z, b = hurwitz_zeta(2 * s + 2 * j - 1, q)
                part += self.slope * z
                err += abs(coeff * self.slope) * b
            if self.intercept:
                z, b = hurwitz_zeta(2 * s + 2 * j, q)
                part += self.intercept * z
                err += abs(coeff * self.intercept) * b
            total += coeff * part
        if self.eps:
            # remainder of the binomial series in eps / y**2, dominated by
            # a geometric series from the first omitted coefficient
            rho = max(1.0, (abs(s) + jmax + 1) / (jmax + 2))
            first = abs(_poch(s, jmax + 1)) / math.factorial(jmax + 1) * r ** (jmax + 1)
            majorant = 0.0
            if self.slope:
                majorant += abs(self.slope) * hurwitz_zeta(2 * sigma - 1, q)[0]
            if self.intercept:
                majorant += abs(self.intercept) * hurwitz_zeta(2 * sigma, q)[0]
            err += first / (1 - rho * r) * majorant
        value = prefactor * total
        err *= self.scale ** (-sigma)
        if not isinstance(s, complex):
            value = float(np.real(value))
        return value, float(err)

    def power_bound(self) -> PowerTail:
        """A ``PowerTail`` majorant of the same terms."""
        c = abs(self.slope) * (1 + self.shift) + abs(self.intercept)
        return PowerTail(C=c, p=1.0 if self.slope else 0.0, q=2.0,
                         offset=math.log(self.scale), heuristic=self.heuristic)

    def to_dict(self):
        return {"kind": "quadratic", "scale": self.scale, "shift": self.shift,
                "eps": self.eps, "slope": self.slope, "intercept": self.intercept,
                "heuristic": self.heuristic, "start": self.start}


def _poch(s, n):
    out = 1.0
    for j in range(n):
        out *= s + j
    return out


TailModel = Union[PowerTail, GeometricTail, QuadraticTail]


# ---------------------------------------------------------------------------
# the series type
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GeneralDirichletSeries:
    """Finitely stored general Dirichlet series.

    Parameters
    ----------
    exponents : array_like of float
        Strictly increasing exponents ``mu_nu``.
    coefficients : array_like of complex
        Coefficients ``a_nu``, same length as ``exponents``.
    abscissa : float
        Declared abscissa of absolute convergence; evaluation requires
        ``Re(s) > abscissa``.
    tail_model : PowerTail, GeometricTail, QuadraticTail or None
        Description of the unstored terms.  ``None`` means the stored terms
        are all there is as far as bounds are concerned, and reported
        truncation bounds are heuristic.
    """

    exponents: np.ndarray
    coefficients: np.ndarray
    abscissa: float
    tail_model: Optional[TailModel] = None

    def __post_init__(self):
        mu = np.array(self.exponents, dtype=float).ravel()
        a = np.array(self.coefficients, dtype=complex).ravel()
        if mu.size == 0:
            raise DomainError("a series needs at least one term")
        if mu.size != a.size:
            raise DomainError(f"{mu.size} exponents but {a.size} coefficients")
        if not np.all(np.isfinite(mu)) or not np.all(np.isfinite(a)):
            raise DomainError("exponents and coefficients must be finite")
        bad = np.flatnonzero(np.diff(mu) <= 0)
        if bad.size:
            raise DomainError(f"exponents not strictly increasing at index {bad[0] + 1}")
        if not math.isfinite(self.abscissa):
            raise DomainError("declared abscissa must be finite")
        mu.flags.writeable = False
        a.flags.writeable = False
        object.__setattr__(self, "exponents", mu)
        object.__setattr__(self, "coefficients", a)
        object.__setattr__(self, "abscissa", float(self.abscissa))

    def __len__(self):
        return self.exponents.size

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.coefficients.imag == 0))

    def truncated(self, n: int) -> "GeneralDirichletSeries":
        """First ``n`` terms, without a tail model."""
        return GeneralDirichletSeries(self.exponents[:n], self.coefficients[:n],
                                      self.abscissa)

    def scaled(self, c) -> "GeneralDirichletSeries":
        """The series ``c * D``; tail models are dropped unless ``c == 1``."""
        model = self.tail_model if c == 1 else None
        return GeneralDirichletSeries(self.exponents, c * self.coefficients,
                                      self.abscissa, model)

    def __repr__(self):
        kind = self.tail_model.kind if self.tail_model is not None else "none"
        return (f"GeneralDirichletSeries(terms={len(self)}, abscissa={self.abscissa}, "
                f"tail={kind})")


def series_difference(a: GeneralDirichletSeries, b: GeneralDirichletSeries,
                      drop_below: float = 0.0) -> GeneralDirichletSeries:
    """``A - B`` on the merged exponent set, without tail models.

    Terms whose merged coefficient has modulus ``<= drop_below`` are removed;
    if all terms cancel a single zero term at the smallest exponent is kept.
    """
    mu = np.union1d(a.exponents, b.exponents)
    c = np.zeros(mu.size, dtype=complex)
    c[np.searchsorted(mu, a.exponents)] += a.coefficients
    c[np.searchsorted(mu, b.exponents)] -= b.coefficients
    keep = np.abs(c) > drop_below
    if not keep.any():
        keep[0] = True
    return GeneralDirichletSeries(mu[keep], c[keep], max(a.abscissa, b.abscissa))


@dataclass(frozen=True)
class EvalResult:
    """Value of a truncated evaluation.

    ``rigorous`` is true when ``truncation_bound`` is backed by a
    non-heuristic tail model; ``converged`` when the bound met the tolerance.
    """

    value: complex
    truncation_bound: float
    terms_used: int
    rigorous: bool
    converged: bool = True


def _check_s(series: GeneralDirichletSeries, s, tol):
    if tol is not None and not tol > 0:
        raise DomainError("tol must be positive")
    sigma = s.real if isinstance(s, complex) else float(s)
    if not sigma > series.abscissa:
        raise DomainError(f"Re(s) = {sigma} is not to the right of the declared "
                          f"abscissa {series.abscissa}")
    return sigma


def _terms(series, s, k):
    mu = series.exponents
    z = series.coefficients * np.exp(-s * mu)
    if k:
        z = z * (-mu) ** k
    return z


def _as_output(value, s, series):
    if not isinstance(s, complex) and series.is_real:
        return float(np.real(value))
    return complex(value)


def evaluate(series: GeneralDirichletSeries, s, tol: float = 1e-12) -> EvalResult:
    """Evaluate ``D(s)`` to within ``tol``.

    Uses the shortest stored prefix whose omitted tail is bounded by ``tol``.
    With a ``QuadraticTail`` the tail beyond the prefix is added in closed
    form and the reported bound is that of the closed-form remainder.
    """
    return _evaluate(series, s, tol, 0)


def evaluate_derivative(series: GeneralDirichletSeries, s, k: int,
                        tol: float = 1e-12) -> EvalResult:
    """k-th derivative ``sum a_nu (-mu_nu)**k exp(-s mu_nu)``."""
    if k < 0 or int(k) != k:
        raise DomainError("derivative order must be a nonnegative integer")
    return _evaluate(series, s, tol, int(k))


def _evaluate(series, s, tol, k):
    sigma = _check_s(series, s, tol)
    terms = _terms(series, s, k)
    n_stored = terms.size
    model = series.tail_model

    if isinstance(model, QuadraticTail) and k == 0:
        return _evaluate_closed_tail(series, model, s, tol, terms)

    bounds, rigorous = _bounds(series, terms, sigma, k)
    ok = np.flatnonzero(bounds[1:] <= tol)
    if ok.size:
        n = int(ok[0]) + 1
        converged = True
    else:
        n = n_stored
        converged = False
        rigorous = False if model is None else rigorous
    value = np.sum(terms[:n])
    return EvalResult(_as_output(value, s, series), float(bounds[n]), n,
                      rigorous and converged, converged)


def _bounds(series, terms, sigma, k):
    """``bounds[n]`` bounds everything past the first ``n`` terms."""
    model = series.tail_model
    mags = np.abs(terms)
    suffix = np.concatenate([np.cumsum(mags[::-1])[::-1], [0.0]])
    if model is None:
        return suffix + float(mags[-1]), False
    if isinstance(model, QuadraticTail):
        beyond = model.power_bound().bound(terms.size, sigma, k)
    elif isinstance(model, PowerTail):
        beyond = model.bound(terms.size, sigma, k)
    else:
        beyond = model.bound_after(float(series.exponents[-1]), sigma, k)
    return suffix + beyond, not model.heuristic


def truncation_bound(series: GeneralDirichletSeries, n: int, s, k: int = 0) -> float:
    """Bound on ``|sum_{nu > n} a_nu (-mu_nu)**k exp(-s mu_nu)|``.

    Stored terms past ``n`` are summed in absolute value; unstored ones come
    from the tail model (a last-term heuristic when there is none).
    """
    if not 0 <= n <= len(series):
        raise DomainError(f"n = {n} outside 0..{len(series)}")
    sigma = _check_s(series, s, None)
    bounds, _ = _bounds(series, _terms(series, s, k), sigma, k)
    return float(bounds[n])


def _evaluate_closed_tail(series, model, s, tol, terms):
    n_stored = terms.size
    if n_stored < model.start:
        raise DomainError("stored terms end before the closed-form tail begins")
    candidates = sorted({min(n_stored, max(c, model.start))
                         for c in (8, 32, 128, 512, 2048)} | {n_stored})
    best = None
    for n in candidates:
        tail, err = model.tail(n, s)
        best = (n, tail, err)
        if err <= tol:
            break
    n, tail, err = best
    value = np.sum(terms[:n]) + tail
    # accumulated rounding in the stored prefix
    err += 4e-16 * float(np.sum(np.abs(terms[:n])))
    converged = err <= tol
    return EvalResult(_as_output(value, s, series), float(err), n,
                      (not model.heuristic) and converged, converged)


def partial_sum(series: GeneralDirichletSeries, n: int, s):
    """Exact sum of the first ``n`` stored terms."""
    if not 1 <= n <= len(series):
        raise DomainError(f"n = {n} outside 1..{len(series)}")
    value = np.sum(_terms(series, s, 0)[:n])
    return _as_output(value, s, series)


def abscissa_estimate(series: GeneralDirichletSeries,
                      window: Tuple[int, int]) -> float:
    """Finite-sample proxy for ``limsup log(nu) / mu_nu``.

    ``window`` is an inclusive 1-based index range.  The result is the
    maximum of ``log(nu) / mu_nu`` over the window.  It estimates, and does
    not bound, the abscissa of convergence of series that diverge at 0.
    """
    lo, hi = int(window[0]), int(window[1])
    if not 1 <= lo <= hi <= len(series):
        raise DomainError(f"window {window} outside 1..{len(series)}")
    mu = series.exponents[lo - 1:hi]
    if np.any(mu <= 0):
        raise DomainError("abscissa_estimate needs positive exponents in the window")
    nu = np.arange(lo, hi + 1, dtype=float)
    return float(np.max(np.log(nu) / mu))


def classical_series(n_terms: int, coefficients=None, abscissa: float = 1.0,
                     tail_model: Optional[TailModel] = None) -> GeneralDirichletSeries:
    """Ordinary Dirichlet series ``sum a_n n**(-s)`` with ``mu_n = log n``."""
    n = np.arange(1, n_terms + 1, dtype=float)
    a = np.ones(n_terms) if coefficients is None else np.asarray(coefficients)
    return GeneralDirichletSeries(np.log(n), a, abscissa, tail_model)
