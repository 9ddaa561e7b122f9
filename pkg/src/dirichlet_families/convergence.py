"""
Convergence diagnostics for families of general Dirichlet series.

A family ``D_n(s) = sum_nu a_{n,nu} exp(-s mu_{n,nu})`` converges to a
candidate ``D`` in several equivalent ways when all members are spectral
(positive integer coefficients, ``mu = log lambda``):

* pointwise in a common half plane,
* eigenvalue columns ``lambda_{n,nu}`` converge, with unbounded columns
  dropping out and multiplicities matching the limit,
* ``lambda_n**(-gamma) -> lambda**(-gamma)`` in l1.

Everything here works on finite prefixes of a family.  Reports describe
trends; they are evidence, never a proof of convergence.

Vertical-line integrals
-----------------------
``perron_integral`` computes ``(1/2 pi i) int_{c-iT}^{c+iT} f(s) e^{xs} ds/s``;
for a Dirichlet series this tends to ``sum_{mu_nu <= x} a_nu`` with the term at
``mu_nu == x`` counted with weight 1/2.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np
from scipy import integrate as sp_integrate

from .errors import DomainError
from .quadrature import integrate, split_interval
from .series_core import (GeneralDirichletSeries, PowerTail, GeometricTail,
                          QuadraticTail, evaluate)
from .spectra import series_to_eigenvalues

__all__ = [
    "SeriesFamily",
    "L1Result",
    "ColumnLimits",
    "Verdict",
    "ConvergenceReport",
    "PerronConfig",
    "PerronResult",
    "l1_distance",
    "pointwise_check",
    "pointwise_l1_bound",
    "column_limits",
    "linf_coefficient_distance",
    "default_weight",
    "multiplicative_sup_norm",
    "haar_integral",
    "perron_integral",
    "perron_sum",
    "perron_reference",
    "window_sum",
    "family_report",
]


@dataclass(frozen=True, eq=False)
class SeriesFamily:
    """Members ``D_1 .. D_N`` and a limit candidate in a common half plane."""

    members: Sequence[GeneralDirichletSeries]
    limit: GeneralDirichletSeries
    common_abscissa: float

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise DomainError("a family needs at least one member")
        for i, d in enumerate(members + (self.limit,)):
            if d.abscissa > self.common_abscissa:
                raise DomainError(f"series {i} declares abscissa {d.abscissa} > "
                                  f"common abscissa {self.common_abscissa}")
        object.__setattr__(self, "members", members)

    def __len__(self):
        return len(self.members)


# ---------------------------------------------------------------------------
# l1 / pointwise / columns
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class L1Result:
    value: float
    error_bound: float


def _same_shape(m1, m2) -> bool:
    return (isinstance(m1, QuadraticTail) and isinstance(m2, QuadraticTail)
            and (m1.shift, m1.eps, m1.slope, m1.intercept)
            == (m2.shift, m2.eps, m2.slope, m2.intercept))


def _tail_mass(d: GeneralDirichletSeries, gamma: float) -> float:
    """Bound on ``sum lambda**(-gamma)`` over the unstored eigenvalues."""
    model = d.tail_model
    n = len(d)
    if model is None:
        return 0.0
    if isinstance(model, QuadraticTail):
        return abs(model.tail(n, gamma)[0])
    if isinstance(model, PowerTail):
        return model.bound(n, gamma)
    if isinstance(model, GeometricTail):
        return model.bound_after(float(d.exponents[-1]), gamma)
    raise DomainError(f"unknown tail model {model!r}")


def l1_distance(a: GeneralDirichletSeries, b: GeneralDirichletSeries,
                gamma: float) -> L1Result:
    """``sum_nu |lambda_{A,nu}**(-gamma) - lambda_{B,nu}**(-gamma)|``.

    Both series are expanded into nondecreasing eigenvalue lists (each
    exponent repeated by its integer coefficient) and paired by position.
    Stored eigenvalues without a partner are paired with the other side's
    tail.  When both tails are closed forms of the same shape differing only
    in scale (e.g. circles of different radii) the tail difference is summed
    exactly; otherwise it is bounded by the sum of both tail masses.
    """
    if gamma < max(a.abscissa, b.abscissa):
        raise DomainError("gamma must lie in the common half plane of convergence")
    ea = series_to_eigenvalues(a) ** (-gamma)
    eb = series_to_eigenvalues(b) ** (-gamma)
    n = min(ea.size, eb.size)
    value = float(np.sum(np.abs(ea[:n] - eb[:n])))
    extra_a, extra_b = ea[n:], eb[n:]
    value += float(np.sum(extra_a)) + float(np.sum(extra_b))

    ma, mb = a.tail_model, b.tail_model
    if ea.size == eb.size and len(a) == len(b) and _same_shape(ma, mb):
        unit = QuadraticTail(1.0, ma.shift, ma.eps, ma.slope, ma.intercept,
                             start=max(ma.start, mb.start))
        t, err = unit.tail(len(a), gamma)
        value += abs(ma.scale ** (-gamma) - mb.scale ** (-gamma)) * t
        bound = err * (ma.scale ** (-gamma) + mb.scale ** (-gamma))
    else:
        bound = _tail_mass(a, gamma) + _tail_mass(b, gamma)
    return L1Result(value, bound + 1e-15 * value)


def pointwise_check(fam: SeriesFamily, s_grid, tol: float = 1e-12) -> np.ndarray:
    """``max_s |D_n(s) - D(s)|`` over ``s_grid`` for each member.

    Each entry is accurate to ``2 * tol`` (two evaluations at tolerance
    ``tol``).
    """
    grid = [complex(s) if np.iscomplexobj(s) else float(s) for s in np.atleast_1d(s_grid)]
    for s in grid:
        if not np.real(s) > fam.common_abscissa:
            raise DomainError(f"grid point {s} outside Re(s) > {fam.common_abscissa}")
    ref = [evaluate(fam.limit, s, tol).value for s in grid]
    out = np.empty(len(fam))
    for i, d in enumerate(fam.members):
        out[i] = max(abs(evaluate(d, s, tol).value - r) for s, r in zip(grid, ref))
    return out


def pointwise_l1_bound(s: float, gamma: float, lambda_min: float) -> float:
    """Lipschitz factor linking the two criteria.

    For real ``s >= gamma`` and eigenvalues ``>= lambda_min``,
    ``|D_n(s) - D(s)| <= factor * l1_distance(D_n, D, gamma)``: the map
    ``u -> u**(s/gamma)`` has slope at most ``(s/gamma) u_max**(s/gamma - 1)``
    on ``[0, u_max]`` with ``u_max = lambda_min**(-gamma)``.  The factor is
    ``s/gamma`` when all eigenvalues are at least 1.
    """
    if s < gamma:
        raise DomainError("need s >= gamma")
    p = s / gamma
    u_max = max(1.0, lambda_min ** (-gamma))
    return p * u_max ** (p - 1.0)


@dataclass(frozen=True, eq=False)
class ColumnLimits:
    """Per-column limit estimates from the last members of a family.

    ``bounded[nu]`` is false for columns that keep growing past the
    threshold; ``multiplicity_ok`` compares the clustered bounded limits with
    the candidate's eigenvalues and multiplicities.
    """

    limits: np.ndarray
    spread: np.ndarray
    bounded: np.ndarray
    multiplicity_ok: bool
    clusters: List[tuple] = field(default_factory=list)


def _clusters(values, tol):
    out = []
    for v in values:
        if out and abs(v - out[-1][0]) <= tol * max(1.0, abs(v)):
            c, k = out[-1]
            out[-1] = (c, k + 1)
        else:
            out.append((float(v), 1))
    return out


def column_limits(fam: SeriesFamily, nu_max: int, tail_window: int = 8,
                  growth_threshold: float = 10.0, rtol: float = 0.05) -> ColumnLimits:
    """Estimate ``lim_n lambda_{n,nu}`` for ``nu = 1 .. nu_max``.

    The limit of a column is the mean over the last ``tail_window`` members
    and its spread the range there.  A column is flagged unbounded when it is
    increasing over the window and its largest value exceeds its smallest by
    more than ``growth_threshold``.
    """
    if nu_max < 1 or tail_window < 1:
        raise DomainError("nu_max and tail_window must be >= 1")
    expanded = [series_to_eigenvalues(d) for d in fam.members]
    if nu_max > min(e.size for e in expanded):
        raise DomainError(f"nu_max = {nu_max} exceeds the stored eigenvalues of a member")
    cols = np.array([e[:nu_max] for e in expanded])       # shape (members, nu_max)
    window = cols[-tail_window:]
    limits = window.mean(axis=0)
    spread = np.ptp(window, axis=0)
    increasing = np.all(np.diff(window, axis=0) > 0, axis=0) if len(window) > 1 \
        else np.zeros(nu_max, dtype=bool)
    growth = cols.max(axis=0) / cols.min(axis=0)
    bounded = ~(increasing & (growth > growth_threshold))

    ok = False
    clusters = []
    try:
        target = series_to_eigenvalues(fam.limit)
    except DomainError:
        target = None
    if target is not None and target.size >= nu_max:
        target = target[:nu_max]
        clusters = _clusters(np.sort(limits[bounded]), rtol)
        # unbounded columns leave the spectrum; the candidate is compared on
        # the number of bounded columns
        expected = _clusters(target[:int(bounded.sum())], 1e-12)
        ok = (len(clusters) == len(expected)
              and all(k1 == k2 and abs(c1 - c2) <= rtol * max(1.0, abs(c2))
                      for (c1, k1), (c2, k2) in zip(clusters, expected)))
    return ColumnLimits(limits, spread, bounded, bool(ok), clusters)


def linf_coefficient_distance(a: GeneralDirichletSeries, b: GeneralDirichletSeries,
                              sigma1: float):
    """``sup_nu |a_{A,nu} - a_{B,nu}| exp(-sigma1 mu_nu)`` for shared exponents.

    Returns ``(value, tail_bound)``: the sup over stored terms and a bound for
    the unstored terms (sum of both tail masses at ``sigma1``).
    """
    if a.exponents.size != b.exponents.size or not np.array_equal(a.exponents, b.exponents):
        raise DomainError("linf_coefficient_distance needs identical exponent lists")
    if not sigma1 > max(a.abscissa, b.abscissa):
        raise DomainError("sigma1 must exceed the abscissa")
    w = np.exp(-sigma1 * a.exponents)
    value = float(np.max(np.abs(a.coefficients - b.coefficients) * w))
    tails = 0.0
    for d in (a, b):
        m = d.tail_model
        if isinstance(m, QuadraticTail):
            tails += m.power_bound().bound(len(d), sigma1)
        elif isinstance(m, PowerTail):
            tails += m.bound(len(d), sigma1)
        elif isinstance(m, GeometricTail):
            tails += m.bound_after(float(d.exponents[-1]), sigma1)
    return value, tails


# ---------------------------------------------------------------------------
# multiplicative convergence and Perron integrals
# ---------------------------------------------------------------------------


def default_weight(t):
    """``|t| / (1 + t**2)``; its integral against ``dt/|t|`` is ``pi``."""
    t = np.asarray(t, dtype=float)
    return np.abs(t) / (1.0 + t * t)


def multiplicative_sup_norm(f, t_grid, g: Callable = default_weight,
                            underflow: float = 1e-300) -> float:
    """``max_t |f(t) / g(t)|`` over ``t_grid``.

    ``f`` is a callable of ``t`` or an array of samples on ``t_grid``.  Grid
    points where ``g`` underflows below ``underflow`` are skipped; ``g <= 0``
    anywhere else is an error.
    """
    t = np.asarray(t_grid, dtype=float)
    fv = np.asarray(f(t) if callable(f) else f)
    gv = np.asarray(g(t), dtype=float)
    if fv.shape != t.shape:
        raise DomainError("samples of f do not match the grid")
    if np.any(gv <= 0):
        raise DomainError("weight g must be strictly positive on the grid")
    keep = gv >= underflow
    if not keep.any():
        return 0.0
    return float(np.max(np.abs(fv[keep]) / gv[keep]))


def haar_integral(g: Callable = default_weight, limit: int = 200) -> float:
    """``int g(t) dt / |t|`` over the real line, warning if it looks infinite."""
    h = lambda t: float(g(np.array([t]))[0]) / abs(t)
    total = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for a, b in ((0, 1), (1, np.inf), (-1, 0), (-np.inf, -1)):
            v, err = sp_integrate.quad(h, a, b, limit=limit)
            total += v
            if not np.isfinite(v) or err > 1e-6 * max(1.0, abs(v)):
                total = math.inf
                break
    if not math.isfinite(total):
        warnings.warn("weight does not appear integrable for dt/|t|; the "
                      "multiplicative norm gives no control", RuntimeWarning, stacklevel=2)
    return total


@dataclass(frozen=True)
class PerronConfig:
    """Vertical line ``Re(s) = c``, truncation height ``T`` and tolerances."""

    c: float = 1.0
    T: float = 1e4
    quad_tol: float = 1e-6
    x_guard: float = 1e-3
    max_width: float = 1.0

    def __post_init__(self):
        if not (self.c > 0 and self.T > 0 and self.quad_tol > 0 and self.x_guard >= 0):
            raise DomainError("PerronConfig needs c > 0, T > 0, quad_tol > 0, x_guard >= 0")


@dataclass(frozen=True)
class PerronResult:
    value: complex
    quad_error: float
    near_exponent: bool = False


def perron_integral(f: Callable[[np.ndarray], np.ndarray], x: float, cfg: PerronConfig,
                    frequency: float = 0.0) -> PerronResult:
    """``(1 / 2 pi i) int_{c - iT}^{c + iT} f(s) e^{x s} ds / s``.

    ``f`` takes an array of complex ``s``.  ``frequency`` is the largest
    oscillation rate in ``t`` of ``f(c + it) e^{ixt}``; panels are kept
    narrower than ``pi / (2 frequency)``.
    """
    c, big_t = cfg.c, cfg.T
    width = cfg.max_width
    if frequency > 0:
        width = min(width, math.pi / (2 * frequency))
    breaks = [-big_t, -1.0, 1.0, big_t] if big_t > 1 else [-big_t, big_t]
    edges = split_interval(breaks, width)

    def integrand(t):
        s = c + 1j * t
        return f(s) * np.exp(x * s) / s

    value, err = integrate(integrand, edges, cfg.quad_tol * 2 * math.pi)
    return PerronResult(value / (2 * math.pi), err / (2 * math.pi))


def _series_on_line(d: GeneralDirichletSeries):
    mu = d.exponents
    a = d.coefficients

    def f(s):
        out = np.zeros(s.shape, dtype=complex)
        for lo in range(0, mu.size, 64):
            out += np.exp(-s[..., None] * mu[lo:lo + 64]) @ a[lo:lo + 64]
        return out
    return f


def perron_sum(d: GeneralDirichletSeries, x: float, cfg: Optional[PerronConfig] = None) -> PerronResult:
    """Perron integral of the stored terms of ``d`` at ``x``.

    Tends to ``sum_{mu_nu <= x} a_nu`` (half weight at equality) as
    ``cfg.T`` grows.  ``near_exponent`` is set when ``x`` lies within
    ``cfg.x_guard`` of an exponent without being equal to it, where the
    truncation error decays slowly.
    """
    cfg = cfg or PerronConfig()
    if not cfg.c > max(0.0, d.abscissa):
        raise DomainError("need c > max(0, abscissa)")
    gaps = np.abs(d.exponents - x)
    near = bool(np.any((gaps > 0) & (gaps < cfg.x_guard)))
    if near:
        warnings.warn(f"x = {x} is within {cfg.x_guard} of an exponent; Perron "
                      "truncation error decays slowly", RuntimeWarning, stacklevel=2)
    freq = float(np.max(gaps))
    res = perron_integral(_series_on_line(d), x, cfg, freq)
    return PerronResult(res.value, res.quad_error, near)


def perron_reference(d: GeneralDirichletSeries, x: float) -> complex:
    """``sum_{mu_nu < x} a_nu`` plus half of any coefficient with ``mu_nu == x``."""
    below = d.coefficients[d.exponents < x].sum()
    equal = d.coefficients[d.exponents == x].sum()
    return complex(below + 0.5 * equal)


def window_sum(d: GeneralDirichletSeries, ell: float, eps: float, via: str = "direct",
               cfg: Optional[PerronConfig] = None) -> complex:
    """Sum of the coefficients with exponents in ``(ell - eps, ell + eps)``."""
    if not eps > 0:
        raise DomainError("eps must be positive")
    if via == "direct":
        mask = (d.exponents > ell - eps) & (d.exponents < ell + eps)
        return complex(d.coefficients[mask].sum())
    if via == "perron":
        cfg = cfg or PerronConfig()
        edge_gap = np.min(np.abs(np.concatenate([d.exponents - (ell - eps),
                                                 d.exponents - (ell + eps)])))
        if edge_gap < cfg.x_guard:
            raise DomainError("window edge within x_guard of an exponent")
        hi = perron_sum(d, ell + eps, cfg).value
        lo = perron_sum(d, ell - eps, cfg).value
        return complex(hi - lo)
    raise DomainError(f"unknown route {via!r}")


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    label: str
    trends: dict

    CONVERGED = "converged"
    CONSISTENT = "consistent (i)<=>(iii)"
    DIVERGING = "inconsistent/diverging"


@dataclass(frozen=True, eq=False)
class ConvergenceReport:
    l1_distances: np.ndarray
    l1_errors: np.ndarray
    pointwise_distances: np.ndarray
    columns: Optional[ColumnLimits]
    verdict: Verdict

    def to_dict(self) -> dict:
        cols = self.columns
        return {
            "l1_distances": self.l1_distances.tolist(),
            "l1_errors": self.l1_errors.tolist(),
            "pointwise_distances": self.pointwise_distances.tolist(),
            "column_limits": None if cols is None else {
                "limits": cols.limits.tolist(),
                "spread": cols.spread.tolist(),
                "bounded": cols.bounded.tolist(),
                "multiplicity_ok": cols.multiplicity_ok,
            },
            "verdict": {"label": self.verdict.label, "trends": self.verdict.trends},
        }


def _trend(values, atol):
    v = np.asarray(values, dtype=float)
    if np.all(np.abs(v) <= atol):
        return "zero"
    if v.size < 2:
        return "undetermined"
    steps = np.diff(v)
    down = np.mean(steps <= atol)
    if down >= 0.8 and v[-1] <= 0.5 * np.max(v):
        return "decaying"
    return "not decaying"


def family_report(fam: SeriesFamily, s_grid, gamma: Optional[float] = None,
                  nu_max: int = 6, tail_window: int = 8, tol: float = 1e-12,
                  atol: float = 1e-10) -> ConvergenceReport:
    """Run the l1, pointwise and column criteria and compare their trends.

    The verdict is ``converged`` when every distance is zero,
    ``consistent (i)<=>(iii)`` when all criteria decay together with bounded
    columns and matching multiplicities, and ``inconsistent/diverging``
    otherwise.
    """
    gamma = fam.common_abscissa if gamma is None else gamma
    l1 = [l1_distance(d, fam.limit, gamma) for d in fam.members]
    l1_vals = np.array([r.value for r in l1])
    l1_errs = np.array([r.error_bound for r in l1])
    pw = pointwise_check(fam, s_grid, tol)
    window = min(tail_window, len(fam))
    cols = column_limits(fam, nu_max, window)
    trends = {"l1": _trend(l1_vals, atol), "pointwise": _trend(pw, atol),
              "columns": "bounded" if cols.bounded.all() else "unbounded",
              "multiplicities": "match" if cols.multiplicity_ok else "mismatch"}
    if trends["l1"] == "zero" and trends["pointwise"] == "zero":
        label = Verdict.CONVERGED
    elif (trends["l1"] in ("zero", "decaying") and trends["pointwise"] in ("zero", "decaying")
          and cols.multiplicity_ok):
        label = Verdict.CONSISTENT
    else:
        label = Verdict.DIVERGING
    return ConvergenceReport(l1_vals, l1_errs, pw, cols, Verdict(label, trends))
