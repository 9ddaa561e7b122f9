"""
Laplace-Stieltjes transforms and the weighted Lipschitz / Widder seminorms.

A Dirichlet series ``sum a_nu exp(-s mu_nu)`` is the Laplace-Stieltjes
transform ``int_0^inf e^{-st} dF(t)`` of the right-continuous step function
``F(t) = sum_{mu_nu <= t} a_nu``.  The transform maps

    ||F||_Lip,w = sup_{0 <= s < t} |F(t) - F(s)| / ((t - s) e^{w t})

isometrically onto

    ||D||_Wid,w = sup_{s > w, k >= 0} (s - w)**(k+1) / k! |D^(k)(s)|.

Both suprema are estimated from below on finite probe sets.  Step functions
are not Lipschitz, and a single exponential term has unbounded Widder
quotients, so each estimate carries a ``saturated`` flag meaning "still
growing at the probe limits".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import special

from .errors import DomainError
from .series_core import GeneralDirichletSeries, series_difference

__all__ = [
    "StepFunction",
    "PiecewiseLinearFunction",
    "NormEstimate",
    "step_from_series",
    "ls_transform_eval",
    "lip_norm_estimate",
    "wid_norm_estimate",
    "widder_quotient",
    "final_diagnostic",
]


@dataclass(frozen=True, eq=False)
class StepFunction:
    """``F(t) = sum_{t_j <= t} a_j`` (right-continuous, ``F = 0`` before the first jump)."""

    locations: np.ndarray
    sizes: np.ndarray

    def __post_init__(self):
        t = np.array(self.locations, dtype=float).ravel()
        a = np.array(self.sizes, dtype=float).ravel()
        if t.size != a.size:
            raise DomainError("locations and sizes differ in length")
        if np.any(t < 0):
            raise DomainError("jump locations must be >= 0")
        if np.any(np.diff(t) <= 0):
            raise DomainError("jump locations must be strictly increasing")
        t.flags.writeable = False
        a.flags.writeable = False
        object.__setattr__(self, "locations", t)
        object.__setattr__(self, "sizes", a)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        csum = np.concatenate([[0.0], np.cumsum(self.sizes)])
        return csum[np.searchsorted(self.locations, t, side="right")]

    def breakpoints(self) -> np.ndarray:
        return self.locations

    def __add__(self, other: "StepFunction") -> "StepFunction":
        t = np.union1d(self.locations, other.locations)
        a = np.zeros(t.size)
        a[np.searchsorted(t, self.locations)] += self.sizes
        a[np.searchsorted(t, other.locations)] += other.sizes
        return StepFunction(t, a)

    def __mul__(self, c: float) -> "StepFunction":
        return StepFunction(self.locations, c * self.sizes)

    __rmul__ = __mul__

    def __sub__(self, other: "StepFunction") -> "StepFunction":
        return self + (-1.0) * other


@dataclass(frozen=True, eq=False)
class PiecewiseLinearFunction:
    """Continuous piecewise-linear ``F`` with ``F(0) = 0``.

    ``breakpoints`` start at 0; ``slopes[i]`` applies on
    ``[breakpoints[i], breakpoints[i+1]]`` and ``tail_slope`` beyond the last
    breakpoint.
    """

    breakpoints: np.ndarray
    slopes: np.ndarray
    tail_slope: float = 0.0

    def __post_init__(self):
        b = np.array(self.breakpoints, dtype=float).ravel()
        m = np.array(self.slopes, dtype=float).ravel()
        if b.size < 2 or b[0] != 0.0:
            raise DomainError("breakpoints must start at 0 and have at least two entries")
        if np.any(np.diff(b) <= 0):
            raise DomainError("breakpoints must be strictly increasing")
        if m.size != b.size - 1:
            raise DomainError("need one slope per segment")
        b.flags.writeable = False
        m.flags.writeable = False
        object.__setattr__(self, "breakpoints", b)
        object.__setattr__(self, "slopes", m)

    @classmethod
    def from_samples(cls, t, values, tail_slope: float = 0.0) -> "PiecewiseLinearFunction":
        """Interpolate ``values`` at ``t`` (``t[0] = 0``, ``values[0] = 0``)."""
        t = np.asarray(t, dtype=float)
        v = np.asarray(values, dtype=float)
        if v[0] != 0:
            raise DomainError("F(0) must be 0")
        return cls(t, np.diff(v) / np.diff(t), tail_slope)

    @property
    def knot_values(self) -> np.ndarray:
        return np.concatenate([[0.0], np.cumsum(self.slopes * np.diff(self.breakpoints))])

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        b = self.breakpoints
        v = np.interp(t, b, self.knot_values)
        beyond = t > b[-1]
        return np.where(beyond, self.knot_values[-1] + self.tail_slope * (t - b[-1]), v)

    def __mul__(self, c: float) -> "PiecewiseLinearFunction":
        return PiecewiseLinearFunction(self.breakpoints, c * self.slopes, c * self.tail_slope)

    __rmul__ = __mul__


Function = Union[StepFunction, PiecewiseLinearFunction]


@dataclass(frozen=True)
class NormEstimate:
    """Lower estimate of a seminorm.

    ``saturated`` means the estimate was still growing at the probe limit
    (smallest pair spacing for Lip, largest ``k`` for Wid).
    """

    value: float
    saturated: bool
    probes_used: int
    argmax: Tuple[float, float] = (math.nan, math.nan)


def step_from_series(d: GeneralDirichletSeries, shift: float = 0.0) -> StepFunction:
    """Step function whose Laplace-Stieltjes transform is the stored part of ``d``.

    Jumps sit at ``mu_nu + shift``; a nonzero ``shift`` multiplies the
    transform by ``exp(-s * shift)``.
    """
    if not d.is_real:
        raise DomainError("step functions are real; coefficients must be real")
    t = d.exponents + shift
    if np.any(t < 0):
        raise DomainError("negative exponents: pass shift >= -min(mu)")
    return StepFunction(t, d.coefficients.real)


def ls_transform_eval(f: Function, s) -> complex:
    """``int_0^inf e^{-st} dF(t)`` in closed form.

    Finite step functions are entire in ``s``.  A piecewise-linear function
    with a nonzero ``tail_slope`` needs ``Re(s) > 0``.
    """
    if isinstance(f, StepFunction):
        val = np.sum(f.sizes * np.exp(-s * f.locations))
    elif isinstance(f, PiecewiseLinearFunction):
        b, m = f.breakpoints, f.slopes
        sigma = s.real if isinstance(s, complex) else float(s)
        if f.tail_slope and not sigma > 0:
            raise DomainError("transform of an unbounded ramp needs Re(s) > 0")
        if s == 0:
            val = np.sum(m * np.diff(b))
        else:
            e = np.exp(-s * b)
            val = np.sum(m * (e[:-1] - e[1:])) / s
            if f.tail_slope:
                val += f.tail_slope * e[-1] / s
    else:
        raise DomainError(f"unsupported function {type(f).__name__}")
    if isinstance(s, complex):
        return complex(val)
    return float(np.real(val))


# ---------------------------------------------------------------------------
# Lip
# ---------------------------------------------------------------------------


def _quotients(f, s, t, omega):
    return np.abs(f(t) - f(s)) / ((t - s) * np.exp(omega * t))


def _probe_pairs(keys, delta, pair_budget, rng, t_hi, window=8):
    pts = np.unique(np.concatenate([keys, keys - delta, keys + delta, [0.0]]))
    pts = pts[pts >= 0]
    n = pts.size
    if n <= 400:
        i, j = np.triu_indices(n, 1)
    else:
        # neighbouring probe points only; long-range pairs come from sampling
        i = np.concatenate([np.arange(n - k) for k in range(1, window + 1)])
        j = np.concatenate([np.arange(k, n) for k in range(1, window + 1)])
    s, t = pts[i], pts[j]
    u = rng.uniform(0.0, t_hi, size=(pair_budget, 2))
    s = np.concatenate([s, u.min(axis=1)])
    t = np.concatenate([t, u.max(axis=1)])
    keep = (t - s) >= delta * (1 - 1e-12)
    return s[keep], t[keep]


def lip_norm_estimate(f: Function, omega: float = 0.0, pair_budget: int = 2000,
                      delta_min: float = 1e-6, seed: int = 0) -> NormEstimate:
    """Lower estimate of ``||F||_Lip,omega``.

    Probes every pair of breakpoints / jump locations shifted by
    ``0, +-delta_min`` with spacing at least ``delta_min``, plus
    ``pair_budget`` random pairs.  The same probe construction at
    ``10 * delta_min`` decides ``saturated``: the estimate is flagged when
    shrinking the spacing by a decade still increased it by more than the
    weight ``exp(omega t)`` alone can explain.
    """
    if not delta_min > 0:
        raise DomainError("delta_min must be positive")
    keys = np.asarray(f.breakpoints(), dtype=float) if isinstance(f, StepFunction) \
        else f.breakpoints
    if keys.size == 0:
        return NormEstimate(0.0, False, 0)
    t_hi = float(keys[-1]) + 1.0

    def run(delta):
        rng = np.random.default_rng(seed)
        s, t = _probe_pairs(keys, delta, pair_budget, rng, t_hi)
        q = _quotients(f, s, t, omega)
        k = int(np.argmax(q))
        return float(q[k]), (float(s[k]), float(t[k])), q.size

    value, where, used = run(delta_min)
    coarse, _, used2 = run(10 * delta_min)
    # moving the right end by up to 10 * delta_min changes the weight by at
    # most exp(10 omega delta_min); growth beyond that signals a jump
    saturated = value > coarse * math.exp(10 * omega * delta_min) * (1 + 1e-9) + 1e-300
    return NormEstimate(value, bool(saturated), used + used2, where)


# ---------------------------------------------------------------------------
# Wid
# ---------------------------------------------------------------------------


def widder_quotient(d, s: float, k: int, omega: float = 0.0) -> float:
    """``(s - omega)**(k+1) / k! * |D^(k)(s)|``, computed in log space.

    ``d`` is a Dirichlet series (stored terms), a step function or a
    piecewise-linear function (through its transform).
    """
    if not s > omega:
        raise DomainError("need s > omega")
    if isinstance(d, GeneralDirichletSeries):
        d = _LogSpaceTerms(d.exponents, d.coefficients)
    elif isinstance(d, StepFunction):
        d = _LogSpaceTerms(d.locations, d.sizes.astype(complex))
    if isinstance(d, _LogSpaceTerms):
        return float(d.quotient(s, k, omega)[0])
    if isinstance(d, PiecewiseLinearFunction):
        return _pl_quotient(d, s, k, omega)
    raise DomainError(f"unsupported input {type(d).__name__}")


class _LogSpaceTerms:
    def __init__(self, mu, a):
        keep = np.abs(a) > 0
        self.mu = np.asarray(mu, dtype=float)[keep]
        self.a = np.asarray(a, dtype=complex)[keep]

    def quotient(self, s, k, omega):
        """Vectorised over ``s``."""
        s = np.atleast_1d(np.asarray(s, dtype=float))
        mu, a = self.mu, self.a
        if k > 0:
            live = mu != 0
            mu, a = mu[live], a[live]
        if mu.size == 0:
            return np.zeros(s.size)
        # log |a mu^k e^{-s mu}|; the phase of a (-mu)^k is kept separately
        logs = np.log(np.abs(a)) + (k * np.log(mu) if k else 0.0)
        phase = np.exp(1j * np.angle(a)) * (-1.0) ** k
        expo = logs[None, :] - s[:, None] * mu[None, :]
        top = np.max(expo, axis=1)
        total = np.abs(np.exp(expo - top[:, None]) @ phase)
        with np.errstate(divide="ignore"):
            log_q = ((k + 1) * np.log(s - omega) - special.gammaln(k + 1)
                     + top + np.log(total))
        return np.where(total > 0, np.exp(np.minimum(log_q, 709.0)), 0.0)


def _segment_masses(k, x):
    """``int t^k e^{-t} dt / k!`` over consecutive nodes along the last axis.

    Uses the lower regularised gamma below the median and the upper one
    above it, avoiding cancellation near 1.
    """
    p = special.gammainc(k + 1, x)
    q = special.gammaincc(k + 1, x)
    return np.where(p[..., 1:] < 0.5, np.diff(p, axis=-1), -np.diff(q, axis=-1))


def _pl_quotient(f, s, k, omega):
    """Vectorised over ``s``; returns a float for scalar ``s``."""
    scalar = np.ndim(s) == 0
    s = np.atleast_1d(np.asarray(s, dtype=float))
    b, m = f.breakpoints, f.slopes
    # (s - w)^{k+1}/k! int t^k e^{-st} F'(t) dt = ((s - w)/s)^{k+1} sum m_i [P(k+1, s b)]
    pieces = _segment_masses(k, s[:, None] * b[None, :])
    total = pieces @ m
    if f.tail_slope:
        total = total + f.tail_slope * special.gammaincc(k + 1, s * b[-1])
    out = np.exp((k + 1) * np.log((s - omega) / s)) * np.abs(total)
    return float(out[0]) if scalar else out


def _pl_quotients(f, s, k_max, omega):
    """Yield the quotient arrays for ``k = 0 .. k_max`` on the grid ``s``.

    The upper regularised gammas obey ``Q(k+2, x) = Q(k+1, x) + x^(k+1)
    e^-x / (k+1)!``, a sum of positive terms, so one pass replaces
    ``k_max + 1`` calls to the incomplete gamma functions.
    """
    b, m = f.breakpoints, f.slopes
    x = s[:, None] * b[None, :]
    with np.errstate(divide="ignore"):
        log_x = np.log(x)
    q = np.exp(-x)
    scale = np.log((s - omega) / s)
    for k in range(k_max + 1):
        total = -np.diff(q, axis=1) @ m
        if f.tail_slope:
            total = total + f.tail_slope * q[:, -1]
        yield np.exp((k + 1) * scale) * np.abs(total)
        q = q + np.exp((k + 1) * log_x - x - special.gammaln(k + 2))


def wid_norm_estimate(d, omega: float = 0.0, k_max: int = 60,
                      s_grid: Optional[Sequence[float]] = None) -> NormEstimate:
    """Lower estimate of ``||D||_Wid,omega`` over ``k <= k_max`` and ``s_grid``.

    ``saturated`` is set when the best ``k`` lies in the top tenth of
    ``0 .. k_max`` (the grid in ``s`` makes the per-``k`` maxima jitter, so
    the exact index ``k_max`` is too brittle), or when the best quotient sits
    at the last grid point and is still rising there.  The default grid is
    geometric in ``s - omega`` from ``1e-3`` to ``1e4``.
    """
    if k_max < 0:
        raise DomainError("k_max must be >= 0")
    grid = (omega + np.geomspace(1e-3, 1e4, 400)) if s_grid is None \
        else np.asarray(s_grid, dtype=float)
    if np.any(grid <= omega):
        raise DomainError("every grid point must exceed omega")
    if isinstance(d, GeneralDirichletSeries):
        d = _LogSpaceTerms(d.exponents, d.coefficients)
    elif isinstance(d, StepFunction):
        d = _LogSpaceTerms(d.locations, d.sizes.astype(complex))
    elif not isinstance(d, PiecewiseLinearFunction):
        raise DomainError(f"unsupported input {type(d).__name__}")
    if isinstance(d, _LogSpaceTerms):
        per_k = (d.quotient(grid, k, omega) for k in range(k_max + 1))
    else:
        per_k = _pl_quotients(d, grid, k_max, omega)
    best, best_at, best_k, edge = 0.0, (math.nan, math.nan), -1, False
    for k, q in enumerate(per_k):
        i = int(np.argmax(q))
        if q[i] > best:
            best, best_at, best_k = float(q[i]), (float(grid[i]), float(k)), k
            # still rising at the right end of the grid
            edge = i == grid.size - 1 and grid.size > 1 and q[-1] > q[-2] * (1 + 1e-6)
    saturated = best > 0 and (best_k >= k_max - k_max // 10 or edge)
    return NormEstimate(best, bool(saturated), (k_max + 1) * grid.size, best_at)


# ---------------------------------------------------------------------------
# family diagnostic
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FinalRow:
    n: int
    wid: NormEstimate
    lip: NormEstimate


def final_diagnostic(members: Sequence[GeneralDirichletSeries], limit: GeneralDirichletSeries,
                     omega: float = 0.0, k_max: int = 60, s_grid=None,
                     delta_min: float = 1e-6, pair_budget: int = 2000, seed: int = 0,
                     steps: Optional[Sequence[StepFunction]] = None) -> List[FinalRow]:
    """Wid norm of ``D_n - D`` next to the Lip norm of the matching step difference.

    ``steps`` defaults to ``step(D_n) - step(D)``.  Rows only report the two
    estimates with identical probe budgets for trend comparison.
    """
    if steps is not None and len(steps) != len(members):
        raise DomainError("need one step difference per member")
    base = step_from_series(limit)
    rows = []
    for i, d in enumerate(members):
        diff = series_difference(d, limit)
        step = steps[i] if steps is not None else step_from_series(d) - base
        rows.append(FinalRow(i + 1,
                             wid_norm_estimate(diff, omega, k_max, s_grid),
                             lip_norm_estimate(step, omega, pair_budget, delta_min, seed)))
    return rows
