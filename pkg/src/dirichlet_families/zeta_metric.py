"""
Spectral distance between manifolds up to isospectrality.

    d(X1, X2) = sup_{gamma <= s <= gamma+1} | log zeta_X1(s) - log zeta_X2(s) |

The supremum is taken over the closed interval: the reference examples
(circles, sphere versus projective plane) attain it at ``s = gamma + 1``.
When ``gamma`` equals the abscissa of one of the series the left end is moved
in by ``left_guard``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import DomainError
from .series_core import GeneralDirichletSeries, evaluate
from .spectra import Spectrum, spectrum_to_series

__all__ = [
    "MetricConfig",
    "DistanceResult",
    "manifold_distance",
    "bounded_distance",
    "golden_section_max",
    "sup_abs",
]

_INV_PHI = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class MetricConfig:
    """Sampling and tolerance settings for sup searches.

    ``gamma`` is the left end of the window ``[gamma, gamma + width]``;
    ``width`` is 1 for manifold distances.
    """

    gamma: float = 1.0
    grid_points: int = 64
    refine_tol: float = 1e-10
    eval_tol: float = 1e-13
    left_guard: float = 1e-9
    width: float = 1.0

    def __post_init__(self):
        if self.grid_points < 2:
            raise DomainError("grid_points must be >= 2")
        if not (self.refine_tol > 0 and self.eval_tol > 0 and self.left_guard >= 0):
            raise DomainError("tolerances must be positive")
        if not self.width > 0:
            raise DomainError("width must be positive")


@dataclass(frozen=True, eq=False)
class DistanceResult:
    """Outcome of a sup search.

    ``samples`` has one ``(s, signed log-ratio)`` row per grid point.
    ``value`` is an achieved value, so it under-estimates the supremum by at
    most ``error_estimate`` (grid bias plus evaluation error).
    """

    value: float
    argmax_s: float
    samples: np.ndarray
    error_estimate: float

    @property
    def bounded(self) -> float:
        return self.value / (1.0 + self.value)


def golden_section_max(f: Callable[[float], float], a: float, b: float,
                       tol: float) -> Tuple[float, float]:
    """Maximize a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def sup_abs(func: Callable[[float], Tuple[float, float]], lo: float, hi: float,
            grid_points: int, refine_tol: float) -> DistanceResult:
    """Supremum of ``|func|`` on ``[lo, hi]``.

    ``func`` returns ``(value, error)``.  A uniform grid locates the best
    cell, golden-section search refines inside the neighbouring cells, and the
    error estimate is a sampled Lipschitz constant times the final bracket
    plus the evaluation error at the reported point.
    """
    s_grid = np.linspace(lo, hi, grid_points)
    vals = np.empty(grid_points)
    errs = np.empty(grid_points)
    for i, s in enumerate(s_grid):
        vals[i], errs[i] = func(float(s))
    mags = np.abs(vals)
    i = int(np.argmax(mags))
    best_s, best_v, best_e = float(s_grid[i]), float(mags[i]), float(errs[i])

    a = float(s_grid[max(i - 1, 0)])
    b = float(s_grid[min(i + 1, grid_points - 1)])
    if b > a:
        cache = {}

        def g(s):
            v, e = func(s)
            cache[s] = e
            return abs(v)

        x, fx = golden_section_max(g, a, b, refine_tol)
        if fx > best_v:
            best_s, best_v, best_e = x, fx, cache[x]

    slopes = np.abs(np.diff(vals)) / np.diff(s_grid) if grid_points > 1 else np.zeros(1)
    lipschitz = float(np.max(slopes)) if slopes.size else 0.0
    error = lipschitz * refine_tol + best_e
    samples = np.column_stack([s_grid, vals])
    samples.flags.writeable = False
    return DistanceResult(best_v, best_s, samples, error)


def _log_eval(series: GeneralDirichletSeries, s: float, tol: float):
    res = evaluate(series, s, tol)
    v = float(np.real(res.value))
    if abs(v) <= tol:
        raise DomainError(f"zeta function vanishes (|value| <= {tol}) at s = {s}")
    return math.log(abs(v)), res.truncation_bound / abs(v)


def _as_series(x) -> GeneralDirichletSeries:
    return spectrum_to_series(x) if isinstance(x, Spectrum) else x


def _dims(x) -> float:
    return x.dim / 2.0 if isinstance(x, Spectrum) else x.abscissa


def manifold_distance(x1, x2, cfg: Optional[MetricConfig] = None) -> DistanceResult:
    """Spectral distance ``sup |log(zeta_X1 / zeta_X2)|`` on ``[gamma, gamma+1]``.

    Parameters
    ----------
    x1, x2 : Spectrum or GeneralDirichletSeries
        Spectra (or their spectral series).
    cfg : MetricConfig, optional
        ``cfg.gamma`` must be at least ``max(dim) / 2``.
    """
    cfg = cfg or MetricConfig()
    s1, s2 = _as_series(x1), _as_series(x2)
    need = max(_dims(x1), _dims(x2), s1.abscissa, s2.abscissa)
    if cfg.gamma < need:
        raise DomainError(f"gamma = {cfg.gamma} is left of the common half plane "
                          f"Re(s) > {need}")
    lo = cfg.gamma if cfg.gamma > need else cfg.gamma + cfg.left_guard
    hi = cfg.gamma + cfg.width

    def log_ratio(s):
        l1, e1 = _log_eval(s1, s, cfg.eval_tol)
        l2, e2 = _log_eval(s2, s, cfg.eval_tol)
        return l1 - l2, e1 + e2 + 4e-16 * (abs(l1) + abs(l2))

    result = sup_abs(log_ratio, lo, hi, cfg.grid_points, cfg.refine_tol)
    if lo > cfg.gamma and result.argmax_s == lo and result.value > 0:
        warnings.warn("supremum found at the guarded left end; the distance may be "
                      "infinite on the open interval", RuntimeWarning, stacklevel=2)
    return result


def bounded_distance(x1, x2, cfg: Optional[MetricConfig] = None) -> float:
    """``d / (1 + d)``, a distance with values in ``[0, 1)``."""
    d = manifold_distance(x1, x2, cfg).value
    return d / (1.0 + d)
