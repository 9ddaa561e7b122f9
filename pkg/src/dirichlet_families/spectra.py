"""
Laplace-Beltrami spectra of closed manifolds and their spectral zeta series.

A :class:`Spectrum` lists the distinct nonzero eigenvalues with their
multiplicities.  The zero eigenvalue of a connected manifold is never stored.

Circle convention
-----------------
The circle of radius ``r`` has eigenvalues ``k**2 / r**2`` (``k >= 1``), each
with multiplicity 2 (``cos`` and ``sin`` modes), so its spectral zeta function
is ``2 r**(2s) zeta(2s)``.  The often quoted closed form ``r**(2s) zeta(2s)``
counts each eigenvalue once; pass ``multiplicity=1`` to reproduce it.  The
factor cancels in every ratio of two circle zeta functions, so distances do
not depend on the choice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .series_core import GeneralDirichletSeries, PowerTail, QuadraticTail

__all__ = [
    "Spectrum",
    "circle_spectrum",
    "sphere_spectrum",
    "projective_plane_spectrum",
    "spectrum_to_series",
    "series_to_eigenvalues",
    "catalog",
]


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Distinct positive eigenvalues with multiplicities.

    ``closed_form`` optionally describes every term ``m_nu * lambda_nu**(-s)``
    as a :class:`QuadraticTail` in the index of the distinct eigenvalue; the
    catalog constructors set it so spectral series can be summed to the end.
    """

    eigenvalues: np.ndarray
    multiplicities: np.ndarray
    dim: int
    label: str = ""
    closed_form: Optional[QuadraticTail] = None

    def __post_init__(self):
        lam = np.array(self.eigenvalues, dtype=float).ravel()
        mult = np.array(self.multiplicities).ravel()
        if lam.size == 0:
            raise DomainError("a spectrum needs at least one eigenvalue")
        if lam.size != mult.size:
            raise DomainError(f"{lam.size} eigenvalues but {mult.size} multiplicities")
        if np.any(lam <= 0):
            raise DomainError("eigenvalues must be positive (zero eigenvalue is excluded)")
        bad = np.flatnonzero(np.diff(lam) <= 0)
        if bad.size:
            raise DomainError(f"eigenvalues not strictly increasing at index {bad[0] + 1}")
        if np.any(mult != np.round(mult)) or np.any(mult < 1):
            raise DomainError("multiplicities must be positive integers")
        if int(self.dim) != self.dim or self.dim < 1:
            raise DomainError("dim must be a positive integer")
        mult = mult.astype(np.int64)
        lam.flags.writeable = False
        mult.flags.writeable = False
        object.__setattr__(self, "eigenvalues", lam)
        object.__setattr__(self, "multiplicities", mult)
        object.__setattr__(self, "dim", int(self.dim))

    def __len__(self):
        return self.eigenvalues.size

    def expanded(self) -> np.ndarray:
        """Eigenvalues repeated according to multiplicity (nondecreasing)."""
        return np.repeat(self.eigenvalues, self.multiplicities)

    def __repr__(self):
        return (f"Spectrum({self.label or 'unnamed'}, distinct={len(self)}, "
                f"dim={self.dim})")


def circle_spectrum(r: float, count: int, multiplicity: int = 2) -> Spectrum:
    """Circle of radius ``r``: eigenvalues ``k**2 / r**2`` for ``k = 1..count``."""
    if not r > 0:
        raise DomainError("radius must be positive")
    if count < 1:
        raise DomainError("count must be >= 1")
    if multiplicity not in (1, 2):
        raise DomainError("circle multiplicity convention is 1 or 2")
    k = np.arange(1, count + 1, dtype=float)
    closed = QuadraticTail(scale=r ** -2, shift=0.0, eps=0.0, slope=0.0,
                           intercept=float(multiplicity))
    return Spectrum(k * k / (r * r), np.full(count, multiplicity), 1,
                    f"circle(r={r:g})", closed)


def sphere_spectrum(count: int) -> Spectrum:
    """Round unit 2-sphere: ``nu(nu+1)`` with multiplicity ``2 nu + 1``."""
    if count < 1:
        raise DomainError("count must be >= 1")
    nu = np.arange(1, count + 1, dtype=float)
    # nu(nu+1) = (nu + 1/2)**2 - 1/4 and 2 nu + 1 = 2 (nu + 1/2)
    closed = QuadraticTail(scale=1.0, shift=0.5, eps=0.25, slope=2.0, intercept=0.0)
    return Spectrum(nu * (nu + 1), 2 * nu + 1, 2, "sphere", closed)


def projective_plane_spectrum(count: int) -> Spectrum:
    """Real projective plane of area ``4 pi``: ``nu(2nu+1)``, multiplicity ``4nu+1``."""
    if count < 1:
        raise DomainError("count must be >= 1")
    nu = np.arange(1, count + 1, dtype=float)
    # nu(2nu+1) = 2((nu + 1/4)**2 - 1/16) and 4 nu + 1 = 4 (nu + 1/4)
    closed = QuadraticTail(scale=2.0, shift=0.25, eps=1.0 / 16, slope=4.0, intercept=0.0)
    return Spectrum(nu * (2 * nu + 1), 4 * nu + 1, 2, "rp2", closed)


def _fitted_tail(sp: Spectrum) -> Optional[PowerTail]:
    # Weyl-type model m_nu <= C nu**p, log(lambda_nu) >= q log(nu) + offset,
    # fitted on the upper half of the stored terms
    n = len(sp)
    if n < 4:
        return None
    idx = np.arange(n // 2, n)
    nu = idx + 1.0
    x = np.log(nu)
    mu = np.log(sp.eigenvalues[idx])
    m = sp.multiplicities[idx].astype(float)
    q = float(np.polyfit(x, mu, 1)[0])
    p = float(np.polyfit(x, np.log(m), 1)[0]) if np.ptp(m) > 0 else 0.0
    if not q > 0:
        return None
    p = max(p, 0.0)
    c = float(np.max(m / nu ** p))
    offset = float(np.min(mu - q * x))
    return PowerTail(C=c, p=p, q=q, offset=offset, heuristic=True)


def spectrum_to_series(sp: Spectrum) -> GeneralDirichletSeries:
    """Spectral zeta function ``sum m_nu lambda_nu**(-s)`` as a Dirichlet series.

    Exponents are ``log(lambda_nu)``, coefficients the multiplicities and the
    declared abscissa is ``dim / 2``.  Catalog spectra carry their exact
    closed-form tail; other spectra get a power-law tail fitted to the stored
    eigenvalues and flagged heuristic.  Eigenvalues one ulp apart can share a
    logarithm; such runs are merged and their multiplicities added.
    """
    model = sp.closed_form if sp.closed_form is not None else _fitted_tail(sp)
    mu, first = np.unique(np.log(sp.eigenvalues), return_index=True)
    mult = np.add.reduceat(sp.multiplicities.astype(float), first) \
        if mu.size < len(sp) else sp.multiplicities.astype(float)
    return GeneralDirichletSeries(mu, mult, sp.dim / 2.0, model)


def series_to_eigenvalues(series: GeneralDirichletSeries) -> np.ndarray:
    """Multiplicity-expanded eigenvalues of a spectral series.

    Requires positive integer coefficients; each exponent ``mu`` stands for
    the eigenvalue ``exp(mu)``.
    """
    a = series.coefficients
    if np.any(a.imag != 0) or np.any(a.real < 1) or np.any(a.real != np.round(a.real)):
        raise DomainError("coefficients must be positive integers to expand into a spectrum")
    return np.repeat(np.exp(series.exponents), a.real.astype(np.int64))


def catalog(name: str, count: int = 2000, **params) -> Spectrum:
    """Look up a catalog spectrum by name (``circle``, ``sphere``, ``rp2``)."""
    name = name.lower()
    if name == "circle":
        return circle_spectrum(float(params.get("r", 1.0)), count,
                               int(params.get("multiplicity", 2)))
    if name == "sphere":
        return sphere_spectrum(count)
    if name in ("rp2", "projective_plane"):
        return projective_plane_spectrum(count)
    raise DomainError(f"unknown catalog spectrum {name!r}")

