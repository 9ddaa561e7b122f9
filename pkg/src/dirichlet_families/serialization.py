"""JSON loading and dumping for series, spectra, families and catalog shorthands.

Series::

    {"exponents": [...], "coefficients": [[re, im], ...], "gamma": g,
     "tail_model": {"kind": "none" | "finite" | "power" | "geometric" | "quadratic", ...}}

Spectra::

    {"eigenvalues": [...], "multiplicities": [...], "dim": d, "label": "..."}

Families::

    {"members": [<series>, ...], "limit": <series>, "gamma": g}

Anywhere a series or spectrum is expected, a string ``catalog:NAME[:key=value...]``
(for example ``catalog:circle:r=0.5``) names a built-in spectrum.
"""

from __future__ import annotations

import json
import math
import os
import re
from pathlib import Path
from typing import Any, Union

import numpy as np

from .arithmetic import RATIONALS, QuadraticField
from .convergence import SeriesFamily
from .errors import DomainError, ParseError
from .series_core import GeneralDirichletSeries, GeometricTail, PowerTail, QuadraticTail
from .spectra import Spectrum, catalog, spectrum_to_series

__all__ = [
    "max_terms",
    "parse_json",
    "series_from_dict",
    "series_to_dict",
    "spectrum_from_dict",
    "spectrum_to_dict",
    "family_from_dict",
    "parse_catalog",
    "parse_field",
    "load_series",
    "load_spectrum_or_series",
    "load_family",
]

DEFAULT_MAX_TERMS = 10 ** 7


def max_terms() -> int:
    """Cap on stored series length, from ``ZM_MAX_TERMS`` (default ``10**7``)."""
    raw = os.environ.get("ZM_MAX_TERMS")
    if raw is None:
        return DEFAULT_MAX_TERMS
    try:
        return int(float(raw))
    except ValueError:
        raise DomainError(f"ZM_MAX_TERMS must be a number, got {raw!r}") from None


def parse_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", (exc.lineno, exc.colno)) from None


def _read(path: Union[str, Path]) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None
    return parse_json(text)


def _number(x, where) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError("expected a number", where)
    return float(x)


def _complex(x, where) -> complex:
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise ParseError("complex coefficients are [re, im] pairs", where)
        return complex(_number(x[0], where), _number(x[1], where))
    return complex(_number(x, where))


def _require(obj, key, where):
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object", where)
    if key not in obj:
        raise ParseError(f"missing key {key!r}", where)
    return obj[key]


def _tail_from_dict(tm, where):
    if tm is None:
        return None
    kind = _require(tm, "kind", where)
    args = {k: v for k, v in tm.items() if k != "kind"}
    classes = {"power": PowerTail, "geometric": GeometricTail, "quadratic": QuadraticTail}
    if kind == "none":
        return None
    if kind == "finite":
        # the stored terms are the whole series: a zero-mass tail bound
        return GeometricTail(C=0.0, gap=1.0)
    if kind not in classes:
        raise ParseError(f"unknown tail_model kind {kind!r}", f"{where}.kind")
    try:
        return classes[kind](**args)
    except TypeError as exc:
        raise ParseError(f"bad tail_model fields: {exc}", where) from None


def series_from_dict(obj, where: str = "$") -> GeneralDirichletSeries:
    """Build a series from the JSON schema; ``where`` prefixes error positions."""
    mu = _require(obj, "exponents", where)
    a = _require(obj, "coefficients", where)
    if not isinstance(mu, list) or not isinstance(a, list):
        raise ParseError("exponents and coefficients must be arrays", where)
    if len(mu) != len(a):
        raise ParseError(f"{len(mu)} exponents but {len(a)} coefficients", f"{where}.coefficients")
    if len(mu) > max_terms():
        raise DomainError(f"series has {len(mu)} terms, above ZM_MAX_TERMS = {max_terms()}")
    exps = [_number(x, f"{where}.exponents[{i}]") for i, x in enumerate(mu)]
    for i in range(1, len(exps)):
        if not exps[i] > exps[i - 1]:
            raise ParseError("exponents must be strictly increasing", f"{where}.exponents[{i}]")
    coefs = [_complex(x, f"{where}.coefficients[{i}]") for i, x in enumerate(a)]
    gamma = _number(_require(obj, "gamma", where), f"{where}.gamma")
    tail = _tail_from_dict(obj.get("tail_model"), f"{where}.tail_model")
    return GeneralDirichletSeries(np.array(exps), np.array(coefs, dtype=complex), gamma, tail)


def series_to_dict(d: GeneralDirichletSeries) -> dict:
    tm = d.tail_model.to_dict() if d.tail_model is not None else {"kind": "none"}
    return {
        "exponents": d.exponents.tolist(),
        "coefficients": [[z.real, z.imag] for z in d.coefficients.tolist()],
        "gamma": d.abscissa,
        "tail_model": tm,
    }


def spectrum_from_dict(obj, where: str = "$") -> Spectrum:
    ev = _require(obj, "eigenvalues", where)
    mult = obj.get("multiplicities", [1] * len(ev) if isinstance(ev, list) else None)
    if not isinstance(ev, list) or not isinstance(mult, list):
        raise ParseError("eigenvalues and multiplicities must be arrays", where)
    if len(ev) != len(mult):
        raise ParseError("eigenvalues and multiplicities differ in length",
                         f"{where}.multiplicities")
    lam = [_number(x, f"{where}.eigenvalues[{i}]") for i, x in enumerate(ev)]
    for i in range(1, len(lam)):
        if not lam[i] > lam[i - 1]:
            raise ParseError("eigenvalues must be strictly increasing", f"{where}.eigenvalues[{i}]")
    m = []
    for i, x in enumerate(mult):
        if isinstance(x, bool) or not isinstance(x, int) or x < 1:
            raise ParseError("multiplicities must be positive integers",
                             f"{where}.multiplicities[{i}]")
        m.append(x)
    dim = _require(obj, "dim", where)
    if isinstance(dim, bool) or not isinstance(dim, int):
        raise ParseError("dim must be an integer", f"{where}.dim")
    return Spectrum(np.array(lam), np.array(m), dim, str(obj.get("label", "")))


def spectrum_to_dict(sp: Spectrum) -> dict:
    return {"eigenvalues": sp.eigenvalues.tolist(),
            "multiplicities": sp.multiplicities.tolist(),
            "dim": int(sp.dim), "label": sp.label}


_CATALOG_RE = re.compile(r"^catalog:([A-Za-z0-9_]+)((?::[A-Za-z_]+=[^:]+)*)$")


def parse_catalog(text: str) -> Spectrum:
    """``catalog:circle:r=0.5[:count=N][:multiplicity=1]``, ``catalog:sphere``, ``catalog:rp2``."""
    m = _CATALOG_RE.match(text.strip())
    if not m:
        raise ParseError(f"cannot parse catalog string {text!r}", 0)
    params = {}
    for item in filter(None, m.group(2).split(":")):
        key, value = item.split("=", 1)
        try:
            params[key] = float(value)
        except ValueError:
            raise ParseError(f"parameter {key} is not a number", text.index(item)) from None
    count = int(params.pop("count", 2000))
    if count > max_terms():
        raise DomainError(f"count {count} above ZM_MAX_TERMS = {max_terms()}")
    return catalog(m.group(1), count, **params)


_FIELD_RE = re.compile(r"^Q\(\s*sqrt\s*[:(]\s*(-?\d+)\s*\)?\s*\)$")


def parse_field(text: str):
    """``Q`` or ``Q(sqrt:d)`` (also ``Q(sqrt(d))``)."""
    t = text.strip()
    if t == "Q":
        return RATIONALS
    m = _FIELD_RE.match(t)
    if not m:
        raise ParseError(f"cannot parse field {text!r}; use Q or Q(sqrt:d)", 0)
    return QuadraticField(int(m.group(1)))


def _series_like(obj, where) -> GeneralDirichletSeries:
    if isinstance(obj, str) and obj.startswith("catalog:"):
        return spectrum_to_series(parse_catalog(obj))
    return series_from_dict(obj, where)


def load_series(ref: str) -> GeneralDirichletSeries:
    """Series from a JSON file path or a catalog string."""
    if ref.startswith("catalog:"):
        return spectrum_to_series(parse_catalog(ref))
    return series_from_dict(_read(ref))


def load_spectrum_or_series(ref: str):
    """Catalog string, spectrum JSON or series JSON."""
    if ref.startswith("catalog:"):
        return parse_catalog(ref)
    obj = _read(ref)
    if isinstance(obj, dict) and "eigenvalues" in obj:
        return spectrum_from_dict(obj)
    return series_from_dict(obj)


def family_from_dict(obj, where: str = "$") -> SeriesFamily:
    members = _require(obj, "members", where)
    if not isinstance(members, list) or not members:
        raise ParseError("members must be a non-empty array", f"{where}.members")
    series = [_series_like(m, f"{where}.members[{i}]") for i, m in enumerate(members)]
    limit = _series_like(_require(obj, "limit", where), f"{where}.limit")
    gamma = obj.get("gamma")
    if gamma is None:
        gamma = max([limit.abscissa] + [s.abscissa for s in series])
    gamma = _number(gamma, f"{where}.gamma")
    if not math.isfinite(gamma):
        raise ParseError("gamma must be finite", f"{where}.gamma")
    return SeriesFamily(series, limit, gamma)


def load_family(path: str) -> SeriesFamily:
    return family_from_dict(_read(path))
