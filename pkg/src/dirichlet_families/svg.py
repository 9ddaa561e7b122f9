"""Minimal deterministic SVG scatter plots (no plotting dependency)."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable, List, Tuple, Union
from xml.sax.saxutils import escape

from .errors import DomainError

__all__ = ["render_svg", "emit_svg"]

_W, _H = 480, 320
_LEFT, _RIGHT, _TOP, _BOTTOM = 64, 20, 36, 48


def _nice_ticks(lo: float, hi: float, n: int = 5) -> List[float]:
    span = hi - lo
    raw = span / max(n - 1, 1)
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=10 * mag)
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * span:
        ticks.append(round(t, 12))
        t += step
    return ticks


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _label(v: float) -> str:
    return f"{v:.6g}"


def _padded_range(values: List[float]) -> Tuple[float, float]:
    lo, hi = min(values), max(values)
    if hi == lo:
        pad = abs(lo) * 0.1 or 1.0
        return lo - pad, hi + pad
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def render_svg(points: Iterable[Tuple[float, float]], x_label: str = "x",
               y_label: str = "y", title: str = "", connect: bool = True) -> str:
    """SVG markup for a scatter plot of ``points``, optionally joined by a line."""
    pts = [(float(x), float(y)) for x, y in points]
    if not pts:
        raise DomainError("need at least one point")
    if not all(math.isfinite(x) and math.isfinite(y) for x, y in pts):
        raise DomainError("points must be finite")
    x0, x1 = _padded_range([p[0] for p in pts])
    y0, y1 = _padded_range([p[1] for p in pts])
    pw, ph = _W - _LEFT - _RIGHT, _H - _TOP - _BOTTOM

    def px(x):
        return _LEFT + (x - x0) / (x1 - x0) * pw

    def py(y):
        return _TOP + (1 - (y - y0) / (y1 - y0)) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="11">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{_W / 2}" y="20" text-anchor="middle" font-size="13">'
                   f'{escape(title)}</text>')
    bottom, right = _TOP + ph, _LEFT + pw
    out.append(f'<line x1="{_LEFT}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>')
    out.append(f'<line x1="{_LEFT}" y1="{_TOP}" x2="{_LEFT}" y2="{bottom}" stroke="black"/>')
    for t in _nice_ticks(x0, x1):
        x = _fmt(px(t))
        out.append(f'<line x1="{x}" y1="{bottom}" x2="{x}" y2="{bottom + 4}" stroke="black"/>')
        out.append(f'<text x="{x}" y="{bottom + 16}" text-anchor="middle">{_label(t)}</text>')
    for t in _nice_ticks(y0, y1):
        y = _fmt(py(t))
        out.append(f'<line x1="{_LEFT - 4}" y1="{y}" x2="{_LEFT}" y2="{y}" stroke="black"/>')
        out.append(f'<text x="{_LEFT - 6}" y="{y}" text-anchor="end" '
                   f'dominant-baseline="middle">{_label(t)}</text>')
    out.append(f'<text x="{_LEFT + pw / 2}" y="{_H - 10}" text-anchor="middle">'
               f'{escape(x_label)}</text>')
    out.append(f'<text x="14" y="{_TOP + ph / 2}" text-anchor="middle" '
               f'transform="rotate(-90 14 {_TOP + ph / 2})">{escape(y_label)}</text>')
    coords = [(_fmt(px(x)), _fmt(py(y))) for x, y in pts]
    if connect and len(coords) > 1:
        path = " ".join(f"{x},{y}" for x, y in coords)
        out.append(f'<polyline points="{path}" fill="none" stroke="#4477aa"/>')
    for x, y in coords:
        out.append(f'<circle cx="{x}" cy="{y}" r="3.5" fill="#cc3311"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(points, path: Union[str, Path], **kwargs) -> Path:
    """Write :func:`render_svg` output to ``path``; identical input gives identical bytes."""
    path = Path(path)
    path.write_text(render_svg(points, **kwargs))
    return path
