"""Minimal static SVG log-log chart for scan reports.  No dependencies,
deterministic output byte for byte."""

from __future__ import annotations

import math

_W, _H = 640, 440
_ML, _MR, _MT, _MB = 70, 20, 20, 50

_SERIES_STYLE = {
    "D": 'stroke="#1f77b4" stroke-width="2" fill="none"',
    "lower": 'stroke="#2ca02c" stroke-width="1.5" fill="none" stroke-dasharray="6,3"',
    "upper": 'stroke="#d62728" stroke-width="1.5" fill="none" stroke-dasharray="6,3"',
    "etk": 'stroke="#9467bd" stroke-width="1.5" fill="none" stroke-dasharray="2,3"',
}


def _fmt(v: float) -> str:
    return "%.6g" % v


def loglog_svg(series: dict, xlabel: str = "k", ylabel: str = "discrepancy") -> str:
    """Render named (x, y) series with positive coordinates on log-log axes.

    series maps a name from _SERIES_STYLE to a list of (x, y) pairs;
    nonpositive values are dropped.
    """
    pts = [
        (x, y) for data in series.values() for x, y in data if x > 0 and y > 0
    ]
    if not pts:
        raise ValueError("nothing to plot")
    lx = [math.log10(x) for x, _ in pts]
    ly = [math.log10(y) for _, y in pts]
    x0, x1 = min(lx), max(lx)
    y0, y1 = min(ly), max(ly)
    if x1 - x0 < 1e-12:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 - y0 < 1e-12:
        y0, y1 = y0 - 0.5, y1 + 0.5

    def sx(x):
        return _ML + (math.log10(x) - x0) / (x1 - x0) * (_W - _ML - _MR)

    def sy(y):
        return _H - _MB - (math.log10(y) - y0) / (y1 - y0) * (_H - _MT - _MB)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="white"/>',
        f'<rect x="{_ML}" y="{_MT}" width="{_W - _ML - _MR}" height="{_H - _MT - _MB}" '
        'fill="none" stroke="black"/>',
    ]
    for name, data in series.items():
        data = [(x, y) for x, y in data if x > 0 and y > 0]
        if not data:
            continue
        style = _SERIES_STYLE.get(name, 'stroke="gray" fill="none"')
        path = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in data)
        parts.append(f'<polyline points="{path}" {style}/>')
        for x, y in data:
            parts.append(
                f'<circle cx="{_fmt(sx(x))}" cy="{_fmt(sy(y))}" r="2.5" '
                f'fill="{_stroke_color(style)}"/>'
            )
    parts.append(
        f'<text x="{_W // 2}" y="{_H - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">log10 {xlabel} '
        f"[{_fmt(x0)} .. {_fmt(x1)}]</text>"
    )
    parts.append(
        f'<text x="16" y="{_H // 2}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="13" transform="rotate(-90 16 {_H // 2})">log10 {ylabel} '
        f"[{_fmt(y0)} .. {_fmt(y1)}]</text>"
    )
    legend_y = _MT + 16
    for name in series:
        if series[name]:
            color = _stroke_color(_SERIES_STYLE.get(name, 'stroke="gray"'))
            parts.append(
                f'<text x="{_W - _MR - 90}" y="{legend_y}" font-family="sans-serif" '
                f'font-size="12" fill="{color}">{name}</text>'
            )
            legend_y += 16
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _stroke_color(style: str) -> str:
    for tok in style.split():
        if tok.startswith('stroke="'):
            return tok.split('"')[1]
    return "gray"
