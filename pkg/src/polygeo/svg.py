"""Minimal self-contained SVG writers for CLI plots (presentation only)."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
_W, _H = 720, 440
_MARGIN = 56


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    span = hi - lo
    step = 10 ** math.floor(math.log10(span / count))
    for mult in (1, 2, 5, 10):
        if span / (step * mult) <= count:
            step *= mult
            break
    first = math.ceil(lo / step) * step
    out = []
    t = first
    while t <= hi + step * 1e-9:
        out.append(t)
        t += step
    return out


def _frame(title: str, xlabel: str, ylabel: str, x0, x1, y0, y1, body: list[str]) -> str:
    def sx(x: float) -> float:
        return _MARGIN + (x - x0) / (x1 - x0) * (_W - 2 * _MARGIN)

    def sy(y: float) -> float:
        return _H - _MARGIN - (y - y0) / (y1 - y0) * (_H - 2 * _MARGIN)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="monospace" font-size="11">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2}" y="20" text-anchor="middle" font-size="14">{escape(title)}</text>',
    ]
    for t in _ticks(x0, x1):
        parts.append(
            f'<line x1="{sx(t):.1f}" y1="{_H - _MARGIN}" x2="{sx(t):.1f}" '
            f'y2="{_MARGIN}" stroke="#eee"/>'
            f'<text x="{sx(t):.1f}" y="{_H - _MARGIN + 16}" text-anchor="middle">{t:g}</text>'
        )
    for t in _ticks(y0, y1):
        parts.append(
            f'<line x1="{_MARGIN}" y1="{sy(t):.1f}" x2="{_W - _MARGIN}" '
            f'y2="{sy(t):.1f}" stroke="#eee"/>'
            f'<text x="{_MARGIN - 6}" y="{sy(t):.1f}" text-anchor="end">{t:g}</text>'
        )
    parts.append(
        f'<rect x="{_MARGIN}" y="{_MARGIN}" width="{_W - 2 * _MARGIN}" '
        f'height="{_H - 2 * _MARGIN}" fill="none" stroke="#444"/>'
    )
    parts.append(
        f'<text x="{_W / 2}" y="{_H - 12}" text-anchor="middle">{escape(xlabel)}</text>'
    )
    parts.append(
        f'<text x="16" y="{_H / 2}" text-anchor="middle" '
        f'transform="rotate(-90 16 {_H / 2})">{escape(ylabel)}</text>'
    )
    parts.extend(body)
    parts.append("</svg>")
    return "\n".join(parts)


def line_chart(
    series: list[tuple[str, list[tuple[float, float]]]],
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
) -> str:
    xs = [p[0] for _, pts in series for p in pts]
    ys = [p[1] for _, pts in series for p in pts]
    if not xs:
        xs, ys = [0.0, 1.0], [0.0, 1.0]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad

    def sx(x):
        return _MARGIN + (x - x0) / (x1 - x0) * (_W - 2 * _MARGIN)

    def sy(y):
        return _H - _MARGIN - (y - y0) / (y1 - y0) * (_H - 2 * _MARGIN)

    body = []
    for idx, (label, pts) in enumerate(series):
        color = _PALETTE[idx % len(_PALETTE)]
        path = " ".join(f"{sx(x):.1f},{sy(y):.1f}" for x, y in pts)
        body.append(f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        body.append(
            f'<text x="{_W - _MARGIN - 4}" y="{_MARGIN + 14 + 14 * idx}" text-anchor="end" '
            f'fill="{color}">{escape(label)}</text>'
        )
    return _frame(title, xlabel, ylabel, x0, x1, y0, y1, body)


def histogram(values: list[float], bins: int = 100, title: str = "", xlabel: str = "") -> str:
    counts = [0] * bins
    for v in values:
        idx = min(bins - 1, max(0, int(v * bins)))
        counts[idx] += 1
    top = max(counts) if counts else 1

    def sx(x):
        return _MARGIN + x * (_W - 2 * _MARGIN)

    def sy(y):
        return _H - _MARGIN - y / max(top, 1) * (_H - 2 * _MARGIN)

    body = []
    width = (_W - 2 * _MARGIN) / bins
    for i, cnt in enumerate(counts):
        if cnt == 0:
            continue
        body.append(
            f'<rect x="{sx(i / bins):.1f}" y="{sy(cnt):.1f}" width="{width:.2f}" '
            f'height="{_H - _MARGIN - sy(cnt):.1f}" fill="#1f77b4"/>'
        )
    return _frame(title, xlabel, "count", 0.0, 1.0, 0.0, float(top), body)
