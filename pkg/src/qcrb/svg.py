"""Minimal line-plot SVG writer with a fixed 800x600 canvas."""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

__all__ = ["Series", "Marker", "line_plot"]

WIDTH, HEIGHT = 800, 600
_LEFT, _RIGHT, _TOP, _BOTTOM = 80, 30, 50, 70

_DASH = {"solid": None, "dashed": "8,5", "dotted": "2,4"}
_PALETTE = ["#1f4e9c", "#222222", "#b8471b", "#2f7d32", "#6a3d9a"]


@dataclass
class Series:
    label: str
    points: list
    style: str = "solid"
    color: str | None = None

    def __post_init__(self):
        if self.style not in _DASH:
            raise ValueError(f"unknown line style {self.style!r}")


@dataclass
class Marker:
    label: str
    point: tuple
    shape: str = "circle"
    color: str = "#1f4e9c"


def _nice_step(span: float, target: int = 6) -> float:
    raw = span / target
    mag = 10 ** math.floor(math.log10(raw))
    for mult in (1, 2, 2.5, 5, 10):
        if raw <= mult * mag:
            return mult * mag
    return 10 * mag


def _ticks(lo: float, hi: float) -> list[float]:
    step = _nice_step(hi - lo)
    first = math.ceil(lo / step - 1e-9)
    last = math.floor(hi / step + 1e-9)
    return [round(k * step, 10) for k in range(first, last + 1)]


def _fmt(v: float) -> str:
    return f"{v:.2f}"


@dataclass
class _Frame:
    xlim: tuple
    ylim: tuple

    def x(self, v):
        lo, hi = self.xlim
        return _LEFT + (v - lo) / (hi - lo) * (WIDTH - _LEFT - _RIGHT)

    def y(self, v):
        lo, hi = self.ylim
        return HEIGHT - _BOTTOM - (v - lo) / (hi - lo) * (HEIGHT - _TOP - _BOTTOM)


def _limits(values, given):
    if given is not None:
        return given
    lo, hi = min(values), max(values)
    if hi == lo:
        hi, lo = hi + 1, lo - 1
    margin = 0.05 * (hi - lo)
    return lo - margin, hi + margin


def line_plot(
    series: list[Series],
    *,
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    markers: list[Marker] = (),
    xlim=None,
    ylim=None,
) -> str:
    """Render ``series`` as polylines; returns the SVG document as text."""
    xs = [p[0] for s in series for p in s.points] + [m.point[0] for m in markers]
    ys = [p[1] for s in series for p in s.points] + [m.point[1] for m in markers]
    frame = _Frame(_limits(xs, xlim), _limits(ys, ylim))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" '
        f'width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="14">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    x0, x1 = frame.x(frame.xlim[0]), frame.x(frame.xlim[1])
    y0, y1 = frame.y(frame.ylim[0]), frame.y(frame.ylim[1])
    out.append(
        f'<rect x="{x0:.2f}" y="{y1:.2f}" width="{x1 - x0:.2f}" height="{y0 - y1:.2f}" '
        'fill="none" stroke="black"/>'
    )
    for t in _ticks(*frame.xlim):
        px = frame.x(t)
        out.append(f'<line x1="{px:.2f}" y1="{y0:.2f}" x2="{px:.2f}" y2="{y0 + 6:.2f}" stroke="black"/>')
        out.append(f'<text x="{px:.2f}" y="{y0 + 22:.2f}" text-anchor="middle">{t:g}</text>')
    for t in _ticks(*frame.ylim):
        py = frame.y(t)
        out.append(f'<line x1="{x0 - 6:.2f}" y1="{py:.2f}" x2="{x0:.2f}" y2="{py:.2f}" stroke="black"/>')
        out.append(f'<text x="{x0 - 10:.2f}" y="{py + 5:.2f}" text-anchor="end">{t:g}</text>')

    out.append(f'<clipPath id="plot"><rect x="{x0:.2f}" y="{y1:.2f}" width="{x1 - x0:.2f}" height="{y0 - y1:.2f}"/></clipPath>')
    for i, s in enumerate(series):
        if not s.points:
            continue
        color = s.color or _PALETTE[i % len(_PALETTE)]
        pts = " ".join(f"{_fmt(frame.x(a))},{_fmt(frame.y(b))}" for a, b in s.points)
        dash = _DASH[s.style]
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(
            f'<polyline clip-path="url(#plot)" points="{pts}" fill="none" '
            f'stroke="{color}" stroke-width="2"{dash_attr}/>'
        )
    for m in markers:
        px, py = frame.x(m.point[0]), frame.y(m.point[1])
        if m.shape == "square":
            out.append(f'<rect x="{px - 5:.2f}" y="{py - 5:.2f}" width="10" height="10" fill="{m.color}"/>')
        else:
            out.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="5" fill="{m.color}"/>')

    # legend, top right
    lx, ly = x1 - 230, y1 + 20
    for i, s in enumerate(series):
        color = s.color or _PALETTE[i % len(_PALETTE)]
        dash = _DASH[s.style]
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        yy = ly + 22 * i
        out.append(
            f'<line x1="{lx:.2f}" y1="{yy:.2f}" x2="{lx + 36:.2f}" y2="{yy:.2f}" '
            f'stroke="{color}" stroke-width="2"{dash_attr}/>'
        )
        out.append(f'<text x="{lx + 44:.2f}" y="{yy + 5:.2f}">{escape(s.label)}</text>')
    for j, m in enumerate(markers):
        yy = ly + 22 * (len(series) + j)
        out.append(f'<circle cx="{lx + 18:.2f}" cy="{yy:.2f}" r="5" fill="{m.color}"/>')
        out.append(f'<text x="{lx + 44:.2f}" y="{yy + 5:.2f}">{escape(m.label)}</text>')

    cx = (x0 + x1) / 2
    out.append(f'<text x="{cx:.2f}" y="{HEIGHT - 20}" text-anchor="middle">{escape(xlabel)}</text>')
    cy = (y0 + y1) / 2
    out.append(
        f'<text x="22" y="{cy:.2f}" text-anchor="middle" transform="rotate(-90 22 {cy:.2f})">'
        f"{escape(ylabel)}</text>"
    )
    if title:
        out.append(f'<text x="{cx:.2f}" y="30" text-anchor="middle" font-size="16">{escape(title)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
