"""Minimal deterministic SVG line and contour plots.

Output depends only on the data and the plot spec: coordinates are printed
with fixed precision and nothing time- or host-dependent is embedded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

import contourpy
import numpy as np

WIDTH, HEIGHT = 640, 420
MARGIN = dict(left=70, right=20, top=40, bottom=55)
COLORS = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
DASHES = ("", "6,4", "2,3", "8,3,2,3", "", "4,4")


@dataclass
class PlotSpec:
    title: str = ""
    xlabel: str = ""
    ylabel: str = ""
    labels: list[str] = field(default_factory=list)
    levels: int = 8


def _num(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


def nice_ticks(lo: float, hi: float, n: int = 6) -> list[float]:
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        return [lo]
    raw = (hi - lo) / max(n - 1, 1)
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    start = math.ceil(lo / step - 1e-9) * step
    ticks = []
    v = start
    while v <= hi + step * 1e-9:
        ticks.append(round(v, 12))
        v += step
    return ticks


def _tick_label(v: float) -> str:
    return f"{v:.6g}"


class _Frame:
    def __init__(self, x0, y0, w, h, xlim, ylim):
        self.x0, self.y0, self.w, self.h = x0, y0, w, h
        self.xlim, self.ylim = xlim, ylim

    def px(self, x):
        lo, hi = self.xlim
        return self.x0 + (np.asarray(x, dtype=float) - lo) / (hi - lo) * self.w

    def py(self, y):
        lo, hi = self.ylim
        return self.y0 + self.h - (np.asarray(y, dtype=float) - lo) / (hi - lo) * self.h

    def axes(self, xlabel, ylabel, title) -> list[str]:
        out = [
            f'<rect x="{_num(self.x0)}" y="{_num(self.y0)}" width="{_num(self.w)}" height="{_num(self.h)}" '
            'fill="none" stroke="#000" stroke-width="1"/>'
        ]
        for t in nice_ticks(*self.xlim):
            x = float(self.px(t))
            yb = self.y0 + self.h
            out.append(f'<line x1="{_num(x)}" y1="{_num(yb)}" x2="{_num(x)}" y2="{_num(yb + 5)}" stroke="#000"/>')
            out.append(
                f'<text x="{_num(x)}" y="{_num(yb + 18)}" font-size="11" text-anchor="middle">{_tick_label(t)}</text>'
            )
        for t in nice_ticks(*self.ylim):
            y = float(self.py(t))
            out.append(f'<line x1="{_num(self.x0 - 5)}" y1="{_num(y)}" x2="{_num(self.x0)}" y2="{_num(y)}" stroke="#000"/>')
            out.append(
                f'<text x="{_num(self.x0 - 8)}" y="{_num(y + 4)}" font-size="11" text-anchor="end">{_tick_label(t)}</text>'
            )
        cx = self.x0 + self.w / 2
        out.append(
            f'<text x="{_num(cx)}" y="{_num(self.y0 + self.h + 42)}" font-size="13" text-anchor="middle">{escape(xlabel)}</text>'
        )
        cy = self.y0 + self.h / 2
        out.append(
            f'<text x="{_num(self.x0 - 52)}" y="{_num(cy)}" font-size="13" text-anchor="middle" '
            f'transform="rotate(-90 {_num(self.x0 - 52)} {_num(cy)})">{escape(ylabel)}</text>'
        )
        if title:
            out.append(f'<text x="{_num(cx)}" y="{_num(self.y0 - 12)}" font-size="14" text-anchor="middle">{escape(title)}</text>')
        return out


def _document(width, height, body: list[str]) -> str:
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif">\n'
        f'<rect width="{width}" height="{height}" fill="#fff"/>\n'
    )
    return head + "\n".join(body) + "\n</svg>\n"


def _limits(values, pad=0.0):
    lo, hi = float(np.min(values)), float(np.max(values))
    if hi == lo:
        lo, hi = lo - 0.5, hi + 0.5
    span = hi - lo
    return lo - pad * span, hi + pad * span


def _polyline(fr: _Frame, x, y, color, dash) -> str:
    pts = " ".join(f"{_num(a)},{_num(b)}" for a, b in zip(fr.px(x), fr.py(y)))
    d = f' stroke-dasharray="{dash}"' if dash else ""
    return f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"{d}/>'


def line_plot(series, spec: PlotSpec) -> str:
    """``series`` is a list of ``(x, y)`` arrays drawn on shared axes."""
    if not series:
        raise ValueError("nothing to plot")
    xs = np.concatenate([np.asarray(s[0], float) for s in series])
    ys = np.concatenate([np.asarray(s[1], float) for s in series])
    fr = _Frame(
        MARGIN["left"],
        MARGIN["top"],
        WIDTH - MARGIN["left"] - MARGIN["right"],
        HEIGHT - MARGIN["top"] - MARGIN["bottom"],
        _limits(xs),
        _limits(ys, pad=0.05),
    )
    body = fr.axes(spec.xlabel, spec.ylabel, spec.title)
    for i, (x, y) in enumerate(series):
        body.append(_polyline(fr, x, y, COLORS[i % len(COLORS)], DASHES[i % len(DASHES)]))
    for i, label in enumerate(spec.labels[: len(series)]):
        ly = MARGIN["top"] + 14 + 16 * i
        lx = WIDTH - MARGIN["right"] - 150
        color, dash = COLORS[i % len(COLORS)], DASHES[i % len(DASHES)]
        d = f' stroke-dasharray="{dash}"' if dash else ""
        body.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 24}" y2="{ly}" stroke="{color}" stroke-width="1.5"{d}/>')
        body.append(f'<text x="{lx + 30}" y="{ly + 4}" font-size="11">{escape(label)}</text>')
    return _document(WIDTH, HEIGHT, body)


def contour_plot(panels, spec: PlotSpec) -> str:
    """Side-by-side contour panels; each panel is ``(xs, ys, Z)`` with ``Z[j, i]`` at ``(xs[i], ys[j])``."""
    if not panels:
        raise ValueError("nothing to plot")
    pw = 360
    width = pw * len(panels)
    body = []
    for k, (xs, ys, Z) in enumerate(panels):
        xs, ys, Z = (np.asarray(a, float) for a in (xs, ys, Z))
        fr = _Frame(k * pw + 60, 40, pw - 80, pw - 80, _limits(xs), _limits(ys))
        title = spec.labels[k] if k < len(spec.labels) else spec.title
        body += fr.axes(spec.xlabel, spec.ylabel, title)
        zmax = float(Z.max())
        if zmax <= 0:
            continue
        gen = contourpy.contour_generator(xs, ys, Z, name="serial")
        for j, lev in enumerate(zmax * (np.arange(1, spec.levels + 1) / (spec.levels + 1))):
            color = COLORS[j % len(COLORS)]
            for line in gen.lines(float(lev)):
                body.append(_polyline(fr, line[:, 0], line[:, 1], color, ""))
    return _document(width, pw, body)
