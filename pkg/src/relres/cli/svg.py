"""Static SVG line charts for sweep tables, written by hand (no plotting library)."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from relres.cli.config import SweepSpec
from relres.errors import EmptyData

MAX_VERTICES = 2000
PANELS = (("coherence", "C_H"), ("discord", "D_T"), ("bures", "B_d"))
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22")
DASHES = ("", "6 3", "2 2", "8 3 2 3")

_PANEL_W, _PANEL_H = 320, 240
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 56, 16, 28, 44
_LEGEND_ROW = 18


def decimate(n: int, limit: int = MAX_VERTICES) -> np.ndarray:
    """Indices of at most ``limit`` evenly spread points, endpoints included."""
    if n <= limit:
        return np.arange(n)
    return np.unique(np.round(np.linspace(0, n - 1, limit)).astype(int))


def _ticks(lo, hi, count=5):
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / count
    mag = 10.0 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step - 1e-9) * step
    out = []
    v = first
    while v <= hi + 1e-9 * step:
        out.append(0.0 if abs(v) < 1e-12 * step else v)
        v += step
    return out


def _tick_label(v):
    return f"{v:.4g}"


def _group(rows):
    series = {}
    for r in rows:
        series.setdefault(r.series, []).append(r)
    return series


def render_svg(rows, spec: SweepSpec) -> str:
    """SVG 1.1 document with one panel per quantifier and one polyline per series.

    Raises:
        EmptyData: ``rows`` is empty.
    """
    rows = list(rows)
    if not rows:
        raise EmptyData("no rows to plot")
    groups = _group(rows)
    log_x = spec.axis.scale == "log"

    xs_all = np.array([r.axis for r in rows], dtype=float)
    if log_x:
        xs_all = np.log10(xs_all)
    x_lo, x_hi = float(np.min(xs_all)), float(np.max(xs_all))
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5

    legend = [k for k in groups if k != ""]
    n_leg = len(legend)
    width = len(PANELS) * _PANEL_W
    height = _PANEL_H + (_LEGEND_ROW * (n_leg + 1) if n_leg else 0)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    pw = _PANEL_W - _MARGIN_L - _MARGIN_R
    ph = _PANEL_H - _MARGIN_T - _MARGIN_B

    for k, (attr, title) in enumerate(PANELS):
        ox = k * _PANEL_W + _MARGIN_L
        oy = _MARGIN_T
        ys_all = np.array([getattr(r, attr) for r in rows], dtype=float)
        finite = ys_all[np.isfinite(ys_all)]
        y_lo = min(0.0, float(finite.min())) if finite.size else 0.0
        y_hi = max(1e-12, float(finite.max())) if finite.size else 1.0
        y_hi += 0.05 * (y_hi - y_lo)

        def px(x):
            return ox + (x - x_lo) / (x_hi - x_lo) * pw

        def py(y):
            return oy + ph - (y - y_lo) / (y_hi - y_lo) * ph

        out.append(f'<g class="panel" id="panel-{escape(title)}">')
        out.append(f'<rect x="{ox}" y="{oy}" width="{pw}" height="{ph}" fill="none" stroke="#333"/>')
        for t in _ticks(x_lo, x_hi):
            x = px(t)
            lab = _tick_label(10.0 ** t if log_x else t)
            out.append(f'<line x1="{x:.2f}" y1="{oy + ph}" x2="{x:.2f}" y2="{oy + ph + 4}" stroke="#333"/>')
            out.append(f'<text x="{x:.2f}" y="{oy + ph + 16}" text-anchor="middle">{escape(lab)}</text>')
        for t in _ticks(y_lo, y_hi):
            y = py(t)
            out.append(f'<line x1="{ox - 4}" y1="{y:.2f}" x2="{ox}" y2="{y:.2f}" stroke="#333"/>')
            out.append(f'<text x="{ox - 6}" y="{y + 4:.2f}" text-anchor="end">{escape(_tick_label(t))}</text>')
        out.append(f'<text class="xlabel" x="{ox + pw / 2:.2f}" y="{oy + ph + 34}" text-anchor="middle">'
                   f'{escape(spec.axis_label)}</text>')
        out.append(f'<text class="ylabel" x="{ox + pw / 2:.2f}" y="{oy - 10}" text-anchor="middle">'
                   f'{escape(title)}</text>')

        for j, (name, grp) in enumerate(groups.items()):
            pts = [(r.axis, getattr(r, attr)) for r in grp]
            pts = [(math.log10(x) if log_x else x, y) for x, y in pts if math.isfinite(y)]
            idx = decimate(len(pts))
            coords = " ".join(f"{px(pts[i][0]):.2f},{py(pts[i][1]):.2f}" for i in idx)
            color = COLORS[j % len(COLORS)]
            dash = DASHES[(j // len(COLORS)) % len(DASHES)]
            dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash_attr} '
                       f'data-series={quoteattr(name)} points="{coords}"/>')
        out.append("</g>")

    if legend:
        y0 = _PANEL_H + _LEGEND_ROW
        out.append('<g class="legend">')
        out.append(f'<text x="8" y="{y0 - 4}">{escape(spec.series_name)}</text>')
        for j, name in enumerate(groups):
            if name == "":
                continue
            y = y0 + j * _LEGEND_ROW
            color = COLORS[j % len(COLORS)]
            dash = DASHES[(j // len(COLORS)) % len(DASHES)]
            dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
            out.append(f'<line x1="12" y1="{y}" x2="40" y2="{y}" stroke="{color}" stroke-width="2"{dash_attr}/>')
            out.append(f'<text x="46" y="{y + 4}">{escape(name)}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
