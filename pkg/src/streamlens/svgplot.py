"""Minimal deterministic SVG plotting: line plots and heatmaps.

No external plotting dependency; output bytes depend only on the data, so
CLI re-runs are byte-identical.
"""

from __future__ import annotations

import numpy as np

WIDTH, HEIGHT = 720, 480
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 72, 24, 40, 56

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]

# viridis anchors, interpolated linearly
_VIRIDIS = [
    (68, 1, 84), (71, 44, 122), (59, 81, 139), (44, 113, 142),
    (33, 144, 141), (39, 173, 129), (92, 200, 99), (170, 220, 50),
    (253, 231, 37),
]


def _fmt(v):
    return f"{v:.6g}"


def _color(t):
    t = min(max(float(t), 0.0), 1.0)
    pos = t * (len(_VIRIDIS) - 1)
    i = min(int(pos), len(_VIRIDIS) - 2)
    f = pos - i
    r, g, b = (
        round(_VIRIDIS[i][c] + f * (_VIRIDIS[i + 1][c] - _VIRIDIS[i][c]))
        for c in range(3)
    )
    return f"#{r:02x}{g:02x}{b:02x}"


def _ticks(lo, hi, target=5):
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / target
    mag = 10.0 ** np.floor(np.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = np.ceil(lo / step) * step
    ticks = []
    v = first
    while v <= hi + 1e-12 * step:
        ticks.append(0.0 if abs(v) < 1e-12 * step else v)
        v += step
    return ticks


def _log_ticks(lo, hi):
    ticks = []
    e = int(np.floor(np.log10(lo)))
    while 10.0 ** e <= hi * 1.0000001:
        if 10.0 ** e >= lo * 0.9999999:
            ticks.append(10.0 ** e)
        e += 1
    return ticks or [lo, hi]


class _Canvas:
    def __init__(self, title, xlabel, ylabel):
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
            f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
            "<!-- streamlens plot -->",
            f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
            f'<text x="{WIDTH / 2}" y="24" font-family="sans-serif" '
            f'font-size="15" text-anchor="middle">{title}</text>',
            f'<text x="{WIDTH / 2}" y="{HEIGHT - 12}" font-family="sans-serif" '
            f'font-size="12" text-anchor="middle">{xlabel}</text>',
            f'<text x="16" y="{HEIGHT / 2}" font-family="sans-serif" '
            f'font-size="12" text-anchor="middle" '
            f'transform="rotate(-90 16 {HEIGHT / 2})">{ylabel}</text>',
        ]

    def add(self, fragment):
        self.parts.append(fragment)

    def write(self, path):
        self.parts.append("</svg>")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(self.parts) + "\n")


class _Axes:
    """Maps data coordinates to pixels inside the plot box."""

    def __init__(self, xlim, ylim, logx=False, logy=False):
        self.logx, self.logy = logx, logy
        self.x0, self.x1 = (np.log10(xlim) if logx else np.asarray(xlim, float))
        self.y0, self.y1 = (np.log10(ylim) if logy else np.asarray(ylim, float))
        if self.x1 <= self.x0:
            self.x1 = self.x0 + 1.0
        if self.y1 <= self.y0:
            self.y1 = self.y0 + 1.0

    def px(self, x):
        x = np.log10(x) if self.logx else x
        return MARGIN_L + (x - self.x0) / (self.x1 - self.x0) * (
            WIDTH - MARGIN_L - MARGIN_R
        )

    def py(self, y):
        y = np.log10(y) if self.logy else y
        return HEIGHT - MARGIN_B - (y - self.y0) / (self.y1 - self.y0) * (
            HEIGHT - MARGIN_T - MARGIN_B
        )

    def frame(self, canvas, xlim, ylim):
        bx0, by0 = MARGIN_L, MARGIN_T
        bw, bh = WIDTH - MARGIN_L - MARGIN_R, HEIGHT - MARGIN_T - MARGIN_B
        canvas.add(
            f'<rect x="{bx0}" y="{by0}" width="{bw}" height="{bh}" '
            'fill="none" stroke="black"/>'
        )
        xticks = _log_ticks(*xlim) if self.logx else _ticks(*xlim)
        yticks = _log_ticks(*ylim) if self.logy else _ticks(*ylim)
        for t in xticks:
            x = self.px(t)
            canvas.add(
                f'<line x1="{_fmt(x)}" y1="{HEIGHT - MARGIN_B}" x2="{_fmt(x)}" '
                f'y2="{HEIGHT - MARGIN_B + 5}" stroke="black"/>'
            )
            canvas.add(
                f'<text x="{_fmt(x)}" y="{HEIGHT - MARGIN_B + 18}" '
                f'font-family="sans-serif" font-size="11" '
                f'text-anchor="middle">{_fmt(t)}</text>'
            )
        for t in yticks:
            y = self.py(t)
            canvas.add(
                f'<line x1="{MARGIN_L - 5}" y1="{_fmt(y)}" x2="{MARGIN_L}" '
                f'y2="{_fmt(y)}" stroke="black"/>'
            )
            canvas.add(
                f'<text x="{MARGIN_L - 8}" y="{_fmt(y + 4)}" '
                f'font-family="sans-serif" font-size="11" '
                f'text-anchor="end">{_fmt(t)}</text>'
            )


def line_plot(path, xs, ys_list, labels=None, title="", xlabel="", ylabel="",
              logx=False, logy=False, vline=None):
    """One or more polylines over a shared x grid (list of (x, y) pairs)."""
    series = []
    for i, ys in enumerate(ys_list):
        x = np.asarray(xs[i] if isinstance(xs, (list, tuple)) else xs, float)
        y = np.asarray(ys, float)
        keep = np.isfinite(x) & np.isfinite(y)
        if logx:
            keep &= x > 0
        if logy:
            keep &= y > 0
        series.append((x[keep], y[keep]))
    allx = np.concatenate([s[0] for s in series])
    ally = np.concatenate([s[1] for s in series])
    xlim = (allx.min(), allx.max())
    ylim = (ally.min(), ally.max())
    if not logy:
        padding = 0.05 * (ylim[1] - ylim[0] or 1.0)
        ylim = (ylim[0] - padding, ylim[1] + padding)
    canvas = _Canvas(title, xlabel, ylabel)
    ax = _Axes(xlim, ylim, logx, logy)
    ax.frame(canvas, xlim, ylim)
    for i, (x, y) in enumerate(series):
        pts = " ".join(f"{_fmt(ax.px(a))},{_fmt(ax.py(b))}" for a, b in zip(x, y))
        color = PALETTE[i % len(PALETTE)]
        canvas.add(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                   'stroke-width="1.5"/>')
        if labels and i < len(labels):
            canvas.add(
                f'<text x="{WIDTH - MARGIN_R - 6}" y="{MARGIN_T + 16 + 14 * i}" '
                f'font-family="sans-serif" font-size="11" text-anchor="end" '
                f'fill="{color}">{labels[i]}</text>'
            )
    if vline is not None:
        x = ax.px(vline)
        canvas.add(
            f'<line x1="{_fmt(x)}" y1="{MARGIN_T}" x2="{_fmt(x)}" '
            f'y2="{HEIGHT - MARGIN_B}" stroke="#d62728" stroke-dasharray="4 3"/>'
        )
    canvas.write(path)


def heatmap(path, matrix, x_values, y_values, title="", xlabel="", ylabel="",
            logy=False, coi=None, points=None, max_cols=512):
    """Matrix heatmap with rows along y. Optional coi curve and point overlay.

    Wide matrices are column-averaged down to ``max_cols`` cells.
    """
    Z = np.asarray(matrix, dtype=np.float64)
    x = np.asarray(x_values, dtype=np.float64)
    y = np.asarray(y_values, dtype=np.float64)
    if Z.shape[1] > max_cols:
        stride = int(np.ceil(Z.shape[1] / max_cols))
        upto = (Z.shape[1] // stride) * stride
        Z = Z[:, :upto].reshape(Z.shape[0], -1, stride).mean(axis=2)
        x = x[:upto:stride]
    lo, hi = float(np.nanmin(Z)), float(np.nanmax(Z))
    span = hi - lo or 1.0
    xlim = (x.min(), x.max())
    ylim = (y.min(), y.max())
    canvas = _Canvas(title, xlabel, ylabel)
    ax = _Axes(xlim, ylim, logx=False, logy=logy)
    ncols = Z.shape[1]
    cell_w = (WIDTH - MARGIN_L - MARGIN_R) / ncols
    edges_y = [ax.py(v) for v in y]
    for r in range(Z.shape[0]):
        y_hi = edges_y[r]
        y_lo = edges_y[r + 1] if r + 1 < Z.shape[0] else ax.py(ylim[1])
        height = abs(y_hi - y_lo) + 0.5
        top = min(y_hi, y_lo)
        row = Z[r]
        for c in range(ncols):
            color = _color((row[c] - lo) / span)
            canvas.add(
                f'<rect x="{_fmt(MARGIN_L + c * cell_w)}" y="{_fmt(top)}" '
                f'width="{_fmt(cell_w + 0.5)}" height="{_fmt(height)}" '
                f'fill="{color}"/>'
            )
    if coi is not None:
        cx = np.asarray(x_values, dtype=np.float64)
        cy = np.clip(np.asarray(coi, dtype=np.float64), ylim[0], ylim[1])
        keep = cy > 0 if logy else np.ones_like(cy, bool)
        pts = " ".join(
            f"{_fmt(ax.px(a))},{_fmt(ax.py(b))}"
            for a, b in zip(cx[keep][::4], cy[keep][::4])
        )
        canvas.add(f'<polyline points="{pts}" fill="none" stroke="white" '
                   'stroke-width="1.5" stroke-dasharray="5 4"/>')
    if points is not None:
        for px_val, py_val in points:
            canvas.add(
                f'<circle cx="{_fmt(ax.px(px_val))}" cy="{_fmt(ax.py(py_val))}" '
                'r="1.2" fill="black"/>'
            )
    ax.frame(canvas, xlim, ylim)
    canvas.write(path)
