"""Minimal deterministic SVG plot emission.

Fixed 800x600 viewBox, fixed element order, fixed coordinate formatting,
no timestamps or generated ids, so identical data yields identical bytes.
Heatmaps use a documented 5-stop color gradient.
"""

from __future__ import annotations

import math

WIDTH = 800
HEIGHT = 600
MARGIN_LEFT = 70
MARGIN_RIGHT = 25
MARGIN_TOP = 40
MARGIN_BOTTOM = 55

# 5-stop gradient (dark violet -> blue -> teal -> green -> yellow)
GRADIENT = (
    (0.00, (68, 1, 84)),
    (0.25, (59, 82, 139)),
    (0.50, (33, 145, 140)),
    (0.75, (94, 201, 98)),
    (1.00, (253, 231, 37)),
)

OBC_COLOR = "#d62728"
PBC_COLOR = "#1f77b4"
LINE_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _f(x: float) -> str:
    """Fixed 2-decimal pixel coordinates (deterministic, compact)."""
    return f"{x:.2f}"


def gradient_color(t: float) -> str:
    t = min(max(t, 0.0), 1.0)
    for (t0, c0), (t1, c1) in zip(GRADIENT, GRADIENT[1:]):
        if t <= t1:
            w = 0.0 if t1 == t0 else (t - t0) / (t1 - t0)
            rgb = tuple(round(a + w * (b - a)) for a, b in zip(c0, c1))
            return "#%02x%02x%02x" % rgb
    return "#%02x%02x%02x" % GRADIENT[-1][1]


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / max(n - 1, 1)
    mag = 10.0 ** math.floor(math.log10(raw)) if raw > 0 else 1.0
    for m in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= m * mag:
            step = m * mag
            break
    start = math.ceil(lo / step) * step
    out = []
    v = start
    while v <= hi + 1e-12 * max(abs(lo), abs(hi), 1.0):
        out.append(0.0 if abs(v) < step * 1e-9 else v)
        v += step
    return out


def _tick_label(v: float) -> str:
    return f"{v:.6g}"


class Axes:
    """Data-to-pixel mapping plus frame/tick/label rendering."""

    def __init__(self, x_range, y_range, title="", xlabel="", ylabel=""):
        self.x0, self.x1 = float(x_range[0]), float(x_range[1])
        self.y0, self.y1 = float(y_range[0]), float(y_range[1])
        if self.x1 == self.x0:
            self.x1 = self.x0 + 1.0
        if self.y1 == self.y0:
            self.y1 = self.y0 + 1.0
        self.title, self.xlabel, self.ylabel = title, xlabel, ylabel
        self.elements: list[str] = []

    def px(self, x: float) -> float:
        span = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
        return MARGIN_LEFT + (x - self.x0) / (self.x1 - self.x0) * span

    def py(self, y: float) -> float:
        span = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
        return HEIGHT - MARGIN_BOTTOM - (y - self.y0) / (self.y1 - self.y0) * span

    def add(self, element: str):
        self.elements.append(element)

    def circle(self, x, y, r, color):
        self.add(
            f'<circle cx="{_f(self.px(x))}" cy="{_f(self.py(y))}" r="{_f(r)}" '
            f'fill="{color}"/>'
        )

    def diamond(self, x, y, r, color):
        cx, cy = self.px(x), self.py(y)
        pts = " ".join(
            f"{_f(px)},{_f(py)}"
            for px, py in (
                (cx, cy - r), (cx + r, cy), (cx, cy + r), (cx - r, cy)
            )
        )
        self.add(f'<polygon points="{pts}" fill="{color}"/>')

    def polyline(self, xs, ys, color, width=1.5):
        pts = " ".join(f"{_f(self.px(x))},{_f(self.py(y))}" for x, y in zip(xs, ys))
        self.add(
            f'<polyline points="{pts}" fill="none" stroke="{color}" '
            f'stroke-width="{width:g}"/>'
        )

    def cell(self, x_lo, x_hi, y_lo, y_hi, color):
        x, y = self.px(x_lo), self.py(y_hi)
        w, h = self.px(x_hi) - self.px(x_lo), self.py(y_lo) - self.py(y_hi)
        self.add(
            f'<rect x="{_f(x)}" y="{_f(y)}" width="{_f(w + 0.2)}" '
            f'height="{_f(h + 0.2)}" fill="{color}"/>'
        )

    def text(self, x_px, y_px, content, size=13, anchor="middle", rotate=None):
        transform = (
            f' transform="rotate(-90 {_f(x_px)} {_f(y_px)})"' if rotate else ""
        )
        self.add(
            f'<text x="{_f(x_px)}" y="{_f(y_px)}" font-family="sans-serif" '
            f'font-size="{size}" text-anchor="{anchor}"{transform}>{content}</text>'
        )

    def _frame(self) -> list[str]:
        parts = [
            f'<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" '
            f'width="{WIDTH - MARGIN_LEFT - MARGIN_RIGHT}" '
            f'height="{HEIGHT - MARGIN_TOP - MARGIN_BOTTOM}" '
            'fill="none" stroke="#333333" stroke-width="1"/>'
        ]
        bottom = HEIGHT - MARGIN_BOTTOM
        for v in _ticks(self.x0, self.x1):
            x = self.px(v)
            parts.append(
                f'<line x1="{_f(x)}" y1="{bottom}" x2="{_f(x)}" '
                f'y2="{bottom + 5}" stroke="#333333" stroke-width="1"/>'
            )
            parts.append(
                f'<text x="{_f(x)}" y="{bottom + 20}" font-family="sans-serif" '
                f'font-size="12" text-anchor="middle">{_tick_label(v)}</text>'
            )
        for v in _ticks(self.y0, self.y1):
            y = self.py(v)
            parts.append(
                f'<line x1="{MARGIN_LEFT - 5}" y1="{_f(y)}" x2="{MARGIN_LEFT}" '
                f'y2="{_f(y)}" stroke="#333333" stroke-width="1"/>'
            )
            parts.append(
                f'<text x="{MARGIN_LEFT - 8}" y="{_f(y + 4)}" '
                f'font-family="sans-serif" font-size="12" '
                f'text-anchor="end">{_tick_label(v)}</text>'
            )
        if self.title:
            parts.append(
                f'<text x="{WIDTH // 2}" y="{MARGIN_TOP - 14}" '
                f'font-family="sans-serif" font-size="16" '
                f'text-anchor="middle">{self.title}</text>'
            )
        if self.xlabel:
            parts.append(
                f'<text x="{WIDTH // 2}" y="{HEIGHT - 12}" '
                f'font-family="sans-serif" font-size="14" '
                f'text-anchor="middle">{self.xlabel}</text>'
            )
        if self.ylabel:
            parts.append(
                f'<text x="18" y="{HEIGHT // 2}" font-family="sans-serif" '
                f'font-size="14" text-anchor="middle" '
                f'transform="rotate(-90 18 {HEIGHT // 2})">{self.ylabel}</text>'
            )
        return parts

    def render(self) -> str:
        body = "\n".join(self._frame() + self.elements)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}">\n'
            f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>\n'
            f"{body}\n</svg>\n"
        )


def scatter_svg(series, title="", xlabel="", ylabel=""):
    """Scatter plot; series is a list of (label, xs, ys, color, marker)."""
    all_x = [x for _, xs, _, _, _ in series for x in xs] or [0.0, 1.0]
    all_y = [y for _, _, ys, _, _ in series for y in ys] or [0.0, 1.0]
    pad_x = 0.05 * (max(all_x) - min(all_x)) or 0.5
    pad_y = 0.05 * (max(all_y) - min(all_y)) or 0.5
    ax = Axes(
        (min(all_x) - pad_x, max(all_x) + pad_x),
        (min(all_y) - pad_y, max(all_y) + pad_y),
        title=title, xlabel=xlabel, ylabel=ylabel,
    )
    for i, (label, xs, ys, color, marker) in enumerate(series):
        for x, y in zip(xs, ys):
            if marker == "diamond":
                ax.diamond(x, y, 4.0, color)
            else:
                ax.circle(x, y, 2.5, color)
        ax.text(WIDTH - MARGIN_RIGHT - 10, MARGIN_TOP + 18 + 18 * i, label,
                size=13, anchor="end")
    return ax.render()


def line_svg(series, title="", xlabel="", ylabel="", logy=False):
    """Line plot; series is a list of (label, xs, ys); colors cycle."""

    def ty(v):
        return math.log10(v) if logy else v

    all_x = [x for _, xs, _ in series for x in xs] or [0.0, 1.0]
    all_y = [ty(y) for _, _, ys in series for y in ys if (not logy or y > 0)] or [0.0, 1.0]
    pad_y = 0.08 * (max(all_y) - min(all_y)) or 0.5
    ax = Axes(
        (min(all_x), max(all_x)),
        (min(all_y) - pad_y, max(all_y) + pad_y),
        title=title, xlabel=xlabel,
        ylabel=(f"log10 {ylabel}" if logy else ylabel),
    )
    for i, (label, xs, ys) in enumerate(series):
        color = LINE_COLORS[i % len(LINE_COLORS)]
        pts = [(x, ty(y)) for x, y in zip(xs, ys) if (not logy or y > 0)]
        if pts:
            ax.polyline([p[0] for p in pts], [p[1] for p in pts], color)
        ax.text(WIDTH - MARGIN_RIGHT - 10, MARGIN_TOP + 18 + 18 * i,
                f"{label}", size=13, anchor="end")
    return ax.render()


def heatmap_svg(matrix, x_edges, y_edges, title="", xlabel="", ylabel="",
                overlay=None, vmin=None, vmax=None):
    """Heatmap of matrix[i, j] over cell (y_edges[i:i+2], x_edges[j:j+2]).

    overlay is an optional (xs, ys, label) polyline drawn on top.
    """
    lo = float(min(v for row in matrix for v in row)) if vmin is None else vmin
    hi = float(max(v for row in matrix for v in row)) if vmax is None else vmax
    if hi <= lo:
        hi = lo + 1.0
    ax = Axes((x_edges[0], x_edges[-1]), (y_edges[0], y_edges[-1]),
              title=title, xlabel=xlabel, ylabel=ylabel)
    cells = []
    for i in range(len(y_edges) - 1):
        for j in range(len(x_edges) - 1):
            t = (float(matrix[i][j]) - lo) / (hi - lo)
            cells.append((x_edges[j], x_edges[j + 1], y_edges[i], y_edges[i + 1],
                          gradient_color(t)))
    for x0, x1, y0, y1, color in cells:
        ax.cell(x0, x1, y0, y1, color)
    if overlay is not None:
        xs, ys, label = overlay
        ax.polyline(xs, ys, "#ffffff", width=2.0)
        ax.text(WIDTH - MARGIN_RIGHT - 10, MARGIN_TOP + 18, label, size=13,
                anchor="end")
    return ax.render()
