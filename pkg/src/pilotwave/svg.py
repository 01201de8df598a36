"""Minimal deterministic SVG writer: axes, polylines, markers, bars, heat maps.

Coordinates are formatted with a fixed number of decimals so identical data
always produce identical bytes.
"""

import math
from dataclasses import dataclass, field

WIDTH = 640
HEIGHT = 420
PAD_L, PAD_R, PAD_T, PAD_B = 60, 20, 30, 45
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")


def _f(v):
    return f"{v:.2f}"


def _esc(s):
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _nice_ticks(lo, hi, n=5):
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=10 * mag)
    start = math.ceil(lo / step - 1e-9)
    ticks = []
    k = start
    while k * step <= hi + 1e-9 * step:
        ticks.append(round(k * step, 10))
        k += 1
    return ticks


@dataclass
class Figure:
    """One panel with linear axes; call the draw methods, then ``render``."""

    x_range: tuple
    y_range: tuple
    title: str = ""
    x_label: str = "x"
    y_label: str = "y"
    width: int = WIDTH
    height: int = HEIGHT
    _items: list = field(default_factory=list)

    def sx(self, x):
        x0, x1 = self.x_range
        return PAD_L + (x - x0) / (x1 - x0) * (self.width - PAD_L - PAD_R)

    def sy(self, y):
        y0, y1 = self.y_range
        return self.height - PAD_B - (y - y0) / (y1 - y0) * (self.height - PAD_T - PAD_B)

    def polyline(self, xs, ys, color=PALETTE[0], width=1.2):
        pts = []
        for x, y in zip(xs, ys):
            if math.isfinite(x) and math.isfinite(y):
                pts.append(f"{_f(self.sx(x))},{_f(self.sy(y))}")
            elif pts:
                self._emit_line(pts, color, width)
                pts = []
        if pts:
            self._emit_line(pts, color, width)

    def _emit_line(self, pts, color, width):
        self._items.append(f'<polyline fill="none" stroke="{color}" stroke-width="{width}" '
                           f'points="{" ".join(pts)}"/>')

    def markers(self, xs, ys, color=PALETTE[0], r=2.0):
        for x, y in zip(xs, ys):
            self._items.append(f'<circle cx="{_f(self.sx(x))}" cy="{_f(self.sy(y))}" r="{r}" '
                               f'fill="{color}"/>')

    def bars(self, lefts, width, heights, color="#9ecae1"):
        base = self.sy(max(self.y_range[0], 0.0))
        for x, h in zip(lefts, heights):
            top = self.sy(h)
            self._items.append(
                f'<rect x="{_f(self.sx(x))}" y="{_f(top)}" '
                f'width="{_f(self.sx(x + width) - self.sx(x))}" height="{_f(base - top)}" '
                f'fill="{color}" stroke="#6baed6" stroke-width="0.3"/>')

    def heatmap(self, xs, ys, values, levels=12):
        """Filled-contour look: each cell coloured by its quantised level; NaN cells left blank."""
        finite = [v for row in values for v in row if math.isfinite(v)]
        if not finite:
            return
        lo, hi = min(finite), max(finite)
        span = hi - lo or 1.0
        dx = (xs[-1] - xs[0]) / max(len(xs) - 1, 1)
        dy = (ys[-1] - ys[0]) / max(len(ys) - 1, 1)
        for j, y in enumerate(ys):
            for i, x in enumerate(xs):
                v = values[j][i]
                if not math.isfinite(v):
                    continue
                level = min(int((v - lo) / span * levels), levels - 1)
                x0, x1 = self.sx(x - dx / 2), self.sx(x + dx / 2)
                y0, y1 = self.sy(y + dy / 2), self.sy(y - dy / 2)
                self._items.append(
                    f'<rect x="{_f(x0)}" y="{_f(y0)}" width="{_f(x1 - x0)}" '
                    f'height="{_f(y1 - y0)}" fill="{_ramp(level / (levels - 1))}"/>')
        self._items.append(
            f'<text x="{self.width - PAD_R}" y="{PAD_T - 8}" text-anchor="end" '
            f'font-size="10">range [{lo:.3g}, {hi:.3g}]</text>')

    def _axes(self):
        out = []
        x0, x1 = self.x_range
        y0, y1 = self.y_range
        left, right = PAD_L, self.width - PAD_R
        top, bottom = PAD_T, self.height - PAD_B
        out.append(f'<rect x="{left}" y="{top}" width="{right - left}" height="{bottom - top}" '
                   'fill="none" stroke="#000" stroke-width="0.8"/>')
        for t in _nice_ticks(x0, x1):
            px = _f(self.sx(t))
            out.append(f'<line x1="{px}" y1="{bottom}" x2="{px}" y2="{bottom + 4}" stroke="#000"/>')
            out.append(f'<text x="{px}" y="{bottom + 16}" text-anchor="middle" '
                       f'font-size="11">{t:g}</text>')
        for t in _nice_ticks(y0, y1):
            py = _f(self.sy(t))
            out.append(f'<line x1="{left - 4}" y1="{py}" x2="{left}" y2="{py}" stroke="#000"/>')
            out.append(f'<text x="{left - 7}" y="{py}" text-anchor="end" dominant-baseline="middle" '
                       f'font-size="11">{t:g}</text>')
        out.append(f'<text x="{(left + right) / 2}" y="{self.height - 8}" text-anchor="middle" '
                   f'font-size="12">{_esc(self.x_label)}</text>')
        out.append(f'<text x="14" y="{(top + bottom) / 2}" text-anchor="middle" font-size="12" '
                   f'transform="rotate(-90 14 {(top + bottom) / 2})">{_esc(self.y_label)}</text>')
        if self.title:
            out.append(f'<text x="{left}" y="{top - 10}" font-size="13">{_esc(self.title)}</text>')
        return out

    def render(self):
        clip = (f'<clipPath id="plot"><rect x="{PAD_L}" y="{PAD_T}" '
                f'width="{self.width - PAD_L - PAD_R}" height="{self.height - PAD_T - PAD_B}"/>'
                '</clipPath>')
        lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" '
                 f'height="{self.height}" viewBox="0 0 {self.width} {self.height}">',
                 f'<defs>{clip}</defs>',
                 '<rect width="100%" height="100%" fill="#fff"/>',
                 '<g clip-path="url(#plot)">', *self._items, '</g>', *self._axes(), '</svg>']
        return "\n".join(lines) + "\n"

    def save(self, path):
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.render())


def _ramp(u):
    """Blue-white-red colour ramp on [0, 1]."""
    u = min(max(u, 0.0), 1.0)
    if u < 0.5:
        k = u / 0.5
        r, g, b = 49 + k * (247 - 49), 54 + k * (247 - 54), 149 + k * (247 - 149)
    else:
        k = (u - 0.5) / 0.5
        r, g, b = 247 + k * (165 - 247), 247 + k * (0 - 247), 247 + k * (38 - 247)
    return f"#{int(round(r)):02x}{int(round(g)):02x}{int(round(b)):02x}"
