"""Minimal self-contained SVG emission for region/polygon figures."""

from __future__ import annotations

import time

__all__ = ["SvgCanvas", "compose"]

_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"]


class SvgCanvas:
    """Fixed-viewport canvas mapping data coordinates to pixels."""

    def __init__(self, x_range, y_range, width=640, height=480, margin=40):
        self.x_range, self.y_range = x_range, y_range
        self.width, self.height, self.margin = width, height, margin
        self.parts: list = []

    def _tx(self, x):
        x0, x1 = self.x_range
        return self.margin + (x - x0) / (x1 - x0) * (self.width - 2 * self.margin)

    def _ty(self, y):
        y0, y1 = self.y_range
        return self.height - self.margin - (y - y0) / (y1 - y0) * (self.height - 2 * self.margin)

    def polyline(self, points, color_index=0, width=1.2, dashed=False):
        if len(points) < 2:
            return
        pts = " ".join(f"{self._tx(x):.2f},{self._ty(y):.2f}" for x, y in points)
        dash = ' stroke-dasharray="6,4"' if dashed else ""
        self.parts.append(
            f'<polyline fill="none" stroke="{_PALETTE[color_index % len(_PALETTE)]}"'
            f' stroke-width="{width}"{dash} points="{pts}"/>'
        )

    def markers(self, points, color_index=0, radius=3.0):
        for x, y in points:
            self.parts.append(
                f'<circle cx="{self._tx(x):.2f}" cy="{self._ty(y):.2f}" r="{radius}"'
                f' fill="{_PALETTE[color_index % len(_PALETTE)]}"/>'
            )

    def axes(self):
        x0, x1 = self.x_range
        y0, y1 = self.y_range
        if y0 < 0 < y1:
            self.parts.append(self._line(x0, 0.0, x1, 0.0))
        if x0 < 0 < x1:
            self.parts.append(self._line(0.0, y0, 0.0, y1))
        self.parts.append(
            f'<rect x="{self.margin}" y="{self.margin}" width="{self.width - 2 * self.margin}"'
            f' height="{self.height - 2 * self.margin}" fill="none" stroke="#999" stroke-width="0.8"/>'
        )

    def _line(self, xa, ya, xb, yb):
        return (
            f'<line x1="{self._tx(xa):.2f}" y1="{self._ty(ya):.2f}"'
            f' x2="{self._tx(xb):.2f}" y2="{self._ty(yb):.2f}" stroke="#bbb" stroke-width="0.8"/>'
        )

    def label(self, text, x_frac=0.5, y_px=20):
        self.parts.append(
            f'<text x="{self.width * x_frac:.0f}" y="{y_px}" font-family="monospace"'
            f' font-size="13" text-anchor="middle">{text}</text>'
        )

    def group(self, dx=0.0) -> str:
        return f'<g transform="translate({dx:.1f},0)">' + "\n".join(self.parts) + "</g>"

    def render(self, timestamp=True) -> str:
        head = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" height="{self.height}"'
            f' viewBox="0 0 {self.width} {self.height}">',
        ]
        if timestamp:
            head.append(f"<!-- generated {time.strftime('%Y-%m-%dT%H:%M:%S')} -->")
        head.append('<rect width="100%" height="100%" fill="white"/>')
        return "\n".join(head + self.parts + ["</svg>"]) + "\n"


def compose(canvases, timestamp=True) -> str:
    """Lay canvases out horizontally in a single self-contained SVG."""
    width = sum(c.width for c in canvases)
    height = max(c.height for c in canvases)
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}"'
        f' viewBox="0 0 {width} {height}">',
    ]
    if timestamp:
        head.append(f"<!-- generated {time.strftime('%Y-%m-%dT%H:%M:%S')} -->")
    head.append('<rect width="100%" height="100%" fill="white"/>')
    dx = 0.0
    for c in canvases:
        head.append(c.group(dx))
        dx += c.width
    return "\n".join(head + ["</svg>"]) + "\n"
