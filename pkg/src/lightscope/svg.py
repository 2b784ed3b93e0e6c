"""Minimal SVG polyline plots, no external dependencies."""
from __future__ import annotations

import numpy as np

WIDTH, HEIGHT, MARGIN = 720, 420, 45
COLORS = ["#2565ae", "#d95f02", "#1b9e77", "#e7298a", "#66a61e", "#7570b3"]


def write_svg(path, x, series: dict, title: str = "") -> None:
    x = np.asarray(x, dtype=float)
    ymax = max(float(np.max(v)) for v in series.values()) or 1.0
    xmin, xmax = float(x[0]), float(x[-1]) if x.size > 1 else (float(x[0]) + 1.0)
    span_x = (xmax - xmin) or 1.0

    def sx(v):
        return MARGIN + (v - xmin) / span_x * (WIDTH - 2 * MARGIN)

    def sy(v):
        return HEIGHT - MARGIN - v / ymax * (HEIGHT - 2 * MARGIN)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2}" y="20" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{title}</text>',
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" '
        f'y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" '
        f'y2="{HEIGHT - MARGIN}" stroke="black"/>',
    ]
    for i, (name, vals) in enumerate(series.items()):
        pts = " ".join(f"{sx(xx):.2f},{sy(vv):.2f}" for xx, vv in zip(x, vals))
        color = COLORS[i % len(COLORS)]
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                     f'stroke-width="1"/>')
        parts.append(f'<text x="{WIDTH - MARGIN - 120}" y="{MARGIN + 16 * i}" '
                     f'fill="{color}" font-family="sans-serif" font-size="12">'
                     f'{name}</text>')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")
