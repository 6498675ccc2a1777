"""
SVG tile diagrams for flow orbits.

Each orbit is cut open at position 0 and drawn as a strip of rectangles, one
per tile, widths proportional to the exact tile lengths. Documentation only.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape

from veemap.engine.flow_engine import FlowOrbit

STRIP_WIDTH = 640
STRIP_HEIGHT = 36
GAP = 18

SYMBOL_COLORS = {
    "#": "#444444",
    "@": "#8e44ad",
    "0": "#2e86c1",
    "1": "#e67e22",
}


def _color(symbol: str) -> str:
    return SYMBOL_COLORS.get(symbol, SYMBOL_COLORS.get(symbol[:1], "#7f8c8d"))


def _strip(o: FlowOrbit, y: int, scale: Fraction, label: str) -> list[str]:
    parts = [f'<text x="0" y="{y - 4}" font-size="12">{escape(label)}</text>']
    x = Fraction(0)
    for t in o.tiles:
        width = t.length * scale
        parts.append(
            f'<rect x="{float(x):.3f}" y="{y}" width="{float(width):.3f}" '
            f'height="{STRIP_HEIGHT}" fill="{_color(t.symbol)}" stroke="white"/>'
        )
        parts.append(
            f'<text x="{float(x + width / 2):.3f}" y="{y + STRIP_HEIGHT // 2 + 4}" '
            f'font-size="11" fill="white" text-anchor="middle">{escape(t.symbol)}</text>'
        )
        x += width
    base = o.basepoint * scale
    parts.append(
        f'<line x1="{float(base):.3f}" y1="{y}" x2="{float(base):.3f}" '
        f'y2="{y + STRIP_HEIGHT}" stroke="red" stroke-width="2"/>'
    )
    return parts


def orbit_svg(orbits: Sequence[FlowOrbit], labels: Sequence[str] | None = None) -> str:
    """
    Stack the orbits as strips on a shared scale (usually a before/after pair).

    Args:
        orbits: Orbits to draw, top to bottom.
        labels: One caption per orbit; defaults to "orbit 0", "orbit 1", ...

    Returns:
        A standalone SVG document.
    """
    if not orbits:
        return '<svg xmlns="http://www.w3.org/2000/svg" width="0" height="0"/>\n'
    labels = list(labels) if labels is not None else [f"orbit {i}" for i in range(len(orbits))]
    widest = max(o.circumference for o in orbits)
    scale = Fraction(STRIP_WIDTH) / widest
    row = STRIP_HEIGHT + GAP
    height = row * len(orbits) + GAP
    body: list[str] = []
    for i, (o, label) in enumerate(zip(orbits, labels)):
        body.extend(_strip(o, GAP + i * row, scale, label))
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{STRIP_WIDTH}" height="{height}">\n'
        + "\n".join(body)
        + "\n</svg>\n"
    )
