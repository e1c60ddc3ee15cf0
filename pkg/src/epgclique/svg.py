"""SVG drawings of representations.

Paths sharing grid edges are drawn slightly apart (each vertex is shifted
by 0.06 grid units times its rank) so overlaps stay visible.
"""

from __future__ import annotations

from typing import Iterable
from xml.sax.saxutils import escape

from .grid import EpgRepresentation

UNIT = 40  # pixels per grid unit
MARGIN = 30
OFFSET = 0.06
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
           "#bcbd22", "#7f7f7f")


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


def render_svg(rep: EpgRepresentation, highlight: Iterable[str] | None = None) -> str:
    """SVG 1.1 text: grid lines, one polyline per path, highlighted ids in bold.
    Row numbers grow upwards."""
    marked = set(highlight or ())
    rows = max(rep.max_row(), 1) if rep.paths else 1
    cols = max(rep.max_col(), 1) if rep.paths else 1
    width = cols * UNIT + 2 * MARGIN
    height = rows * UNIT + 2 * MARGIN

    def x_of(c: float) -> str:
        return _fmt(MARGIN + c * UNIT)

    def y_of(r: float) -> str:
        return _fmt(MARGIN + (rows - r) * UNIT)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<g stroke="#dddddd" stroke-width="1">',
    ]
    for r in range(rows + 1):
        out.append(f'<line x1="{x_of(0)}" y1="{y_of(r)}" x2="{x_of(cols)}" y2="{y_of(r)}"/>')
    for c in range(cols + 1):
        out.append(f'<line x1="{x_of(c)}" y1="{y_of(0)}" x2="{x_of(c)}" y2="{y_of(rows)}"/>')
    out.append("</g>")
    for rank, vid in enumerate(sorted(rep.ids)):
        p = rep.path(vid)
        d = OFFSET * rank
        pts = " ".join(f"{x_of(c.col + d)},{y_of(c.row + d)}" for c in p.corners)
        colour = PALETTE[rank % len(PALETTE)]
        width_px = 4 if vid in marked else 2
        label = escape(str(vid))
        out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="{width_px}" points="{pts}">'
                   f"<title>{label}</title></polyline>")
        start = p.corners[0]
        out.append(f'<text x="{x_of(start.col + d)}" y="{y_of(start.row + d)}" font-size="11" '
                   f'fill="{colour}" dx="3" dy="-3">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
