"""SVG rendering of maps, paths, and tether configurations.

Every state gets one arrow, colored by that state's own contribution to the
risk of the whole path; the first state gets a short entry stub so it is
visible too.  Colors come from a linear scale over [0, 0.2], clamped — risks
beyond 0.2 saturate to the hot end.
"""

from __future__ import annotations

import math
from typing import Iterable, List, Optional, Sequence, Tuple

from .tether import TetherState
from .world import GridMap, Path

COLD = (47, 158, 68)   # low risk: green
HOT = (224, 49, 49)    # high risk: red
SCALE_MAX = 0.2


def risk_color(risk: float, scale_max: float = SCALE_MAX) -> str:
    """Hex color for a state risk, linearly interpolated and clamped."""
    t = min(max(risk / scale_max, 0.0), 1.0)
    rgb = tuple(round(c + t * (h - c)) for c, h in zip(COLD, HOT))
    return "#%02x%02x%02x" % rgb


def _arrow(x0: float, y0: float, x1: float, y1: float, color: str) -> str:
    """A line with a manually drawn triangular head (markers can't take
    per-arrow colors portably)."""
    dx, dy = x1 - x0, y1 - y0
    length = math.hypot(dx, dy)
    if length == 0:
        return ""
    ux, uy = dx / length, dy / length
    head = 7.0
    bx, by = x1 - head * ux, y1 - head * uy
    px, py = -uy * head * 0.45, ux * head * 0.45
    return (
        f'<line x1="{x0:.1f}" y1="{y0:.1f}" x2="{bx:.1f}" y2="{by:.1f}" '
        f'stroke="{color}" stroke-width="3" stroke-linecap="round"/>'
        f'<polygon points="{x1:.1f},{y1:.1f} {bx + px:.1f},{by + py:.1f} '
        f'{bx - px:.1f},{by - py:.1f}" fill="{color}"/>'
    )


def render_svg(
    grid: GridMap,
    path: Optional[Path] = None,
    state_risks: Optional[Sequence[float]] = None,
    tether: Optional[TetherState] = None,
    cell_px: int = 36,
    legend: bool = True,
    title: str = "",
) -> str:
    """Build a complete standalone SVG document as a string."""
    rows, cols = grid.n_rows, grid.n_cols
    pad = 10
    legend_h = 46 if legend else 0
    title_h = 24 if title else 0
    width = cols * cell_px + 2 * pad
    height = rows * cell_px + 2 * pad + legend_h + title_h
    ox, oy = pad, pad + title_h

    def cx(col: float) -> float:
        return ox + (col + 0.5) * cell_px

    def cy(row: float) -> float:
        return oy + (row + 0.5) * cell_px

    parts: List[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif">',
        f'<rect width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    if title:
        parts.append(
            f'<text x="{pad}" y="{pad + 12}" font-size="14" fill="#222222">{title}</text>'
        )
    for r in range(rows):
        for c in range(cols):
            fill = "#f8f9fa" if grid.is_viable(r, c) else "#343a40"
            parts.append(
                f'<rect x="{ox + c * cell_px}" y="{oy + r * cell_px}" '
                f'width="{cell_px}" height="{cell_px}" fill="{fill}" '
                f'stroke="#ced4da" stroke-width="1"/>'
            )
    if tether is not None:
        pts = " ".join(
            f"{cx(pc / 2.0):.1f},{cy(pr / 2.0):.1f}" for pr, pc in tether.chain
        )
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="#1c7ed6" '
            f'stroke-width="2.5" stroke-dasharray="6 3"/>'
        )
        for cr, cc in tether.contacts:
            parts.append(
                f'<circle cx="{cx(cc):.1f}" cy="{cy(cr):.1f}" r="5" '
                f'fill="none" stroke="#1c7ed6" stroke-width="2.5"/>'
            )
        ar, ac = tether.anchor.row, tether.anchor.col
        parts.append(
            f'<rect x="{cx(ac) - 5:.1f}" y="{cy(ar) - 5:.1f}" width="10" height="10" '
            f'fill="#1c7ed6"/>'
        )
    if path is not None:
        risks = list(state_risks) if state_risks is not None else [0.0] * len(path)
        if len(risks) != len(path):
            raise ValueError("state_risks must align with the path, one per state")
        states = path.states
        for i, s in enumerate(states):
            color = risk_color(risks[i])
            x1, y1 = cx(s.col), cy(s.row)
            if i == 0:
                # Entry stub: point along the first step, or rightwards for a
                # single-state path.
                if len(states) > 1:
                    dr = states[1].row - s.row
                    dc = states[1].col - s.col
                    n = math.hypot(dr, dc)
                    ux, uy = dc / n, dr / n
                else:
                    ux, uy = 1.0, 0.0
                stub = 0.45 * cell_px
                parts.append(_arrow(x1 - stub * ux, y1 - stub * uy, x1, y1, color))
            else:
                p = states[i - 1]
                parts.append(_arrow(cx(p.col), cy(p.row), x1, y1, color))
    if legend:
        ly = oy + rows * cell_px + 14
        steps = 40
        bar_w = min(200, cols * cell_px)
        for k in range(steps):
            v = SCALE_MAX * k / (steps - 1)
            parts.append(
                f'<rect x="{ox + k * bar_w / steps:.1f}" y="{ly}" '
                f'width="{bar_w / steps + 0.5:.1f}" height="12" fill="{risk_color(v)}"/>'
            )
        parts.append(
            f'<text x="{ox}" y="{ly + 26}" font-size="11" fill="#222222">state risk 0.00</text>'
        )
        parts.append(
            f'<text x="{ox + bar_w}" y="{ly + 26}" font-size="11" fill="#222222" '
            f'text-anchor="end">&#8805; {SCALE_MAX:.2f}</text>'
        )
    parts.append("</svg>")
    return "".join(parts)
