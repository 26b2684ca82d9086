"""Exact segment geometry on occupancy grids.

Cells are unit squares centered on integer (row, col) coordinates, so cell
boundaries sit on half-integers.  To keep every test exact, points are carried
in *doubled* coordinates: centers become even integers, corners odd integers,
and all blocking decisions reduce to integer arithmetic.  The one convention
that matters everywhere: a segment is blocked only when it crosses the open
interior of an unviable cell; touching a corner or sliding along a cell edge
does not block.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, List, Sequence, Tuple

DPoint = Tuple[int, int]  # doubled coordinates: (2*row, 2*col)
FPoint = Tuple[float, float]


def to_doubled(row: float, col: float) -> DPoint:
    out = (round(2 * row), round(2 * col))
    if abs(out[0] - 2 * row) > 1e-9 or abs(out[1] - 2 * col) > 1e-9:
        raise ValueError(f"point ({row}, {col}) is not on the half-integer lattice")
    return out


def from_doubled(p: DPoint) -> FPoint:
    return (p[0] / 2.0, p[1] / 2.0)


def cross(o: DPoint, a: DPoint, b: DPoint) -> int:
    """Orientation of b relative to the directed line o->a (integer exact)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def dist_sq(a: DPoint, b: DPoint) -> int:
    return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2


def euclid(a: DPoint, b: DPoint) -> float:
    """Euclidean distance between doubled points, in cell units."""
    return math.hypot(a[0] - b[0], a[1] - b[1]) / 2.0


def _axis_interval(p: int, q: int, lo: int, hi: int):
    """Clip parameter range of p + t*(q-p) to the closed slab [lo, hi].

    Returns (n0, n1, d) meaning t in [n0/d, n1/d] with d > 0, or None when the
    segment runs parallel on or outside the slab (no interior overlap).
    """
    d = q - p
    if d == 0:
        if lo < p < hi:
            return (0, 1, 1)
        return None
    t0, t1 = lo - p, hi - p
    if d < 0:
        t0, t1, d = -t1, -t0, -d
    return (t0, t1, d)


def segment_enters_cell(p: DPoint, q: DPoint, cell: Tuple[int, int]) -> bool:
    """True when segment p->q crosses the open interior of the given cell.

    Exact: corner touches and edge slides report False.
    """
    r, c = cell
    spans = []
    for axis, (lo, hi) in ((0, (2 * r - 1, 2 * r + 1)), (1, (2 * c - 1, 2 * c + 1))):
        iv = _axis_interval(p[axis], q[axis], lo, hi)
        if iv is None:
            return False
        spans.append(iv)
    # Intersect the two rational intervals with [0, 1]; blocked only when the
    # final interval has strictly positive length.
    (a0, a1, ad), (b0, b1, bd) = spans
    lo_n, lo_d = (a0, ad) if a0 * bd >= b0 * ad else (b0, bd)
    hi_n, hi_d = (a1, ad) if a1 * bd <= b1 * ad else (b1, bd)
    if lo_n < 0:
        lo_n, lo_d = 0, 1
    if hi_n > hi_d:
        hi_n, hi_d = 1, 1
    return lo_n * hi_d < hi_n * lo_d


def cells_on_segment(p: DPoint, q: DPoint) -> List[Tuple[int, int]]:
    """All cells whose interior the segment crosses, in scan order."""
    r_lo = (min(p[0], q[0]) - 1) // 2
    r_hi = (max(p[0], q[0]) + 1) // 2
    c_lo = (min(p[1], q[1]) - 1) // 2
    c_hi = (max(p[1], q[1]) + 1) // 2
    out = []
    for r in range(r_lo, r_hi + 1):
        for c in range(c_lo, c_hi + 1):
            if segment_enters_cell(p, q, (r, c)):
                out.append((r, c))
    return out


def segment_blocked(p: DPoint, q: DPoint, unviable: Iterable[Tuple[int, int]]) -> bool:
    """True when the segment crosses the interior of any listed unviable cell."""
    blocked_set = unviable if isinstance(unviable, (set, frozenset)) else set(unviable)
    r_lo = (min(p[0], q[0]) - 1) // 2
    r_hi = (max(p[0], q[0]) + 1) // 2
    c_lo = (min(p[1], q[1]) - 1) // 2
    c_hi = (max(p[1], q[1]) + 1) // 2
    for r, c in blocked_set:
        if r_lo <= r <= r_hi and c_lo <= c <= c_hi:
            if segment_enters_cell(p, q, (r, c)):
                return True
    return False


def point_in_closed_triangle(pt: DPoint, a: DPoint, b: DPoint, c: DPoint) -> bool:
    """Closed-triangle membership, exact; degenerate triangles accept collinear points."""
    d1 = cross(a, b, pt)
    d2 = cross(b, c, pt)
    d3 = cross(c, a, pt)
    area = cross(a, b, c)
    if area == 0:
        # Degenerate sweep: accept points on the segment spanned by the trio.
        if d1 != 0 or d2 != 0 or d3 != 0:
            return False
        los = [a, b, c]
        rs = [x[0] for x in los]
        cs = [x[1] for x in los]
        return min(rs) <= pt[0] <= max(rs) and min(cs) <= pt[1] <= max(cs)
    if area < 0:
        d1, d2, d3 = -d1, -d2, -d3
    return d1 >= 0 and d2 >= 0 and d3 >= 0


# ---------------------------------------------------------------------------
# Float-domain helpers (visibility rays have irrational endpoints).

_GRAZE_EPS = 1e-9


def _axis_interval_f(p: float, q: float, lo: float, hi: float):
    d = q - p
    if d == 0.0:
        if lo < p < hi:
            return (0.0, 1.0)
        return None
    t0, t1 = (lo - p) / d, (hi - p) / d
    if t0 > t1:
        t0, t1 = t1, t0
    return (t0, t1)


def segment_enters_cell_f(p: FPoint, q: FPoint, cell: Tuple[int, int]) -> bool:
    """Float twin of segment_enters_cell; grazes within ~1e-9 do not block."""
    r, c = cell
    lo_t, hi_t = 0.0, 1.0
    for axis, (lo, hi) in ((0, (r - 0.5, r + 0.5)), (1, (c - 0.5, c + 0.5))):
        iv = _axis_interval_f(p[axis], q[axis], lo, hi)
        if iv is None:
            return False
        lo_t = max(lo_t, iv[0])
        hi_t = min(hi_t, iv[1])
    return hi_t - lo_t > _GRAZE_EPS


def convex_corners(unviable, n_rows: int, n_cols: int) -> List[DPoint]:
    """Vertices a taut band can bend around, as doubled (odd, odd) points.

    A lattice vertex qualifies when exactly one of its four incident cells is
    unviable (an ordinary convex corner), or when exactly two are and they
    touch only diagonally — a pinch the band can wrap while squeezing through
    the gap.  Out-of-grid cells count as unviable, which strips the outer
    boundary of wrap candidates (a tether between in-grid centers can never
    reach it anyway).
    """
    blocked = set(unviable)

    def occ(r: int, c: int) -> bool:
        if 0 <= r < n_rows and 0 <= c < n_cols:
            return (r, c) in blocked
        return True

    corners = []
    for r, c in blocked:
        for vr in (2 * r - 1, 2 * r + 1):
            for vc in (2 * c - 1, 2 * c + 1):
                rr, cc = (vr - 1) // 2, (vc - 1) // 2
                quad = [occ(rr, cc), occ(rr, cc + 1), occ(rr + 1, cc), occ(rr + 1, cc + 1)]
                n_occ = sum(quad)
                if n_occ == 1 or (n_occ == 2 and quad[0] == quad[3]):
                    corners.append((vr, vc))
    return sorted(set(corners))
