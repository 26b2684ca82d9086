"""Occupancy-grid workspace: maps, states, paths, and locale queries."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import ndimage

from .grid_geometry import segment_enters_cell_f

VIABLE_CHAR = "."
UNVIABLE_CHAR = "#"


class MapFormatError(ValueError):
    """Raised when an occupancy-map document cannot be parsed."""


class PathValidationError(ValueError):
    """Raised when a path fails feasibility checks against a map."""

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


@dataclass(frozen=True, order=True)
class State(object):
    """One grid cell the robot can occupy, addressed (row, col)."""

    row: int
    col: int

    def as_tuple(self) -> Tuple[int, int]:
        return (self.row, self.col)


class GridMap(object):
    """Immutable 2D occupancy grid; True in `viable` marks free cells."""

    def __init__(self, viable: np.ndarray, cell_size: float = 1.0):
        arr = np.asarray(viable, dtype=bool)
        if arr.ndim != 2 or arr.size == 0:
            raise MapFormatError("occupancy grid must be a non-empty 2D array")
        if cell_size <= 0:
            raise MapFormatError("cell_size must be positive")
        self._viable = arr.copy()
        self._viable.setflags(write=False)
        self.cell_size = float(cell_size)

    @property
    def viable(self) -> np.ndarray:
        return self._viable

    @property
    def n_rows(self) -> int:
        return self._viable.shape[0]

    @property
    def n_cols(self) -> int:
        return self._viable.shape[1]

    def in_bounds(self, row: int, col: int) -> bool:
        return 0 <= row < self.n_rows and 0 <= col < self.n_cols

    def is_viable(self, row: int, col: int) -> bool:
        # Everything beyond the grid edge counts as unviable.
        return self.in_bounds(row, col) and bool(self._viable[row, col])

    def unviable_cells(self) -> frozenset:
        rs, cs = np.nonzero(~self._viable)
        return frozenset(zip(rs.tolist(), cs.tolist()))

    def distance_field(self) -> np.ndarray:
        """Cached distance_transform of this map."""
        cached = getattr(self, "_dist_field", None)
        if cached is None:
            cached = distance_transform(self)
            cached.setflags(write=False)
            object.__setattr__(self, "_dist_field", cached)
        return cached

    def visibility_at(self, s: "State", radius: float, ray_count: int) -> float:
        """Cached visibility_fraction lookup."""
        cache = getattr(self, "_vis_cache", None)
        if cache is None:
            cache = {}
            object.__setattr__(self, "_vis_cache", cache)
        key = (s.row, s.col, radius, ray_count)
        if key not in cache:
            cache[key] = visibility_fraction(self, s, radius=radius, ray_count=ray_count)
        return cache[key]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GridMap)
            and self.cell_size == other.cell_size
            and np.array_equal(self._viable, other._viable)
        )

    def __repr__(self) -> str:
        return f"GridMap({self.n_rows}x{self.n_cols}, cell_size={self.cell_size})"


def load_map(text: str, cell_size: float = 1.0) -> GridMap:
    """Parse an ASCII occupancy map ('.' free, '#' blocked), one row per line."""
    rows = [line for line in text.splitlines() if line.strip() != ""]
    if not rows:
        raise MapFormatError("map document contains no rows")
    width = len(rows[0])
    grid = np.zeros((len(rows), width), dtype=bool)
    for r, line in enumerate(rows):
        if len(line) != width:
            raise MapFormatError(
                f"row {r} has length {len(line)}, expected {width} (rows must be equal length)"
            )
        for c, ch in enumerate(line):
            if ch == VIABLE_CHAR:
                grid[r, c] = True
            elif ch == UNVIABLE_CHAR:
                grid[r, c] = False
            else:
                raise MapFormatError(f"unknown map character {ch!r} at row {r}, col {c}")
    return GridMap(grid, cell_size=cell_size)


def dump_map(grid: GridMap) -> str:
    lines = []
    for r in range(grid.n_rows):
        lines.append(
            "".join(VIABLE_CHAR if grid.viable[r, c] else UNVIABLE_CHAR for c in range(grid.n_cols))
        )
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Path(object):
    """An ordered run of states plus the adjacency radius its steps obey."""

    states: Tuple[State, ...]
    r_c: float = 1.5

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        if len(self.states) < 1:
            raise PathValidationError("a path needs at least one state", 0)

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __getitem__(self, idx):
        return self.states[idx]

    def prefix(self, upto: int) -> "Path":
        """States 0..upto inclusive, same adjacency radius."""
        return Path(self.states[: upto + 1], self.r_c)

    def arc_length(self, cell_size: float = 1.0) -> float:
        total = 0.0
        for prev, cur in zip(self.states, self.states[1:]):
            total += math.hypot(cur.row - prev.row, cur.col - prev.col)
        return total * cell_size


@dataclass(frozen=True)
class PathCheck(object):
    """Outcome of validate_path; index points at the first offending state."""

    ok: bool
    index: int = -1
    reason: str = ""


def validate_path(grid: GridMap, path: Path) -> PathCheck:
    """Check every state is viable and consecutive states sit within r_c."""
    for i, s in enumerate(path.states):
        if not grid.in_bounds(s.row, s.col):
            return PathCheck(False, i, f"state {i} at ({s.row}, {s.col}) is outside the grid")
        if not grid.is_viable(s.row, s.col):
            return PathCheck(False, i, f"state {i} at ({s.row}, {s.col}) is unviable")
    for i in range(1, len(path.states)):
        a, b = path.states[i - 1], path.states[i]
        gap = math.hypot(b.row - a.row, b.col - a.col)
        if gap > path.r_c + 1e-12:
            return PathCheck(
                False, i, f"step into state {i} spans {gap:.3f} cells, exceeding r_c={path.r_c}"
            )
    return PathCheck(True)


def require_valid_path(grid: GridMap, path: Path) -> None:
    check = validate_path(grid, path)
    if not check.ok:
        raise PathValidationError(check.reason, check.index)


def distance_transform(grid: GridMap) -> np.ndarray:
    """Exact center-to-center Euclidean distance to the nearest unviable cell.

    Unviable cells read 0; a map with no unviable cell reads +inf everywhere.
    """
    if bool(grid.viable.all()):
        return np.full(grid.viable.shape, np.inf)
    dist = ndimage.distance_transform_edt(grid.viable)
    return dist * grid.cell_size


def ray_directions(ray_count: int) -> List[Tuple[float, float]]:
    """Equally spaced unit directions, exactly closed under 90-degree rotation
    whenever ray_count is a multiple of 4."""
    if ray_count % 4 == 0:
        quarter = ray_count // 4
        base = []
        for m in range(quarter):
            ang = 2.0 * math.pi * m / ray_count
            base.append((math.cos(ang), math.sin(ang)))
        dirs = list(base)
        for dr, dc in base:
            dirs.append((-dc, dr))
        for dr, dc in base:
            dirs.append((-dr, -dc))
        for dr, dc in base:
            dirs.append((dc, -dr))
        return dirs
    return [
        (math.cos(2.0 * math.pi * k / ray_count), math.sin(2.0 * math.pi * k / ray_count))
        for k in range(ray_count)
    ]


def _ray_blocked(grid: GridMap, origin: Tuple[float, float], tip: Tuple[float, float]) -> bool:
    r0, c0 = origin
    r1, c1 = tip
    # The grid edge behaves like an obstacle: a ray poking past it is blocked.
    eps = 1e-9
    if not (-0.5 - eps <= r1 <= grid.n_rows - 0.5 + eps):
        return True
    if not (-0.5 - eps <= c1 <= grid.n_cols - 0.5 + eps):
        return True
    lo_r = int(math.floor(min(r0, r1) - 0.5))
    hi_r = int(math.ceil(max(r0, r1) + 0.5))
    lo_c = int(math.floor(min(c0, c1) - 0.5))
    hi_c = int(math.ceil(max(c0, c1) + 0.5))
    for r in range(max(lo_r, 0), min(hi_r, grid.n_rows - 1) + 1):
        for c in range(max(lo_c, 0), min(hi_c, grid.n_cols - 1) + 1):
            if not grid.viable[r, c] and segment_enters_cell_f(origin, tip, (r, c)):
                return True
    return False


def visibility_fraction(
    grid: GridMap, s: State, radius: float = 5.0, ray_count: int = 32
) -> float:
    """Fraction of equally spaced rays from s that reach `radius` unobstructed."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    if ray_count < 4:
        raise ValueError("ray_count must be at least 4")
    if not grid.is_viable(s.row, s.col):
        raise ValueError(f"visibility origin ({s.row}, {s.col}) must be a viable cell")
    origin = (float(s.row), float(s.col))
    clear = 0
    for dr, dc in ray_directions(ray_count):
        tip = (s.row + radius * dr, s.col + radius * dc)
        if not _ray_blocked(grid, origin, tip):
            clear += 1
    return clear / ray_count
