"""Risk elements: per-state probabilities of failing to finish, grouped by how
much traverse history each one is allowed to see."""

from __future__ import annotations

import bisect
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .world import GridMap, State


class ConfigError(ValueError):
    """Raised when an element-config document is malformed."""


class RiskCategory(Enum):
    LOCALE = "locale"
    ACTION = "action"
    TRAVERSE = "traverse"

    @property
    def history_depth(self) -> Optional[int]:
        """Prior states an element of this category may consult (None = all)."""
        if self is RiskCategory.LOCALE:
            return 0
        if self is RiskCategory.ACTION:
            return 2
        return None


@dataclass(frozen=True)
class RiskMapping(object):
    """Monotone lookup from a scalar feature to a failure probability.

    kind 'piecewise-linear' interpolates between knots; 'step-table' holds the
    probability of the last knot at or below the input.  Inputs beyond either
    end clamp to the nearest knot.
    """

    kind: str
    knots: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        if self.kind not in ("piecewise-linear", "step-table"):
            raise ConfigError(f"unknown mapping kind {self.kind!r}")
        knots = tuple((float(x), float(p)) for x, p in self.knots)
        object.__setattr__(self, "knots", knots)
        if not knots:
            raise ConfigError("mapping needs at least one knot")
        xs = [x for x, _ in knots]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ConfigError("mapping knot inputs must be strictly increasing")
        ps = [p for _, p in knots]
        if any(not (0.0 <= p <= 1.0) for p in ps):
            raise ConfigError("mapping probabilities must lie in [0, 1]")
        if any(b > a for a, b in zip(ps, ps[1:])):
            raise ConfigError("mapping probabilities must be non-increasing")

    def __call__(self, x: float) -> float:
        xs = [k[0] for k in self.knots]
        ps = [k[1] for k in self.knots]
        if x <= xs[0]:
            return ps[0]
        if x >= xs[-1]:
            return ps[-1]
        if self.kind == "step-table":
            return ps[bisect.bisect_right(xs, x) - 1]
        i = bisect.bisect_right(xs, x) - 1
        x0, x1 = xs[i], xs[i + 1]
        p0, p1 = ps[i], ps[i + 1]
        return p0 + (p1 - p0) * (x - x0) / (x1 - x0)

    def to_doc(self) -> dict:
        return {"kind": self.kind, "knots": [list(k) for k in self.knots]}


@dataclass(frozen=True)
class RiskElement(object):
    """A named risk source evaluated over a traverse prefix."""

    name: str
    category: RiskCategory
    params: Tuple[Tuple[str, object], ...]
    fn: Callable[[GridMap, Tuple[State, ...]], float]

    def evaluate(self, grid: GridMap, prefix: Sequence[State]) -> float:
        states = tuple(prefix)
        if not states:
            raise ValueError("prefix must contain at least the current state")
        depth = self.category.history_depth
        if depth is not None:
            states = states[-(depth + 1):]
        value = self.fn(grid, states)
        if not (0.0 <= value <= 1.0):
            raise ValueError(f"element {self.name!r} produced {value} outside [0, 1]")
        return value

    def to_doc(self) -> dict:
        doc = {"name": self.name}
        doc.update({k: v for k, v in self.params})
        return doc


def obstacle_distance_risk(mapping: RiskMapping) -> RiskElement:
    """Locale element: maps distance to the nearest unviable cell."""

    def fn(grid: GridMap, states: Tuple[State, ...]) -> float:
        s = states[-1]
        return mapping(float(grid.distance_field()[s.row, s.col]))

    return RiskElement(
        "obstacle_distance", RiskCategory.LOCALE, (("mapping", mapping.to_doc()),), fn
    )


def visibility_risk(
    mapping: RiskMapping, radius: float = 5.0, ray_count: int = 32
) -> RiskElement:
    """Locale element: maps the fraction of unblocked sight rays."""

    def fn(grid: GridMap, states: Tuple[State, ...]) -> float:
        return mapping(grid.visibility_at(states[-1], radius, ray_count))

    params = (("mapping", mapping.to_doc()), ("radius", radius), ("ray_count", ray_count))
    return RiskElement("visibility", RiskCategory.LOCALE, params, fn)


def action_length_risk(coeff: float = 0.02) -> RiskElement:
    """Action element: proportional to the length of the arriving step."""

    def fn(grid: GridMap, states: Tuple[State, ...]) -> float:
        if len(states) < 2:
            return 0.0
        a, b = states[-2], states[-1]
        step = math.hypot(b.row - a.row, b.col - a.col) * grid.cell_size
        return min(1.0, coeff * step)

    return RiskElement("action_length", RiskCategory.ACTION, (("coeff", coeff),), fn)


def turn_risk(coeff: float = 0.04 / math.sqrt(2)) -> RiskElement:
    """Action element: proportional to the change between consecutive steps."""

    def fn(grid: GridMap, states: Tuple[State, ...]) -> float:
        if len(states) < 3:
            return 0.0
        s0, s1, s2 = states[-3], states[-2], states[-1]
        prev = (s1.row - s0.row, s1.col - s0.col)
        cur = (s2.row - s1.row, s2.col - s1.col)
        swerve = math.hypot(cur[0] - prev[0], cur[1] - prev[1]) * grid.cell_size
        return min(1.0, coeff * swerve)

    return RiskElement("turn", RiskCategory.ACTION, (("coeff", coeff),), fn)


def tether_length_risk(coeff: float = 0.01, anchor: Optional[State] = None) -> RiskElement:
    """Traverse element: proportional to the taut tether length."""
    from .tether import tether_for_prefix

    def fn(grid: GridMap, states: Tuple[State, ...]) -> float:
        tet = tether_for_prefix(grid, states, anchor=anchor)
        return min(1.0, coeff * tet.taut_length * grid.cell_size)

    params = (("coeff", coeff),) + ((("anchor", list(anchor.as_tuple())),) if anchor else ())
    return RiskElement("tether_length", RiskCategory.TRAVERSE, params, fn)


def tether_contact_risk(per_contact: float = 0.03, anchor: Optional[State] = None) -> RiskElement:
    """Traverse element: proportional to the number of taut-tether contacts."""
    from .tether import tether_for_prefix

    def fn(grid: GridMap, states: Tuple[State, ...]) -> float:
        tet = tether_for_prefix(grid, states, anchor=anchor)
        return min(1.0, per_contact * len(tet.contacts))

    params = (("per_contact", per_contact),) + (
        (("anchor", list(anchor.as_tuple())),) if anchor else ()
    )
    return RiskElement("tether_contacts", RiskCategory.TRAVERSE, params, fn)


def _mapping_from_doc(doc: Mapping) -> RiskMapping:
    try:
        return RiskMapping(doc.get("kind", "piecewise-linear"), tuple(map(tuple, doc["knots"])))
    except KeyError as exc:
        raise ConfigError(f"mapping block missing field {exc}") from exc


def _build_element(doc: Mapping) -> RiskElement:
    name = doc.get("name")
    extra = {k: v for k, v in doc.items() if k != "name"}

    def take(key, default=None, required=False):
        if required and key not in extra:
            raise ConfigError(f"element {name!r} requires field {key!r}")
        return extra.pop(key, default)

    if name == "obstacle_distance":
        el = obstacle_distance_risk(_mapping_from_doc(take("mapping", required=True)))
    elif name == "visibility":
        mapping = _mapping_from_doc(take("mapping", required=True))
        el = visibility_risk(
            mapping, radius=float(take("radius", 5.0)), ray_count=int(take("ray_count", 32))
        )
    elif name == "action_length":
        el = action_length_risk(coeff=float(take("coeff", 0.02)))
    elif name == "turn":
        el = turn_risk(coeff=float(take("coeff", 0.04 / math.sqrt(2))))
    elif name == "tether_length":
        anchor = take("anchor")
        el = tether_length_risk(
            coeff=float(take("coeff", 0.01)),
            anchor=State(*anchor) if anchor is not None else None,
        )
    elif name == "tether_contacts":
        anchor = take("anchor")
        el = tether_contact_risk(
            per_contact=float(take("per_contact", 0.03)),
            anchor=State(*anchor) if anchor is not None else None,
        )
    else:
        raise ConfigError(f"unknown element name {name!r}")
    if extra:
        raise ConfigError(f"element {name!r} has unrecognized fields {sorted(extra)}")
    return el


def load_elements(doc) -> List[RiskElement]:
    """Build elements from a config document (dict or JSON text)."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"element config is not valid JSON: {exc}") from exc
    if not isinstance(doc, Mapping) or "elements" not in doc:
        raise ConfigError("element config must be an object with an 'elements' list")
    blocks = doc["elements"]
    if not isinstance(blocks, list) or not blocks:
        raise ConfigError("'elements' must be a non-empty list")
    out = [_build_element(b) for b in blocks]
    names = [e.name for e in out]
    if len(names) != len(set(names)):
        raise ConfigError("element names must be unique within a config")
    return out


def dump_elements(elements: Sequence[RiskElement]) -> dict:
    return {"elements": [e.to_doc() for e in elements]}
