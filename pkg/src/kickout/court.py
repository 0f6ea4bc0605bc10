"""Half-court geometry: league constants, shot zones, and distance helpers.

Frame convention: basket center at the origin, x running along the baseline,
y increasing toward halfcourt, all distances in feet. The offense attacks the
positive-y half. Ingested coordinates are expected in this frame.

Zone classification is config-driven: a court config carries an ordered list
of zone rules (inclusive axis bands and radial annuli). The first matching
rule wins, so a shared boundary belongs to the earlier, basket-nearer zone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ._configio import load_config
from .errors import ConfigError, OffCourtError


class Zone(str, Enum):
    BASKET_AREA = "BasketArea"
    DEEP_PAINT = "DeepPaint"
    LEFT_BASELINE = "LeftBaseline"
    LEFT_CORNER = "LeftCorner"
    LEFT_WING2 = "LeftWing2"
    LEFT_WING3 = "LeftWing3"
    MIDRANGE_SLOT = "MidrangeSlot"
    RIGHT_BASELINE = "RightBaseline"
    RIGHT_CORNER = "RightCorner"
    RIGHT_WING2 = "RightWing2"
    RIGHT_WING3 = "RightWing3"
    TOP_OF_ARC = "TopOfArc"


class ShotClass(str, Enum):
    C3 = "C3"
    ATB3 = "ATB3"
    TWO_POINT = "TwoPoint"


CORNER_ZONES = frozenset({Zone.LEFT_CORNER, Zone.RIGHT_CORNER})
ATB3_ZONES = frozenset({Zone.LEFT_WING3, Zone.RIGHT_WING3, Zone.TOP_OF_ARC})

_MIRROR = {
    Zone.LEFT_BASELINE: Zone.RIGHT_BASELINE,
    Zone.RIGHT_BASELINE: Zone.LEFT_BASELINE,
    Zone.LEFT_CORNER: Zone.RIGHT_CORNER,
    Zone.RIGHT_CORNER: Zone.LEFT_CORNER,
    Zone.LEFT_WING2: Zone.RIGHT_WING2,
    Zone.RIGHT_WING2: Zone.LEFT_WING2,
    Zone.LEFT_WING3: Zone.RIGHT_WING3,
    Zone.RIGHT_WING3: Zone.LEFT_WING3,
}


def mirror_zone(zone: Zone) -> Zone:
    """Left/right mirror image of a zone (central zones map to themselves)."""
    return _MIRROR.get(zone, zone)


@dataclass(frozen=True)
class Point2D:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x}, {self.y})")


def mirror_x(p: Point2D) -> Point2D:
    return Point2D(-p.x, p.y)


@dataclass(frozen=True)
class ZoneRule:
    """One ordered classification rule: all conditions must hold."""

    name: Zone
    conditions: tuple


@dataclass(frozen=True)
class CourtSpec:
    league: str
    corner_line_distance: float
    arc_radius: float
    corner_break_y: float
    court_halfwidth: float
    baseline_offset: float
    halfcourt_length: float
    zones: tuple[ZoneRule, ...]
    constants: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.corner_line_distance > self.arc_radius:
            raise ConfigError(
                f"corner line ({self.corner_line_distance}) beyond arc ({self.arc_radius})"
            )
        names = [rule.name for rule in self.zones]
        if sorted(names) != sorted(Zone):
            raise ConfigError(f"zone list must name each of the 12 zones exactly once, got {names}")

    @property
    def max_y(self) -> float:
        """Top of the half court (halfcourt line) in this frame."""
        return self.halfcourt_length - self.baseline_offset

    @property
    def min_y(self) -> float:
        """Baseline behind the basket."""
        return -self.baseline_offset


def _parse_condition(cond: dict):
    if list(cond) == ["annulus"]:
        spec = cond["annulus"]
        return ("annulus", float(spec.get("r_min", 0.0)), float(spec.get("r_max", math.inf)))
    if list(cond) == ["band"]:
        spec = cond["band"]
        axis = spec["axis"]
        if axis not in ("x", "y"):
            raise ConfigError(f"band axis must be x or y, got {axis!r}")
        lo = float(spec["min"]) if "min" in spec else -math.inf
        hi = float(spec["max"]) if "max" in spec else math.inf
        return ("band", axis, lo, hi)
    raise ConfigError(f"unknown zone condition {cond!r}")


def load_court(name: str = "nba") -> CourtSpec:
    """Load a court spec by league name ('nba', 'fiba'), packaged name, or path."""
    key = name.lower()
    if key in ("nba", "fiba"):
        name = f"court_{key}.json"
    doc = load_config(name)
    try:
        consts = doc["constants"]
        zones = []
        for z in doc["zones"]:
            zones.append(
                ZoneRule(Zone(z["name"]), tuple(_parse_condition(c) for c in z["all_of"]))
            )
        spec = CourtSpec(
            league=doc["league"],
            corner_line_distance=float(consts["corner_line_distance"]),
            arc_radius=float(consts["arc_radius"]),
            corner_break_y=float(consts["corner_break_y"]),
            court_halfwidth=float(consts["court_halfwidth"]),
            baseline_offset=float(consts["baseline_offset"]),
            halfcourt_length=float(consts["halfcourt_length"]),
            zones=tuple(zones),
            constants=dict(consts),
        )
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"malformed court config {name!r}: {exc}") from exc
    _validate_zone_consistency(spec)
    return spec


def _validate_zone_consistency(spec: CourtSpec) -> None:
    """Cross-check the zone rule list against the scalar constants.

    Corner zones must start exactly at the corner line and end at the corner
    break; the derived three-point split must agree with the direct rulebook
    test on a sample grid.
    """
    xs = np.linspace(-spec.court_halfwidth, spec.court_halfwidth, 101)
    ys = np.linspace(spec.min_y, spec.max_y, 101)
    gx, gy = np.meshgrid(xs, ys)
    idx = classify_zone_indices(gx.ravel(), gy.ravel(), spec)
    if np.any(idx < 0):
        raise ConfigError(f"zone rules do not cover the {spec.league} half court")
    zone_names = [rule.name for rule in spec.zones]
    is_three = np.isin(
        idx, [i for i, n in enumerate(zone_names) if n in CORNER_ZONES | ATB3_ZONES]
    )
    r = np.hypot(gx.ravel(), gy.ravel())
    below = gy.ravel() <= spec.corner_break_y
    direct = np.where(
        below,
        np.abs(gx.ravel()) > spec.corner_line_distance,
        r > spec.arc_radius,
    )
    if np.any(is_three != direct):
        raise ConfigError(
            f"{spec.league} zone rules disagree with the arc/corner-line constants"
        )


def distance_to_basket(p: Point2D) -> float:
    """Euclidean distance from a point to the basket at the origin."""
    return math.hypot(p.x, p.y)


def _on_court_mask(xs: np.ndarray, ys: np.ndarray, court: CourtSpec) -> np.ndarray:
    return (
        (np.abs(xs) <= court.court_halfwidth)
        & (ys >= court.min_y)
        & (ys <= court.max_y)
    )


def classify_zone_indices(xs, ys, court: CourtSpec) -> np.ndarray:
    """Vectorized zone classification.

    Returns the index of the matched rule in ``court.zones`` for each point,
    or -1 for points outside the half court.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    r = np.hypot(xs, ys)
    out = np.full(xs.shape, -1, dtype=np.int64)
    unassigned = _on_court_mask(xs, ys, court)
    for i, rule in enumerate(court.zones):
        mask = unassigned.copy()
        for cond in rule.conditions:
            if cond[0] == "annulus":
                mask &= (r >= cond[1]) & (r <= cond[2])
            else:
                vals = xs if cond[1] == "x" else ys
                mask &= (vals >= cond[2]) & (vals <= cond[3])
        out[mask] = i
        unassigned &= ~mask
    return out


def classify_zone(p: Point2D, court: CourtSpec) -> Zone:
    """Zone containing a point; raises OffCourtError outside the half court."""
    idx = classify_zone_indices(np.array([p.x]), np.array([p.y]), court)[0]
    if idx < 0:
        raise OffCourtError(f"point ({p.x}, {p.y}) is outside the {court.league} half court")
    return court.zones[idx].name


def classify_shot(p: Point2D, court: CourtSpec) -> ShotClass:
    """Shot class at a point: corner three, above-the-break three, or two."""
    zone = classify_zone(p, court)
    if zone in CORNER_ZONES:
        return ShotClass.C3
    if zone in ATB3_ZONES:
        return ShotClass.ATB3
    return ShotClass.TWO_POINT


def shot_value(shot_class: ShotClass) -> int:
    return 2 if shot_class is ShotClass.TWO_POINT else 3


def three_point_geometry_gap(court: CourtSpec) -> float:
    """Distance gained by shooting from the corner instead of the arc."""
    return court.arc_radius - court.corner_line_distance


def sample_on_court(court: CourtSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform sample of n points over the half-court rectangle, shape (n, 2)."""
    xs = rng.uniform(-court.court_halfwidth, court.court_halfwidth, size=n)
    ys = rng.uniform(court.min_y, court.max_y, size=n)
    return np.column_stack([xs, ys])
