"""Dataset-level corner-three findings.

Aggregations that explain the corner three's efficiency: assist-rate and
contest-distance gaps between corner and above-the-break threes, the
decomposition of the field-goal gap into its distance-predicted part, and
the table of court zones that kick-out passes arrive from.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._configio import CSV_SCHEMA_LINE
from .court import CORNER_ZONES, Zone, classify_shot, classify_zone
from .data import court_for_league
from .errors import MissingClassError, NoPassDataError
from .shotmodel import LogisticModel, predict_make_prob

BASKET_VICINITY_ZONES = (
    Zone.BASKET_AREA,
    Zone.DEEP_PAINT,
    Zone.LEFT_BASELINE,
    Zone.RIGHT_BASELINE,
)


@dataclass(frozen=True)
class AssistStats:
    c3_assist_rate: float
    atb3_assist_rate: float
    c3_mean_def_dist: float | None
    atb3_mean_def_dist: float | None
    c3_attempts: int
    atb3_attempts: int


@dataclass(frozen=True)
class PassOriginTable:
    """Fraction of corner-bound passes from each zone, per destination corner."""

    rows: dict  # zone name -> {"LeftCorner": fraction, "RightCorner": fraction}
    counts: dict  # destination corner -> number of passes
    basket_vicinity: dict  # destination corner -> rolled-up fraction near the rim


@dataclass(frozen=True)
class GapDecomposition:
    observed_fg_gap: float  # percentage points
    distance_predicted_gap: float
    residual_gap: float
    c3_mean_distance: float
    atb3_mean_distance: float


def _split_threes(shots):
    c3, atb3 = [], []
    for s in shots:
        cls = classify_shot(s.location, court_for_league(s.league))
        if cls.value == "C3":
            c3.append(s)
        elif cls.value == "ATB3":
            atb3.append(s)
    if not c3:
        raise MissingClassError("dataset has no corner threes")
    if not atb3:
        raise MissingClassError("dataset has no above-the-break threes")
    return c3, atb3


def assist_stats(shots) -> AssistStats:
    """Empirical assist rates and mean closest-defender distances per class."""
    c3, atb3 = _split_threes(shots)

    def mean_def(group):
        vals = [s.closest_defender_distance for s in group if s.closest_defender_distance is not None]
        return float(np.mean(vals)) if vals else None

    return AssistStats(
        c3_assist_rate=float(np.mean([s.assisted for s in c3])),
        atb3_assist_rate=float(np.mean([s.assisted for s in atb3])),
        c3_mean_def_dist=mean_def(c3),
        atb3_mean_def_dist=mean_def(atb3),
        c3_attempts=len(c3),
        atb3_attempts=len(atb3),
    )


def pass_origin_table(shots) -> PassOriginTable:
    """Where corner-three passes come from, as per-zone fractions by corner.

    Only corner shots carrying a pass origin count. A pass whose origin lies
    in the destination corner itself is excluded (a kick-out cannot start
    where it ends), which pins the same-corner cells at exactly zero.
    """
    counts = {"LeftCorner": 0, "RightCorner": 0}
    cells = {zone.value: {"LeftCorner": 0, "RightCorner": 0} for zone in Zone}
    for s in shots:
        if s.pass_origin is None:
            continue
        court = court_for_league(s.league)
        dest = classify_zone(s.location, court)
        if dest not in CORNER_ZONES:
            continue
        origin = classify_zone(s.pass_origin, court)
        if origin is dest:
            continue
        cells[origin.value][dest.value] += 1
        counts[dest.value] += 1
    if counts["LeftCorner"] == 0 and counts["RightCorner"] == 0:
        raise NoPassDataError("no corner shots with pass origins")
    rows = {}
    for zone in Zone:
        rows[zone.value] = {
            dest: (cells[zone.value][dest] / counts[dest] if counts[dest] else 0.0)
            for dest in ("LeftCorner", "RightCorner")
        }
    vicinity = {
        dest: sum(rows[z.value][dest] for z in BASKET_VICINITY_ZONES)
        for dest in ("LeftCorner", "RightCorner")
    }
    return PassOriginTable(rows=rows, counts=counts, basket_vicinity=vicinity)


def gap_decomposition(shots, model: LogisticModel) -> GapDecomposition:
    """Split the corner vs above-the-break FG% gap into distance and residual.

    The distance-predicted part evaluates the model at the class mean
    distances (not the line distances). Residual = observed - predicted,
    exactly.
    """
    c3, atb3 = _split_threes(shots)
    c3_mean = float(np.mean([np.hypot(s.location.x, s.location.y) for s in c3]))
    atb3_mean = float(np.mean([np.hypot(s.location.x, s.location.y) for s in atb3]))
    observed = 100.0 * (
        float(np.mean([s.made for s in c3])) - float(np.mean([s.made for s in atb3]))
    )
    predicted = 100.0 * (
        predict_make_prob(model, c3_mean) - predict_make_prob(model, atb3_mean)
    )
    return GapDecomposition(
        observed_fg_gap=observed,
        distance_predicted_gap=predicted,
        residual_gap=observed - predicted,
        c3_mean_distance=c3_mean,
        atb3_mean_distance=atb3_mean,
    )


def assist_stats_to_json(stats: AssistStats) -> dict:
    return {
        "c3_assist_rate": stats.c3_assist_rate,
        "atb3_assist_rate": stats.atb3_assist_rate,
        "c3_mean_def_dist": stats.c3_mean_def_dist,
        "atb3_mean_def_dist": stats.atb3_mean_def_dist,
        "c3_attempts": stats.c3_attempts,
        "atb3_attempts": stats.atb3_attempts,
    }


def gap_to_json(gap: GapDecomposition) -> dict:
    return {
        "observed_fg_gap_pp": gap.observed_fg_gap,
        "distance_predicted_gap_pp": gap.distance_predicted_gap,
        "residual_gap_pp": gap.residual_gap,
        "c3_mean_distance_ft": gap.c3_mean_distance,
        "atb3_mean_distance_ft": gap.atb3_mean_distance,
    }


def pass_table_to_json(table: PassOriginTable) -> dict:
    return {
        "rows": table.rows,
        "counts": table.counts,
        "basket_vicinity": table.basket_vicinity,
    }


def pass_table_to_csv(table: PassOriginTable) -> str:
    lines = [CSV_SCHEMA_LINE, "zone,left_corner,right_corner"]
    for zone in sorted(table.rows):
        row = table.rows[zone]
        lines.append(f"{zone},{row['LeftCorner']!r},{row['RightCorner']!r}")
    lines.append(
        "BasketVicinityRollup,"
        f"{table.basket_vicinity['LeftCorner']!r},{table.basket_vicinity['RightCorner']!r}"
    )
    return "\n".join(lines) + "\n"
