"""Shot probability and expected-points models.

Two models live here: a logistic regression of make probability on shooter
distance, fit by Newton's method on the Bernoulli log-likelihood with
step-halving, and a piecewise-linear contest curve giving expected points as
a function of the closest-defender distance (a configurable stand-in for a
proprietary shot-quality feed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._configio import load_config
from .court import ATB3_ZONES, CORNER_ZONES, classify_zone_indices
from .data import ShotEvent, court_for_league
from .errors import (
    ConfigError,
    DegenerateFitError,
    EmptyInputError,
    NotConvergedError,
    OutOfRangeError,
)

GRADIENT_TOL = 1e-8
MAX_NEWTON_ITERATIONS = 200


@dataclass(frozen=True)
class LogisticModel:
    beta0: float
    beta1: float
    fit_loglik: float
    n_obs: int

    def __post_init__(self):
        if not (math.isfinite(self.beta0) and math.isfinite(self.beta1)):
            raise ValueError("coefficients must be finite")
        if self.fit_loglik > 0:
            raise ValueError("Bernoulli log-likelihood cannot be positive")


def sigmoid(z):
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def loglik_and_grad(beta, distances, made):
    """Bernoulli log-likelihood of made ~ sigmoid(b0 + b1 d) and its gradient."""
    b0, b1 = float(beta[0]), float(beta[1])
    d = np.asarray(distances, dtype=float)
    y = np.asarray(made, dtype=float)
    z = b0 + b1 * d
    # log(1 + e^z) computed stably for both signs of z.
    log1pe = np.logaddexp(0.0, z)
    ll = float(np.sum(y * z - log1pe))
    p = sigmoid(z)
    resid = y - p
    grad = np.array([resid.sum(), (resid * d).sum()])
    return ll, grad


def fisher_covariance(distances, beta) -> np.ndarray:
    """Inverse observed information at ``beta`` (asymptotic covariance)."""
    d = np.asarray(distances, dtype=float)
    p = sigmoid(beta[0] + beta[1] * d)
    w = p * (1.0 - p)
    info = np.array([[w.sum(), (w * d).sum()], [(w * d).sum(), (w * d * d).sum()]])
    return np.linalg.inv(info)


def _shot_arrays(shots, threes_only=False):
    d, y = [], []
    for s in shots:
        if threes_only and s.shot_value != 3:
            continue
        d.append(math.hypot(s.location.x, s.location.y))
        y.append(1.0 if s.made else 0.0)
    return np.asarray(d), np.asarray(y)


def fit_logistic(
    shots,
    threes_only: bool = False,
    distances=None,
    made=None,
) -> LogisticModel:
    """Maximum-likelihood logistic fit of make probability on distance.

    Newton iterations with step-halving whenever a full step would lower the
    likelihood; converged when the gradient infinity-norm drops below 1e-8.
    Raises DegenerateFitError for constant inputs, single-outcome data, or
    (quasi-)separable data, and NotConvergedError (with the last iterate
    attached) after 200 iterations.
    """
    if distances is None:
        d, y = _shot_arrays(shots, threes_only)
    else:
        d = np.asarray(distances, dtype=float)
        y = np.asarray(made, dtype=float)
    n = len(d)
    if n < 2:
        raise DegenerateFitError(f"need at least 2 shots, got {n}")
    if y.min() == y.max():
        raise DegenerateFitError("all shots share one outcome; slope is not identified")
    if d.min() == d.max():
        raise DegenerateFitError("all distances equal; slope is not identified")

    ybar = y.mean()
    beta = np.array([math.log(ybar / (1.0 - ybar)), 0.0])
    ll, grad = loglik_and_grad(beta, d, y)
    for _ in range(MAX_NEWTON_ITERATIONS):
        if np.max(np.abs(grad)) < GRADIENT_TOL:
            p = sigmoid(beta[0] + beta[1] * d)
            if np.max(np.abs(y - p)) < 1e-6:
                # A numerically perfect fit means the classes are separable
                # in distance and the true optimum sits at infinity.
                raise DegenerateFitError("data is separable in distance")
            return LogisticModel(float(beta[0]), float(beta[1]), float(ll), n)
        p = sigmoid(beta[0] + beta[1] * d)
        w = p * (1.0 - p)
        info = np.array([[w.sum(), (w * d).sum()], [(w * d).sum(), (w * d * d).sum()]])
        try:
            step = np.linalg.solve(info, grad)
        except np.linalg.LinAlgError:
            raise DegenerateFitError("singular information matrix") from None
        scale = 1.0
        for _ in range(40):
            trial = beta + scale * step
            ll_trial, grad_trial = loglik_and_grad(trial, d, y)
            if ll_trial >= ll:
                break
            scale *= 0.5
        else:
            raise DegenerateFitError("step-halving failed to improve the likelihood")
        beta, ll, grad = trial, ll_trial, grad_trial
        if np.max(np.abs(beta)) > 1e3:
            raise DegenerateFitError("coefficients diverging; data looks separable")
    raise NotConvergedError(
        f"no convergence after {MAX_NEWTON_ITERATIONS} iterations "
        f"(gradient inf-norm {np.max(np.abs(grad)):.3e})",
        last_model=LogisticModel(float(beta[0]), float(beta[1]), float(ll), n),
    )


def predict_make_prob(model: LogisticModel, distance):
    """Make probability at a distance (scalar or array), strictly in (0, 1)."""
    d = np.asarray(distance, dtype=float)
    if np.any(d < 0):
        raise OutOfRangeError("distance must be >= 0")
    p = sigmoid(model.beta0 + model.beta1 * d)
    return float(p) if np.isscalar(distance) else p


def expected_points(p_make, value) -> float:
    if not 0.0 <= p_make <= 1.0:
        raise OutOfRangeError(f"p_make={p_make} outside [0, 1]")
    if value not in (2, 3):
        raise OutOfRangeError(f"shot value must be 2 or 3, got {value}")
    return p_make * value


# ---------------------------------------------------------------------------
# Contest curve
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContestCurve:
    """Expected points for a shot class as a function of defender distance."""

    shot_class: str
    knots: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if self.shot_class not in ("C3", "Drive"):
            raise ConfigError(f"shot_class must be C3 or Drive, got {self.shot_class!r}")
        ds = [k[0] for k in self.knots]
        pts = [k[1] for k in self.knots]
        if len(ds) < 2 or any(b <= a for a, b in zip(ds, ds[1:])):
            raise ConfigError("knot distances must be strictly increasing")
        if ds[0] > 0.0 or ds[-1] < 22.0:
            raise ConfigError("knots must cover the defender-distance range [0, 22]")
        if any(p < 0 for p in pts):
            raise ConfigError("expected points must be >= 0")
        if self.shot_class == "C3" and any(b < a for a, b in zip(pts, pts[1:])):
            raise ConfigError("C3 contest curve must be non-decreasing in distance")


def contest_points(curve: ContestCurve, defender_distance: float):
    """Piecewise-linear interpolation of the curve, exact at the knots."""
    d = np.asarray(defender_distance, dtype=float)
    ds = np.array([k[0] for k in curve.knots])
    if np.any(d < ds[0]) or np.any(d > ds[-1]):
        raise OutOfRangeError(
            f"defender distance {defender_distance} outside [{ds[0]}, {ds[-1]}]"
        )
    pts = np.array([k[1] for k in curve.knots])
    out = np.interp(d, ds, pts)
    return float(out) if np.isscalar(defender_distance) else out


def load_contest_curve(name: str = "contest_curve_c3.json") -> ContestCurve:
    doc = load_config(name)
    try:
        return ContestCurve(
            shot_class=doc["shot_class"], knots=tuple((float(a), float(b)) for a, b in doc["knots"])
        )
    except KeyError as exc:
        raise ConfigError(f"malformed contest curve config {name!r}: {exc}") from exc


def load_reference_model(name: str = "logistic_reference.json") -> LogisticModel:
    """Shipped distance-only model used by calibration fixtures."""
    doc = load_config(name)
    return LogisticModel(
        beta0=float(doc["beta0"]),
        beta1=float(doc["beta1"]),
        fit_loglik=float(doc["loglik"]),
        n_obs=int(doc["n_obs"]),
    )


def curve_to_json(curve: ContestCurve) -> dict:
    return {
        "schema_version": 1,
        "shot_class": curve.shot_class,
        "knots": [[d, p] for d, p in curve.knots],
    }


# ---------------------------------------------------------------------------
# Efficiency summaries
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZoneStats:
    attempts: int
    made: int
    points: int
    assisted: int

    @property
    def fg_pct(self) -> float:
        return self.made / self.attempts if self.attempts else 0.0

    @property
    def pps(self) -> float:
        return self.points / self.attempts if self.attempts else 0.0

    @property
    def assisted_rate(self) -> float:
        return self.assisted / self.attempts if self.attempts else 0.0


@dataclass(frozen=True)
class EfficiencySummary:
    per_zone: dict
    per_class: dict
    c3_vs_atb3_gap: float  # points per 100 shots


def _accumulate(stats: dict, key: str, shot: ShotEvent):
    cur = stats.get(key, (0, 0, 0, 0))
    stats[key] = (
        cur[0] + 1,
        cur[1] + (1 if shot.made else 0),
        cur[2] + (shot.shot_value if shot.made else 0),
        cur[3] + (1 if shot.assisted else 0),
    )


def efficiency_summary(shots) -> EfficiencySummary:
    """Per-zone and per-class attempts, FG%, points per shot, and assist rate.

    The headline gap is 100 * (pps C3 - pps ATB3), i.e. points per 100 shots.
    """
    if not shots:
        raise EmptyInputError("no shots to summarize")
    zone_raw: dict = {}
    class_raw: dict = {}
    for shot in shots:
        court = court_for_league(shot.league)
        idx = classify_zone_indices(
            np.array([shot.location.x]), np.array([shot.location.y]), court
        )[0]
        zone = court.zones[idx].name
        _accumulate(zone_raw, zone.value, shot)
        if zone in CORNER_ZONES:
            cls = "C3"
        elif zone in ATB3_ZONES:
            cls = "ATB3"
        else:
            cls = "TwoPoint"
        _accumulate(class_raw, cls, shot)
    per_zone = {k: ZoneStats(*v) for k, v in sorted(zone_raw.items())}
    per_class = {k: ZoneStats(*v) for k, v in sorted(class_raw.items())}
    pps_c3 = per_class["C3"].pps if "C3" in per_class else 0.0
    pps_atb3 = per_class["ATB3"].pps if "ATB3" in per_class else 0.0
    return EfficiencySummary(
        per_zone=per_zone,
        per_class=per_class,
        c3_vs_atb3_gap=100.0 * (pps_c3 - pps_atb3),
    )


def summary_to_json(summary: EfficiencySummary) -> dict:
    def block(stats: ZoneStats) -> dict:
        return {
            "attempts": stats.attempts,
            "fg_pct": stats.fg_pct,
            "pps": stats.pps,
            "assisted_rate": stats.assisted_rate,
        }

    return {
        "per_zone": {k: block(v) for k, v in summary.per_zone.items()},
        "per_class": {k: block(v) for k, v in summary.per_class.items()},
        "c3_vs_atb3_gap_per_100": summary.c3_vs_atb3_gap,
    }


def model_to_json(model: LogisticModel) -> dict:
    return {
        "beta0": model.beta0,
        "beta1": model.beta1,
        "loglik": model.fit_loglik,
        "n_obs": model.n_obs,
    }
