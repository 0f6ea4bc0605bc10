"""Shot-log and tracking ingestion plus a seeded synthetic-data generator.

All randomness flows from one explicit seed through numpy's Philox
counter-based generator (recorded as ``philox4x64`` in synthetic configs),
so generated fixtures are reproducible byte for byte.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from . import court as court_mod
from .court import CourtSpec, Point2D, ShotClass, classify_shot, load_court, shot_value
from ._configio import CSV_SCHEMA_LINE
from .errors import (
    ConfigError,
    EmptyWindowError,
    InsufficientHistoryError,
    OffCourtError,
    SchemaError,
    UnknownPlayerError,
)

RNG_ALGORITHM = "philox4x64"

SHOT_LOG_COLUMNS = [
    "shot_id",
    "shooter_id",
    "x",
    "y",
    "made",
    "assisted",
    "def_dist",
    "shot_value",
    "pass_x",
    "pass_y",
    "league",
]


def make_rng(seed, *stream) -> np.random.Generator:
    """Counter-based generator for a seed plus an optional stream tag."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), *stream])))


@dataclass(frozen=True)
class ShotEvent:
    shot_id: str
    shooter_id: str
    location: Point2D
    made: bool
    assisted: bool
    shot_value: int
    league: str = "NBA"
    closest_defender_distance: float | None = None
    pass_origin: Point2D | None = None

    def __post_init__(self):
        if self.shot_value not in (2, 3):
            raise ValueError(f"shot_value must be 2 or 3, got {self.shot_value}")
        if self.closest_defender_distance is not None and self.closest_defender_distance < 0:
            raise ValueError("closest_defender_distance must be >= 0")


@dataclass(frozen=True)
class PlayerPos:
    player_id: str
    team: str
    x: float
    y: float


@dataclass(frozen=True)
class Frame:
    t: float
    ball: tuple[float, float]
    players: tuple[PlayerPos, ...]


@dataclass(frozen=True)
class PossessionTrack:
    possession_id: str
    sample_rate: float
    shot_frame_index: int
    frames: tuple[Frame, ...]

    def __post_init__(self):
        times = [f.t for f in self.frames]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("frames must be strictly time-ordered")
        if not 0 <= self.shot_frame_index < len(self.frames):
            raise ValueError("shot_frame_index out of range")


@dataclass(frozen=True, eq=False)
class TrajectoryWindow:
    """Shooter and defender paths over the pre-shot window, shape (n, 2) each."""

    shooter_path: np.ndarray
    defender_path: np.ndarray
    duration: float = 4.0
    canonical: bool = False

    def __post_init__(self):
        object.__setattr__(self, "shooter_path", np.asarray(self.shooter_path, dtype=float))
        object.__setattr__(self, "defender_path", np.asarray(self.defender_path, dtype=float))
        if self.shooter_path.shape != self.defender_path.shape:
            raise ValueError("shooter and defender paths must have the same shape")


# ---------------------------------------------------------------------------
# Shot-log parsing and serialization
# ---------------------------------------------------------------------------

_COURTS: dict[str, CourtSpec] = {}


def court_for_league(league: str) -> CourtSpec:
    key = league.upper()
    if key not in _COURTS:
        _COURTS[key] = load_court(key.lower())
    return _COURTS[key]


def _row_error(row_index: int, message: str) -> ValueError:
    return ValueError(f"row {row_index}: {message}")


def _parse_float(cell: str, row_index: int, name: str) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise _row_error(row_index, f"{name}={cell!r} is not a number") from None
    if not math.isfinite(value):
        raise _row_error(row_index, f"{name}={cell!r} is not finite")
    return value


def _parse_flag(cell: str, row_index: int, name: str) -> bool:
    if cell not in ("0", "1"):
        raise _row_error(row_index, f"{name}={cell!r} must be 0 or 1")
    return cell == "1"


def _event_from_fields(fields: dict[str, str], row_index: int) -> ShotEvent:
    x = _parse_float(fields["x"], row_index, "x")
    y = _parse_float(fields["y"], row_index, "y")
    made = _parse_flag(fields["made"], row_index, "made")
    assisted = _parse_flag(fields["assisted"], row_index, "assisted")
    league = fields.get("league", "") or "NBA"
    if league not in ("NBA", "FIBA"):
        raise _row_error(row_index, f"league={league!r} must be NBA or FIBA")
    location = Point2D(x, y)
    try:
        derived_class = classify_shot(location, court_for_league(league))
    except OffCourtError as exc:
        raise _row_error(row_index, str(exc)) from None
    derived_value = shot_value(derived_class)
    cell = fields.get("shot_value", "")
    if cell:
        value = int(_parse_float(cell, row_index, "shot_value"))
        if value != derived_value:
            raise _row_error(
                row_index,
                f"shot_value={value} inconsistent with location ({x}, {y}) which is a {derived_class.value}",
            )
    else:
        value = derived_value
    def_dist = None
    if fields.get("def_dist", ""):
        def_dist = _parse_float(fields["def_dist"], row_index, "def_dist")
        if def_dist < 0:
            raise _row_error(row_index, f"def_dist={def_dist} must be >= 0")
    pass_origin = None
    px, py = fields.get("pass_x", ""), fields.get("pass_y", "")
    if bool(px) != bool(py):
        raise _row_error(row_index, "pass_x and pass_y must be given together")
    if px:
        pass_origin = Point2D(
            _parse_float(px, row_index, "pass_x"), _parse_float(py, row_index, "pass_y")
        )
    return ShotEvent(
        shot_id=fields["shot_id"],
        shooter_id=fields["shooter_id"],
        location=location,
        made=made,
        assisted=assisted,
        shot_value=value,
        league=league,
        closest_defender_distance=def_dist,
        pass_origin=pass_origin,
    )


def parse_shot_log(data: bytes | str, format: str = "CSV") -> list[ShotEvent]:
    """Parse a shot log document into events.

    CSV documents need the full header; JSON documents are
    ``{"schema_version": 1, "shots": [...]}`` with the same field names.
    Row indices in error messages are 1-based over data rows.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    fmt = format.upper()
    if fmt == "CSV":
        # Leading '#' lines carry metadata such as the schema version.
        body = "\n".join(ln for ln in data.splitlines() if not ln.startswith("#"))
        reader = csv.DictReader(io.StringIO(body))
        if reader.fieldnames is None:
            raise SchemaError("empty document: missing CSV header")
        missing = [c for c in SHOT_LOG_COLUMNS if c not in reader.fieldnames]
        if missing:
            raise SchemaError(f"missing columns: {', '.join(missing)}")
        events = []
        for i, row in enumerate(reader, start=1):
            if None in row or any(v is None for v in row.values()):
                raise _row_error(i, "wrong number of cells")
            events.append(_event_from_fields(row, i))
        return events
    if fmt == "JSON":
        try:
            doc = json.loads(data)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
        if not isinstance(doc, dict) or "shots" not in doc:
            raise SchemaError("JSON shot log must be an object with a 'shots' array")
        events = []
        for i, row in enumerate(doc["shots"], start=1):
            fields = {k: ("" if row.get(k) is None else str(row.get(k, ""))) for k in SHOT_LOG_COLUMNS}
            for col in ("shot_id", "shooter_id", "x", "y", "made", "assisted"):
                if col not in row:
                    raise SchemaError(f"row {i}: missing field {col!r}")
            if isinstance(row.get("made"), bool):
                fields["made"] = "1" if row["made"] else "0"
            if isinstance(row.get("assisted"), bool):
                fields["assisted"] = "1" if row["assisted"] else "0"
            events.append(_event_from_fields(fields, i))
        return events
    raise SchemaError(f"unknown shot log format {format!r}")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def serialize_shot_log(shots: list[ShotEvent], format: str = "CSV") -> bytes:
    """Canonical rendering of a shot list; stable bytes for equal inputs."""
    fmt = format.upper()
    if fmt == "CSV":
        out = io.StringIO()
        out.write(CSV_SCHEMA_LINE + "\n")
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(SHOT_LOG_COLUMNS)
        for s in shots:
            writer.writerow(
                [
                    s.shot_id,
                    s.shooter_id,
                    _fmt(float(s.location.x)),
                    _fmt(float(s.location.y)),
                    _fmt(s.made),
                    _fmt(s.assisted),
                    _fmt(s.closest_defender_distance),
                    s.shot_value,
                    _fmt(None if s.pass_origin is None else float(s.pass_origin.x)),
                    _fmt(None if s.pass_origin is None else float(s.pass_origin.y)),
                    s.league,
                ]
            )
        return out.getvalue().encode("utf-8")
    if fmt == "JSON":
        rows = []
        for s in shots:
            rows.append(
                {
                    "shot_id": s.shot_id,
                    "shooter_id": s.shooter_id,
                    "x": float(s.location.x),
                    "y": float(s.location.y),
                    "made": s.made,
                    "assisted": s.assisted,
                    "def_dist": s.closest_defender_distance,
                    "shot_value": s.shot_value,
                    "pass_x": None if s.pass_origin is None else float(s.pass_origin.x),
                    "pass_y": None if s.pass_origin is None else float(s.pass_origin.y),
                    "league": s.league,
                }
            )
        doc = {"schema_version": 1, "shots": rows}
        return (json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=2) + "\n").encode(
            "utf-8"
        )
    raise SchemaError(f"unknown shot log format {format!r}")


def parse_tracking(data: bytes | str) -> list[PossessionTrack]:
    """Parse possession tracking JSON (one object or a list of objects)."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if isinstance(doc, dict) and "possessions" in doc:
        doc = doc["possessions"]
    if isinstance(doc, dict):
        doc = [doc]
    tracks = []
    for i, item in enumerate(doc, start=1):
        for key in ("possession_id", "sample_rate", "shot_frame", "frames"):
            if key not in item:
                raise SchemaError(f"possession {i}: missing field {key!r}")
        frames = []
        for frame in item["frames"]:
            players = tuple(
                PlayerPos(str(p["id"]), str(p["team"]), float(p["x"]), float(p["y"]))
                for p in frame["players"]
            )
            frames.append(Frame(float(frame["t"]), tuple(map(float, frame["ball"])), players))
        tracks.append(
            PossessionTrack(
                possession_id=str(item["possession_id"]),
                sample_rate=float(item["sample_rate"]),
                shot_frame_index=int(item["shot_frame"]),
                frames=tuple(frames),
            )
        )
    return tracks


# ---------------------------------------------------------------------------
# Pre-shot window extraction
# ---------------------------------------------------------------------------


def _player_positions(track: PossessionTrack, player_id: str) -> np.ndarray:
    """Positions of one player across all frames, shape (n_frames, 2)."""
    out = np.empty((len(track.frames), 2))
    for i, frame in enumerate(track.frames):
        for p in frame.players:
            if p.player_id == player_id:
                out[i, 0] = p.x
                out[i, 1] = p.y
                break
        else:
            raise UnknownPlayerError(
                f"player {player_id!r} missing from frame {i} of possession {track.possession_id}"
            )
    return out


def _player_team(track: PossessionTrack, player_id: str) -> str:
    for p in track.frames[0].players:
        if p.player_id == player_id:
            return p.team
    raise UnknownPlayerError(f"player {player_id!r} not in possession {track.possession_id}")


def extract_window(
    track: PossessionTrack,
    shooter_id: str,
    defender_id: str | None = None,
    seconds: float = 4.0,
    max_gap_fraction: float = 0.10,
) -> TrajectoryWindow:
    """Shooter and defender paths for the last ``seconds`` before the shot.

    The window ends exactly at the shot frame and is sampled on the track's
    native grid (``seconds * sample_rate`` points). Dropped frames are filled
    by linear interpolation as long as no more than ``max_gap_fraction`` of
    the grid is missing. When ``defender_id`` is omitted, the opponent with
    the smallest mean distance to the shooter over the window is used.
    """
    n = round(seconds * track.sample_rate)
    if n < 1:
        raise ValueError("window must cover at least one sample")
    dt = 1.0 / track.sample_rate
    t_shot = track.frames[track.shot_frame_index].t
    times = np.array([f.t for f in track.frames])
    grid = t_shot - dt * np.arange(n - 1, -1, -1)
    if grid[0] < times[0] - 1e-9:
        raise InsufficientHistoryError(
            f"possession {track.possession_id} starts {t_shot - times[0]:.2f}s before the shot; "
            f"{seconds:.2f}s required"
        )
    usable = times <= t_shot + 1e-9
    times = times[usable]
    # Grid points with no frame within half a sample count as missing.
    nearest = np.min(np.abs(grid[:, None] - times[None, :]), axis=1)
    missing = nearest > 0.5 * dt + 1e-9
    if missing.mean() > max_gap_fraction:
        raise InsufficientHistoryError(
            f"possession {track.possession_id}: {missing.mean():.0%} of the window is missing "
            f"(limit {max_gap_fraction:.0%})"
        )

    def path_for(player_id: str) -> np.ndarray:
        pos = _player_positions(track, player_id)[usable]
        exact = np.abs(grid[:, None] - times[None, :]) <= 1e-9
        if exact.any(axis=1).all():
            idx = exact.argmax(axis=1)
            return pos[idx]
        rel_times = times - t_shot
        rel_grid = grid - t_shot
        return np.column_stack(
            [np.interp(rel_grid, rel_times, pos[:, 0]), np.interp(rel_grid, rel_times, pos[:, 1])]
        )

    shooter_path = path_for(shooter_id)
    if defender_id is None:
        shooter_team = _player_team(track, shooter_id)
        opponents = sorted(
            {p.player_id for p in track.frames[0].players if p.team != shooter_team}
        )
        if not opponents:
            raise UnknownPlayerError(
                f"possession {track.possession_id} has no opponents for {shooter_id!r}"
            )
        best = min(
            opponents,
            key=lambda pid: float(
                np.linalg.norm(path_for(pid) - shooter_path, axis=1).mean()
            ),
        )
        defender_id = best
    defender_path = path_for(defender_id)
    return TrajectoryWindow(shooter_path, defender_path, duration=seconds, canonical=False)


# ---------------------------------------------------------------------------
# Synthetic data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Archetype:
    """Mean shooter/defender paths plus isotropic noise scale."""

    name: str
    shooter_path: tuple
    defender_path: tuple
    noise_scale: float = 0.5
    weight: float = 1.0

    def __post_init__(self):
        if self.noise_scale < 0:
            raise ConfigError(f"archetype {self.name!r}: noise_scale must be >= 0")
        if self.weight <= 0:
            raise ConfigError(f"archetype {self.name!r}: weight must be > 0")


@dataclass(frozen=True)
class SyntheticConfig:
    n_shots: int
    assist_rate_c3: float
    assist_rate_atb3: float
    logistic_beta0: float
    logistic_beta1: float
    seed: int
    cluster_archetypes: tuple[Archetype, ...] = ()
    n_windows: int = 0
    league: str = "NBA"
    class_mix: tuple[float, float, float] = (0.5, 0.25, 0.25)  # two, c3, atb3
    assist_rate_two: float = 0.5
    fg_pct_two: float | None = None
    fg_pct_c3: float | None = None
    fg_pct_atb3: float | None = None
    def_dist_mean_c3: float | None = None
    def_dist_mean_atb3: float | None = None
    def_dist_mean_two: float | None = None
    def_dist_sd: float = 2.0
    pass_origin_zone_weights: tuple[tuple[str, float], ...] | None = None
    rng_algorithm: str = RNG_ALGORITHM

    def __post_init__(self):
        for name in ("assist_rate_c3", "assist_rate_atb3", "assist_rate_two"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ConfigError(f"{name}={v} must be in [0, 1]")
        if self.n_shots < 0 or self.n_windows < 0:
            raise ConfigError("counts must be non-negative")
        if self.n_windows > 0 and not self.cluster_archetypes:
            raise ConfigError("n_windows > 0 requires cluster_archetypes")
        if abs(sum(self.class_mix) - 1.0) > 1e-9 or any(m < 0 for m in self.class_mix):
            raise ConfigError("class_mix must be a probability vector (two, c3, atb3)")
        if self.rng_algorithm != RNG_ALGORITHM:
            raise ConfigError(f"unsupported rng_algorithm {self.rng_algorithm!r}")


def synthetic_config_from_json(text: bytes | str) -> SyntheticConfig:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    doc = json.loads(text)
    doc.pop("schema_version", None)
    doc.pop("comment", None)
    arch = tuple(
        Archetype(
            name=a["name"],
            shooter_path=tuple(map(tuple, a["shooter_path"])),
            defender_path=tuple(map(tuple, a["defender_path"])),
            noise_scale=float(a.get("noise_scale", 0.5)),
            weight=float(a.get("weight", 1.0)),
        )
        for a in doc.pop("cluster_archetypes", [])
    )
    weights = doc.pop("pass_origin_zone_weights", None)
    if weights is not None:
        weights = tuple((str(z), float(w)) for z, w in weights)
    if "class_mix" in doc:
        doc["class_mix"] = tuple(doc["class_mix"])
    try:
        return SyntheticConfig(cluster_archetypes=arch, pass_origin_zone_weights=weights, **doc)
    except TypeError as exc:
        raise ConfigError(f"bad synthetic config: {exc}") from exc


@dataclass(frozen=True, eq=False)
class SyntheticDataset:
    shots: list[ShotEvent]
    windows: list[TrajectoryWindow]
    window_labels: np.ndarray


def _resample_path(points: np.ndarray, n: int) -> np.ndarray:
    points = np.asarray(points, dtype=float)
    if len(points) == n:
        return points.copy()
    t_old = np.linspace(0.0, 1.0, len(points))
    t_new = np.linspace(0.0, 1.0, n)
    return np.column_stack([np.interp(t_new, t_old, points[:, 0]), np.interp(t_new, t_old, points[:, 1])])


def _sample_class_locations(cls: int, count: int, court: CourtSpec, rng) -> np.ndarray:
    """Uniform locations inside one shot-class region, by rejection sampling."""
    out = np.empty((count, 2))
    filled = 0
    want = {0: ShotClass.TWO_POINT, 1: ShotClass.C3, 2: ShotClass.ATB3}[cls]
    names = [rule.name for rule in court.zones]
    while filled < count:
        m = max(4 * (count - filled), 64)
        pts = court_mod.sample_on_court(court, m, rng)
        idx = court_mod.classify_zone_indices(pts[:, 0], pts[:, 1], court)
        zones = np.array([names[i] in court_mod.CORNER_ZONES for i in idx])
        atb = np.array([names[i] in court_mod.ATB3_ZONES for i in idx])
        if want is ShotClass.C3:
            ok = zones
        elif want is ShotClass.ATB3:
            ok = atb & (np.hypot(pts[:, 0], pts[:, 1]) <= 28.0)
        else:
            ok = ~zones & ~atb
        take = pts[ok][: count - filled]
        out[filled : filled + len(take)] = take
        filled += len(take)
    return out


def _sample_zone_points(zone_name: str, count: int, court: CourtSpec, rng) -> np.ndarray:
    names = [rule.name.value for rule in court.zones]
    target = names.index(zone_name)
    out = np.empty((count, 2))
    filled = 0
    attempts = 0
    while filled < count:
        attempts += 1
        if attempts > 10_000:
            raise ConfigError(f"could not sample points inside zone {zone_name!r}")
        pts = court_mod.sample_on_court(court, max(8 * (count - filled), 128), rng)
        idx = court_mod.classify_zone_indices(pts[:, 0], pts[:, 1], court)
        take = pts[idx == target][: count - filled]
        out[filled : filled + len(take)] = take
        filled += len(take)
    return out


def synthesize_dataset(cfg: SyntheticConfig) -> SyntheticDataset:
    """Generate shots and trajectory windows with planted ground truth.

    Deterministic given ``cfg.seed``: the same config yields byte-identical
    serialized output. Shot outcomes follow a logistic curve in distance
    unless a per-class field goal override is set; windows are archetype mean
    paths plus isotropic Gaussian noise.
    """
    court = court_for_league(cfg.league)
    shots_rng = make_rng(cfg.seed, 1)
    classes = shots_rng.choice(3, size=cfg.n_shots, p=np.asarray(cfg.class_mix))
    locations = np.empty((cfg.n_shots, 2))
    for cls in (0, 1, 2):
        sel = classes == cls
        if sel.any():
            locations[sel] = _sample_class_locations(cls, int(sel.sum()), court, shots_rng)
    distances = np.hypot(locations[:, 0], locations[:, 1])
    p_make = 1.0 / (1.0 + np.exp(-(cfg.logistic_beta0 + cfg.logistic_beta1 * distances)))
    for cls, override in ((0, cfg.fg_pct_two), (1, cfg.fg_pct_c3), (2, cfg.fg_pct_atb3)):
        if override is not None:
            p_make[classes == cls] = override
    made = shots_rng.random(cfg.n_shots) < p_make
    assist_rates = np.array([cfg.assist_rate_two, cfg.assist_rate_c3, cfg.assist_rate_atb3])
    assisted = shots_rng.random(cfg.n_shots) < assist_rates[classes]
    mean_by_class = np.array(
        [
            6.0 if cfg.def_dist_mean_two is None else cfg.def_dist_mean_two,
            6.0 if cfg.def_dist_mean_c3 is None else cfg.def_dist_mean_c3,
            6.0 if cfg.def_dist_mean_atb3 is None else cfg.def_dist_mean_atb3,
        ]
    )
    def_dist = np.clip(
        shots_rng.normal(mean_by_class[classes], cfg.def_dist_sd, size=cfg.n_shots), 0.0, None
    )

    pass_origins: list[Point2D | None] = [None] * cfg.n_shots
    if cfg.pass_origin_zone_weights:
        pass_rng = make_rng(cfg.seed, 2)
        zone_names = [z for z, _ in cfg.pass_origin_zone_weights]
        weights = np.array([w for _, w in cfg.pass_origin_zone_weights], dtype=float)
        weights /= weights.sum()
        corner_idx = np.flatnonzero((classes == 1) & assisted)
        if len(corner_idx):
            zone_pick = pass_rng.choice(len(zone_names), size=len(corner_idx), p=weights)
            for z in range(len(zone_names)):
                rows = corner_idx[zone_pick == z]
                if len(rows):
                    pts = _sample_zone_points(zone_names[z], len(rows), court, pass_rng)
                    for r, pt in zip(rows, pts):
                        pass_origins[r] = Point2D(float(pt[0]), float(pt[1]))

    shots = []
    for i in range(cfg.n_shots):
        loc = Point2D(float(locations[i, 0]), float(locations[i, 1]))
        cls = {0: ShotClass.TWO_POINT, 1: ShotClass.C3, 2: ShotClass.ATB3}[int(classes[i])]
        shots.append(
            ShotEvent(
                shot_id=f"S{i:06d}",
                shooter_id=f"P{i % 50:02d}",
                location=loc,
                made=bool(made[i]),
                assisted=bool(assisted[i]),
                shot_value=shot_value(cls),
                league=cfg.league,
                closest_defender_distance=float(def_dist[i]),
                pass_origin=pass_origins[i],
            )
        )

    windows: list[TrajectoryWindow] = []
    labels = np.empty(cfg.n_windows, dtype=np.int64)
    if cfg.n_windows:
        win_rng = make_rng(cfg.seed, 3)
        w = np.array([a.weight for a in cfg.cluster_archetypes], dtype=float)
        w /= w.sum()
        labels = win_rng.choice(len(cfg.cluster_archetypes), size=cfg.n_windows, p=w)
        n_samples = round(4.0 * 25.0)
        means = [
            (
                _resample_path(np.asarray(a.shooter_path, dtype=float), n_samples),
                _resample_path(np.asarray(a.defender_path, dtype=float), n_samples),
            )
            for a in cfg.cluster_archetypes
        ]
        for lab in labels:
            mean_s, mean_d = means[lab]
            scale = cfg.cluster_archetypes[lab].noise_scale
            shooter = mean_s + scale * win_rng.standard_normal(mean_s.shape)
            defender = mean_d + scale * win_rng.standard_normal(mean_d.shape)
            windows.append(TrajectoryWindow(shooter, defender, duration=4.0))
    return SyntheticDataset(shots=shots, windows=windows, window_labels=labels)


def serialize_windows(windows: list[TrajectoryWindow]) -> bytes:
    doc = {
        "schema_version": 1,
        "windows": [
            {
                "shooter_path": [[float(x), float(y)] for x, y in w.shooter_path],
                "defender_path": [[float(x), float(y)] for x, y in w.defender_path],
                "duration": w.duration,
                "canonical": w.canonical,
            }
            for w in windows
        ],
    }
    return (json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=2) + "\n").encode()


def parse_windows(data: bytes | str) -> list[TrajectoryWindow]:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "windows" not in doc:
        raise SchemaError("window document must be an object with a 'windows' array")
    out = []
    for i, w in enumerate(doc["windows"], start=1):
        if "shooter_path" not in w or "defender_path" not in w:
            raise SchemaError(f"window {i}: missing shooter_path/defender_path")
        if not w["shooter_path"]:
            raise EmptyWindowError(f"window {i} has no samples")
        out.append(
            TrajectoryWindow(
                np.asarray(w["shooter_path"], dtype=float),
                np.asarray(w["defender_path"], dtype=float),
                duration=float(w.get("duration", 4.0)),
                canonical=bool(w.get("canonical", False)),
            )
        )
    return out
