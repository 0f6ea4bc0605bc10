"""Command-line entry point.

Subcommands: summarize, cluster, game, synth, passes, calibrate. Outputs are
plain CSV/JSON/SVG written under --out; every command with a fixed seed and
fixed inputs is byte-reproducible. Exit codes: 0 success, 1 usage/config or
schema error, 2 data error. Set KICKOUT_CONFIG_DIR to override packaged
configs by file name.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from ._configio import CSV_SCHEMA_LINE, dumps_canonical
from . import analytics, game, shotmodel, trajectories, viz
from .court import load_court
from .data import (
    extract_window,
    parse_shot_log,
    parse_tracking,
    parse_windows,
    synthesize_dataset,
    synthetic_config_from_json,
    serialize_shot_log,
    serialize_windows,
)
from .errors import (
    ConfigError,
    DegenerateFitError,
    EmptyInputError,
    InsufficientHistoryError,
    KickoutError,
    MissingClassError,
    NoPassDataError,
    NotConvergedError,
    OffCourtError,
    SchemaError,
    TooFewPointsError,
    UnknownPlayerError,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

_USAGE_ERRORS = (SchemaError, ConfigError, ValueError, NotConvergedError)
_DATA_ERRORS = (
    EmptyInputError,
    TooFewPointsError,
    NoPassDataError,
    MissingClassError,
    InsufficientHistoryError,
    UnknownPlayerError,
    OffCourtError,
    DegenerateFitError,
)


class _Writer:
    """Collects output files and refuses to overwrite without --force."""

    def __init__(self, out_dir: str, force: bool, formats: set[str]):
        self.out = Path(out_dir)
        self.force = force
        self.formats = formats
        self.written: list[Path] = []

    def path(self, name: str) -> Path:
        return self.out / name

    def want(self, name: str) -> bool:
        suffix = Path(name).suffix.lstrip(".")
        if suffix in ("csv", "json") and suffix not in self.formats:
            return False
        return True

    def write(self, name: str, payload, always: bool = False) -> None:
        # ``always`` marks outputs with a single serialization (no CSV/JSON
        # twin) that --format must not filter away.
        if not always and not self.want(name):
            return
        self.out.mkdir(parents=True, exist_ok=True)
        target = self.path(name)
        if target.exists() and not self.force:
            raise ConfigError(f"refusing to overwrite {target}; pass --force to allow")
        data = payload if isinstance(payload, bytes) else payload.encode("utf-8")
        target.write_bytes(data)
        self.written.append(target)


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--court", default="nba", help="court config: nba, fiba, or a path")
    parser.add_argument("--seed", type=int, default=None, help="seed for stochastic commands")
    parser.add_argument("--out", default="out", help="output directory")
    parser.add_argument(
        "--format",
        choices=("csv", "json", "both"),
        default="both",
        help="restrict tabular outputs to one format (SVGs are always written)",
    )
    parser.add_argument("--force", action="store_true", help="overwrite existing outputs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kickout", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("summarize", help="shot-log efficiency summary and gap decomposition")
    p.add_argument("shot_log", help="CSV or JSON shot log")
    _common_flags(p)

    p = sub.add_parser("cluster", help="cluster pre-shot shooter-defender windows")
    p.add_argument("tracking", help="tracking possessions JSON or extracted windows JSON")
    p.add_argument("--k", default="auto", help="cluster count, or 'auto' for the gap statistic")
    p.add_argument("--samples-per-path", type=int, default=trajectories.DEFAULT_SAMPLES_PER_PATH)
    p.add_argument(
        "--canonicalize",
        action="store_true",
        help="mirror left-corner windows onto the right corner before clustering",
    )
    _common_flags(p)

    p = sub.add_parser("game", help="solve the drive-and-kick positioning game")
    p.add_argument("--config", default="game_default.json", help="game config name or path")
    p.add_argument("--alphas", default=None, help="comma-separated helper-impact values")
    p.add_argument("--observed", default=None, help="observed defender distances (JSON or CSV)")
    _common_flags(p)

    p = sub.add_parser("synth", help="generate a seeded synthetic dataset")
    p.add_argument("--config", required=True, help="synthetic config JSON")
    _common_flags(p)

    p = sub.add_parser("passes", help="pass-origin table for corner threes")
    p.add_argument("shot_log", help="CSV or JSON shot log with pass origins")
    _common_flags(p)

    p = sub.add_parser("calibrate", help="refit the default game config from the contest curve")
    _common_flags(p)
    return parser


def _read(path: str) -> bytes:
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"input file not found: {path}")
    return p.read_bytes()


def _load_shots(path: str):
    fmt = "JSON" if path.endswith(".json") else "CSV"
    return parse_shot_log(_read(path), fmt)


def cmd_summarize(args, writer: _Writer) -> int:
    shots = _load_shots(args.shot_log)
    if not shots:
        raise EmptyInputError(f"shot log {args.shot_log} has no rows")
    court = load_court(args.court)
    summary = shotmodel.efficiency_summary(shots)
    doc = {"schema_version": 1, "efficiency": shotmodel.summary_to_json(summary)}
    try:
        stats = analytics.assist_stats(shots)
        doc["assist_stats"] = analytics.assist_stats_to_json(stats)
    except MissingClassError as exc:
        doc["assist_stats"] = {"unavailable": str(exc)}
    try:
        model = shotmodel.fit_logistic(shots)
        doc["distance_model"] = shotmodel.model_to_json(model)
        doc["gap_decomposition"] = analytics.gap_to_json(
            analytics.gap_decomposition(shots, model)
        )
    except (DegenerateFitError, MissingClassError) as exc:
        doc["gap_decomposition"] = {"unavailable": str(exc)}
    writer.write("summary.json", dumps_canonical(doc))

    lines = [CSV_SCHEMA_LINE, "zone,attempts,fg_pct,pps,assisted_rate"]
    for name, z in summary.per_zone.items():
        lines.append(f"{name},{z.attempts},{z.fg_pct!r},{z.pps!r},{z.assisted_rate!r}")
    for name, z in summary.per_class.items():
        lines.append(f"class:{name},{z.attempts},{z.fg_pct!r},{z.pps!r},{z.assisted_rate!r}")
    lines.append(f"c3_vs_atb3_gap_per_100,,{summary.c3_vs_atb3_gap!r},,")
    writer.write("summary.csv", "\n".join(lines) + "\n")
    writer.write("heatmap.svg", viz.heatmap_svg(summary, court))
    return EXIT_OK


def _windows_from_input(args):
    raw = _read(args.tracking)
    head = raw.lstrip()[:512].decode("utf-8", errors="replace")
    if '"windows"' in head:
        return parse_windows(raw)
    tracks = parse_tracking(raw)
    doc = json.loads(raw.decode("utf-8"))
    items = doc["possessions"] if isinstance(doc, dict) and "possessions" in doc else doc
    if isinstance(items, dict):
        items = [items]
    windows = []
    for track, item in zip(tracks, items):
        shooter = item.get("shooter_id")
        if shooter is None:
            raise SchemaError(f"possession {track.possession_id}: missing shooter_id")
        windows.append(
            extract_window(track, str(shooter), item.get("defender_id"))
        )
    return windows


def cmd_cluster(args, writer: _Writer) -> int:
    if args.seed is None:
        raise ConfigError("cluster is stochastic: --seed is required")
    windows = _windows_from_input(args)
    court = load_court(args.court)
    X = np.array(
        [
            trajectories.featurize(
                w, court, samples_per_path=args.samples_per_path, canonicalize=args.canonicalize
            )
            for w in windows
        ]
    )
    gap_doc = None
    if args.k == "auto":
        k_max = min(8, len(X) - 1) if len(X) > 1 else 1
        report = trajectories.gap_statistic(X, range(1, k_max + 1), n_refs=10, seed=args.seed)
        k = report.chosen_k
        gap_doc = {
            "ks": list(report.ks),
            "gap": list(report.gap),
            "s_k": list(report.s_k),
            "chosen_k": report.chosen_k,
            "n_refs": report.n_refs,
        }
    else:
        k = int(args.k)
    model = trajectories.best_kmeans(X, k, seed=args.seed)
    doc = trajectories.cluster_export_json(model, X)
    doc["samples_per_path"] = args.samples_per_path
    doc["canonicalized"] = bool(args.canonicalize)
    if gap_doc is not None:
        doc["gap_statistic"] = gap_doc
    writer.write("clusters.json", dumps_canonical(doc), always=True)
    ranked = trajectories.rank_clusters(model, X)
    lines = [CSV_SCHEMA_LINE, "cluster,size,gyration"]
    for row in ranked:
        lines.append(f"{row['cluster']},{row['size']},{row['gyration']!r}")
    writer.write("gyration.csv", "\n".join(lines) + "\n")
    writer.write("centroids.svg", viz.centroid_paths_svg(model, court))
    return EXIT_OK


def _load_observed(path: str) -> np.ndarray:
    raw = _read(path)
    if path.endswith(".json"):
        doc = json.loads(raw.decode("utf-8"))
        values = doc["distances"] if isinstance(doc, dict) else doc
        return np.asarray(values, dtype=float)
    lines = raw.decode("utf-8").strip().splitlines()
    if lines and lines[0].strip().lower() in ("distance", "distances"):
        lines = lines[1:]
    return np.array([float(v) for v in lines if v.strip()], dtype=float)


def cmd_game(args, writer: _Writer) -> int:
    spec = game.load_game_spec(args.config)
    alphas = [spec.alpha]
    if args.alphas:
        alphas = [float(a) for a in args.alphas.split(",") if a.strip()]
    results = []
    for alpha in alphas:
        spec_a = game.load_game_spec(args.config, alpha=alpha)
        matrix = game.build_payoff(spec_a)
        eq = game.solve_zero_sum(matrix)
        results.append((alpha, matrix, eq))
        tag = f"alpha{alpha:g}"
        writer.write(f"equilibrium_{tag}.json", dumps_canonical(
            {"schema_version": 1, **game.equilibrium_to_json(eq, alpha=alpha)}
        ))
        writer.write(f"equilibrium_{tag}.csv", game.equilibrium_to_csv(eq))
        writer.write(f"payoff_{tag}.csv", game.payoff_to_csv(matrix))
        writer.write(f"strategy_{tag}.svg", viz.strategy_bars_svg(eq, alpha=alpha))
    if args.observed:
        observed = _load_observed(args.observed)
        comparison = {
            "schema_version": 1,
            "n_observed": int(observed.size),
            "per_alpha": [
                {"alpha": alpha, **game.compare_empirical(eq, observed)}
                for alpha, _, eq in results
            ],
        }
        writer.write("comparison.json", dumps_canonical(comparison), always=True)
    return EXIT_OK


def cmd_synth(args, writer: _Writer) -> int:
    from ._configio import resolve_config

    cfg = synthetic_config_from_json(resolve_config(args.config))
    if args.seed is not None:
        from dataclasses import replace

        cfg = replace(cfg, seed=args.seed)
    dataset = synthesize_dataset(cfg)
    writer.write("shots.csv", serialize_shot_log(dataset.shots, "CSV"))
    writer.write("shots.json", serialize_shot_log(dataset.shots, "JSON"))
    writer.write("windows.json", serialize_windows(dataset.windows), always=True)
    writer.write(
        "labels.json",
        dumps_canonical(
            {"schema_version": 1, "window_labels": [int(v) for v in dataset.window_labels]}
        ),
        always=True,
    )
    return EXIT_OK


def cmd_passes(args, writer: _Writer) -> int:
    shots = _load_shots(args.shot_log)
    if not shots:
        raise EmptyInputError(f"shot log {args.shot_log} has no rows")
    table = analytics.pass_origin_table(shots)
    writer.write(
        "pass_table.json",
        dumps_canonical({"schema_version": 1, **analytics.pass_table_to_json(table)}),
    )
    writer.write("pass_table.csv", analytics.pass_table_to_csv(table))
    return EXIT_OK


def cmd_calibrate(args, writer: _Writer) -> int:
    calibration = game.calibrate_drive_base()
    doc = game.game_config_json(calibration)
    writer.write("game_default.json", dumps_canonical(doc), always=True)
    sys.stdout.write(
        f"drive_base_points={calibration['drive_base_points']} "
        f"margin={calibration['margin']:.3f}\n"
    )
    return EXIT_OK


_COMMANDS = {
    "summarize": cmd_summarize,
    "cluster": cmd_cluster,
    "game": cmd_game,
    "synth": cmd_synth,
    "passes": cmd_passes,
    "calibrate": cmd_calibrate,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code == 0:  # --help
            raise
        return EXIT_USAGE
    formats = {"csv", "json"} if args.format == "both" else {args.format}
    writer = _Writer(args.out, args.force, formats)
    try:
        return _COMMANDS[args.command](args, writer)
    except _DATA_ERRORS as exc:
        sys.stderr.write(f"kickout {args.command}: data error: {exc}\n")
        return EXIT_DATA
    except _USAGE_ERRORS as exc:
        sys.stderr.write(f"kickout {args.command}: {exc}\n")
        return EXIT_USAGE
    except KickoutError as exc:
        sys.stderr.write(f"kickout {args.command}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
