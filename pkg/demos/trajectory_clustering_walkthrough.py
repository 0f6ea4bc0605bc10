"""Clustering the shooter-defender dance before a corner three.

Generates synthetic four-second pre-shot windows from movement archetypes,
lets the gap statistic pick the cluster count, and ranks clusters by size and
gyration radius: the stationed-corner patterns come out biggest and tightest.
Run from the repository root:

    python3 demos/trajectory_clustering_walkthrough.py
"""

from pathlib import Path

import numpy as np

from kickout._configio import resolve_config
from kickout.court import load_court
from kickout.data import synthesize_dataset, synthetic_config_from_json
from kickout.trajectories import best_kmeans, featurize, gap_statistic, rank_clusters
from kickout.viz import centroid_paths_svg

OUT = Path(__file__).resolve().parent / "output"


def main():
    cfg = synthetic_config_from_json(resolve_config("synthetic_tracking.json"))
    dataset = synthesize_dataset(cfg)
    court = load_court("nba")
    names = [a.name for a in cfg.cluster_archetypes]
    print(f"{len(dataset.windows)} pre-shot windows from archetypes: {', '.join(names)}\n")

    X = np.array([featurize(w, court) for w in dataset.windows])
    report = gap_statistic(X, range(1, 9), n_refs=10, seed=cfg.seed)
    print("gap statistic over candidate cluster counts:")
    for k, g, s in zip(report.ks, report.gap, report.s_k):
        marker = "  <- chosen" if k == report.chosen_k else ""
        print(f"  k={k}: gap={g:6.3f} (s={s:.3f}){marker}")

    model = best_kmeans(X, report.chosen_k, seed=cfg.seed)
    print("\nclusters by size (gyration = RMS distance to the cluster mean):")
    for row in rank_clusters(model, X):
        share = row["size"] / len(X)
        print(
            f"  cluster {row['cluster']}: {row['size']:3d} windows ({100 * share:4.1f}%), "
            f"gyration {row['gyration']:6.2f} ft"
        )
    ranked = rank_clusters(model, X)
    top_share = (ranked[0]["size"] + ranked[1]["size"]) / len(X)
    print(f"\nthe two biggest clusters hold {100 * top_share:.0f}% of the windows and the")
    print("smallest gyration: shooters parked in a corner while the defender hovers.")

    OUT.mkdir(exist_ok=True)
    target = OUT / "centroid_paths.svg"
    target.write_text(centroid_paths_svg(model, court))
    print(f"wrote {target}")


if __name__ == "__main__":
    main()
