"""Clustering of pre-shot shooter-defender movement.

Windows are resampled to a fixed number of points per path and flattened
into feature vectors (shooter path then defender path, x/y interleaved, ball
location deliberately excluded). Clustering is plain Lloyd k-means with
k-means++ seeding; the cluster count can be chosen by the gap statistic
against uniform reference data drawn over the PCA-aligned bounding box.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .court import CourtSpec
from .data import TrajectoryWindow, make_rng
from .errors import (
    EmptyClusterError,
    EmptyWindowError,
    TooFewPointsError,
)

DEFAULT_SAMPLES_PER_PATH = 20


def featurize(
    window: TrajectoryWindow,
    court: CourtSpec | None = None,
    samples_per_path: int = DEFAULT_SAMPLES_PER_PATH,
    canonicalize: bool = False,
) -> np.ndarray:
    """Flatten a window into a feature vector of 4 * samples_per_path floats.

    Paths are linearly resampled in time. With ``canonicalize`` set, windows
    ending in the left corner (shooter finishes at x < 0) are mirrored onto
    the right corner so both corners share one shape space; the default keeps
    left and right distinct. The mirror axis is the court's y-axis, which is
    why the court argument exists; geometry constants are not needed.
    """
    shooter = np.asarray(window.shooter_path, dtype=float)
    defender = np.asarray(window.defender_path, dtype=float)
    if shooter.size == 0 or defender.size == 0:
        raise EmptyWindowError("window has no samples")
    if not (np.isfinite(shooter).all() and np.isfinite(defender).all()):
        raise ValueError("window contains non-finite coordinates")

    def resample(path: np.ndarray) -> np.ndarray:
        if len(path) == samples_per_path:
            return path.copy()
        if len(path) == 1:
            return np.repeat(path, samples_per_path, axis=0)
        t_old = np.linspace(0.0, 1.0, len(path))
        t_new = np.linspace(0.0, 1.0, samples_per_path)
        return np.column_stack(
            [np.interp(t_new, t_old, path[:, 0]), np.interp(t_new, t_old, path[:, 1])]
        )

    shooter = resample(shooter)
    defender = resample(defender)
    if canonicalize and shooter[-1, 0] < 0:
        shooter = shooter * np.array([-1.0, 1.0])
        defender = defender * np.array([-1.0, 1.0])
    return np.concatenate([shooter.ravel(), defender.ravel()])


def mirror_features(vec: np.ndarray) -> np.ndarray:
    """Mirror a feature vector across the court's y-axis (negate every x)."""
    out = np.asarray(vec, dtype=float).copy()
    out[0::2] *= -1.0
    return out


@dataclass(frozen=True, eq=False)
class ClusterModel:
    k: int
    centroids: np.ndarray  # (k, dim)
    assignments: np.ndarray  # (n,)
    within_ss: float
    seed: int
    iteration_within_ss: tuple[float, ...]  # objective after each assignment step


@dataclass(frozen=True)
class GapReport:
    ks: tuple[int, ...]
    log_wk: tuple[float, ...]
    expected_log_wk_ref: tuple[float, ...]
    gap: tuple[float, ...]
    s_k: tuple[float, ...]
    chosen_k: int
    n_refs: int


def _pairwise_sq(X: np.ndarray, C: np.ndarray) -> np.ndarray:
    d2 = (
        np.sum(X * X, axis=1)[:, None]
        + np.sum(C * C, axis=1)[None, :]
        - 2.0 * (X @ C.T)
    )
    return np.maximum(d2, 0.0)


def _kmeanspp(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = len(X)
    centroids = np.empty((k, X.shape[1]))
    first = int(rng.integers(n))
    centroids[0] = X[first]
    closest = _pairwise_sq(X, centroids[:1])[:, 0]
    for j in range(1, k):
        total = closest.sum()
        if total <= 0:
            # All remaining mass sits on existing centroids; reuse any point.
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=closest / total))
        centroids[j] = X[idx]
        closest = np.minimum(closest, _pairwise_sq(X, centroids[j : j + 1])[:, 0])
    return centroids


def kmeans(
    X,
    k: int,
    seed: int,
    max_iter: int = 300,
    tol: float = 1e-6,
) -> ClusterModel:
    """Lloyd's algorithm with k-means++ seeding.

    The within-cluster sum of squares is recorded after every assignment step
    and never increases. An emptied cluster is reseeded at the point farthest
    from its own centroid. Stops when the largest centroid shift drops below
    ``tol`` or after ``max_iter`` iterations.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        X = np.vstack(X)
    n = len(X)
    if k < 1:
        raise TooFewPointsError("k must be >= 1")
    if n < k:
        raise TooFewPointsError(f"{n} points cannot form {k} clusters")
    rng = make_rng(seed, 101)
    centroids = _kmeanspp(X, k, rng)
    history: list[float] = []
    assignments = np.zeros(n, dtype=np.int64)

    def exact_within(assign, cents):
        # Direct differences, exact zero for coincident points (the matmul
        # expansion used for the argmin is faster but not exact).
        return float(((X - cents[assign]) ** 2).sum())

    for _ in range(max_iter):
        d2 = _pairwise_sq(X, centroids)
        assignments = np.argmin(d2, axis=1)
        history.append(exact_within(assignments, centroids))
        new_centroids = centroids.copy()
        for j in range(k):
            members = assignments == j
            if members.any():
                new_centroids[j] = X[members].mean(axis=0)
            else:
                own = d2[np.arange(n), assignments]
                new_centroids[j] = X[int(np.argmax(own))]
        shift = float(np.sqrt(((new_centroids - centroids) ** 2).sum(axis=1)).max())
        centroids = new_centroids
        if shift < tol:
            break
    d2 = _pairwise_sq(X, centroids)
    assignments = np.argmin(d2, axis=1)
    within = exact_within(assignments, centroids)
    history.append(within)
    return ClusterModel(
        k=k,
        centroids=centroids,
        assignments=assignments,
        within_ss=within,
        seed=seed,
        iteration_within_ss=tuple(history),
    )


def best_kmeans(X, k: int, seed: int, n_restarts: int = 8, **kwargs) -> ClusterModel:
    """Best of ``n_restarts`` seeded k-means runs (lowest within_ss).

    Restart seeds derive deterministically from ``seed``, so the result is
    reproducible; ties keep the earliest restart.
    """
    best = None
    for r in range(n_restarts):
        model = kmeans(X, k, seed=_stream_seed(seed, 9, r), **kwargs)
        if best is None or model.within_ss < best.within_ss:
            best = model
    return best


def gap_statistic(X, k_range, n_refs: int = 10, seed: int = 0, n_restarts: int = 3) -> GapReport:
    """Gap-statistic model selection over ``k_range``.

    Reference datasets are uniform over the PCA-aligned bounding box of the
    data. Every dispersion W_k is the best of ``n_restarts`` seeded k-means
    runs so local optima do not masquerade as structure. The chosen k is the
    smallest with gap(k) >= gap(k+1) - s(k+1); results are bit-reproducible
    for a fixed seed because each run draws from its own counter-based stream
    keyed by (seed, k, ref index, restart).
    """
    X = np.asarray(X, dtype=float)
    ks = sorted(set(int(k) for k in k_range))
    if not ks:
        raise TooFewPointsError("k_range must be non-empty")
    if n_refs < 10:
        raise ValueError("need at least 10 reference datasets")
    if len(X) < max(ks):
        raise TooFewPointsError(f"{len(X)} points cannot form {max(ks)} clusters")

    mean = X.mean(axis=0)
    Xc = X - mean
    _, _, vt = np.linalg.svd(Xc, full_matrices=False)
    Z = Xc @ vt.T
    lo, hi = Z.min(axis=0), Z.max(axis=0)

    refs = []
    for b in range(n_refs):
        rng = make_rng(seed, 7, b)
        Zs = rng.uniform(lo, hi, size=Z.shape)
        refs.append(Zs @ vt + mean)

    def best_within(data, k, *tags):
        return min(
            kmeans(data, k, seed=_stream_seed(seed, *tags, r)).within_ss
            for r in range(n_restarts)
        )

    tiny = np.finfo(float).tiny
    log_wk, exp_ref, gaps, s_k = [], [], [], []
    for k in ks:
        log_w = math.log(max(best_within(X, k, 5, k), tiny))
        ref_logs = np.array(
            [
                math.log(max(best_within(refs[b], k, 6, k, b), tiny))
                for b in range(n_refs)
            ]
        )
        log_wk.append(log_w)
        exp_ref.append(float(ref_logs.mean()))
        gaps.append(float(ref_logs.mean() - log_w))
        s_k.append(float(ref_logs.std(ddof=0) * math.sqrt(1.0 + 1.0 / n_refs)))

    chosen = ks[int(np.argmax(gaps))]
    for i, k in enumerate(ks[:-1]):
        if gaps[i] >= gaps[i + 1] - s_k[i + 1]:
            chosen = k
            break
    return GapReport(
        ks=tuple(ks),
        log_wk=tuple(log_wk),
        expected_log_wk_ref=tuple(exp_ref),
        gap=tuple(gaps),
        s_k=tuple(s_k),
        chosen_k=chosen,
        n_refs=n_refs,
    )


def _stream_seed(seed: int, *tags: int) -> int:
    """Distinct deterministic 63-bit child seed for a tagged stream."""
    out = np.random.SeedSequence([int(seed), *tags]).generate_state(1, np.uint64)[0]
    return int(out >> np.uint64(1))


def radius_of_gyration(members) -> float:
    """Root-mean-square distance of members from their mean vector."""
    M = np.asarray(members, dtype=float)
    if M.ndim == 1:
        M = M[None, :]
    if M.size == 0:
        raise EmptyClusterError("cluster has no members")
    center = M.mean(axis=0)
    return float(np.sqrt(np.mean(np.sum((M - center) ** 2, axis=1))))


def rank_clusters(model: ClusterModel, X) -> list[dict]:
    """Clusters sorted by size (descending), each with its gyration radius."""
    X = np.asarray(X, dtype=float)
    rows = []
    for j in range(model.k):
        members = X[model.assignments == j]
        rows.append(
            {
                "cluster": j,
                "size": int(len(members)),
                "gyration": radius_of_gyration(members) if len(members) else 0.0,
            }
        )
    rows.sort(key=lambda r: (-r["size"], r["cluster"]))
    return rows


def cluster_export_json(model: ClusterModel, X) -> dict:
    return {
        "schema_version": 1,
        "k": model.k,
        "seed": model.seed,
        "within_ss": model.within_ss,
        "centroids": [[float(v) for v in c] for c in model.centroids],
        "assignments": [int(a) for a in model.assignments],
        "per_cluster": [
            {"cluster": r["cluster"], "size": r["size"], "gyration": r["gyration"]}
            for r in rank_clusters(model, X)
        ],
    }
