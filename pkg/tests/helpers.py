"""Shared fixture generators and independent oracles for the test suite."""

import numpy as np

from kickout.data import make_rng


def enumeration_game_value(A):
    """Exact value of an m x 2 zero-sum game by exhaustive support enumeration.

    The offense mix is (t, 1 - t); the offense guarantee
    f(t) = min_i (t A[i,0] + (1 - t) A[i,1]) is piecewise linear and concave,
    so its maximum sits at t = 0, t = 1, or an intersection of two row lines.
    Evaluates every candidate and returns the best guarantee. Independent of
    the simplex solver by construction.
    """
    A = np.asarray(A, dtype=float)
    m, n = A.shape
    assert n == 2, "oracle covers two-column games"
    candidates = [0.0, 1.0]
    for i in range(m):
        for k in range(i + 1, m):
            denom = (A[i, 0] - A[i, 1]) - (A[k, 0] - A[k, 1])
            if denom != 0.0:
                t = (A[k, 1] - A[i, 1]) / denom
                if 0.0 <= t <= 1.0:
                    candidates.append(t)
    best = -np.inf
    for t in candidates:
        guarantee = np.min(t * A[:, 0] + (1.0 - t) * A[:, 1])
        best = max(best, guarantee)
    return float(best)


def random_payoff_matrices(count, seed, shape=(21, 2), low=0.0, high=3.0):
    rng = make_rng(seed, 321)
    return [rng.uniform(low, high, size=shape) for _ in range(count)]

# Scale ratios between successive separation levels. The first split is the
# widest so each added cluster explains real structure at every k.
_CHAIN_RATIOS = (3.0, 2.2, 1.9, 1.7, 1.6)


def hierarchical_blob_fixture(k, seed, n_per=25, dim=2, noise=1.0, base=200.0):
    """Gaussian blobs with hierarchically separated centers.

    Every pairwise center separation is at least 8x the noise scale. Returns
    (X, labels, centers).
    """
    rng = make_rng(seed, 55)
    centers = None
    for _ in range(200):
        cand = [np.zeros(dim)]
        scale = base
        for j in range(k - 1):
            parent = cand[int(rng.integers(len(cand)))]
            u = rng.standard_normal(dim)
            u /= np.linalg.norm(u)
            cand.append(parent + scale * u)
            scale /= _CHAIN_RATIOS[min(j, len(_CHAIN_RATIOS) - 1)]
        cand = np.array(cand)
        if k == 1:
            centers = cand
            break
        dmin = min(
            np.linalg.norm(a - b) for i, a in enumerate(cand) for b in cand[i + 1 :]
        )
        if dmin >= 8.0 * noise:
            centers = cand
            break
    assert centers is not None, "failed to place separated centers"
    X = np.vstack([centers[j] + noise * rng.standard_normal((n_per, dim)) for j in range(k)])
    labels = np.repeat(np.arange(k), n_per)
    return X, labels, centers
