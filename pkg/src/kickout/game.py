"""Zero-sum drive-and-kick game between the corner defender and the offense.

The defender guarding a stationed corner shooter picks a distance d in
{1..21} feet from the shooter (so 22 - d from the driving lane); the offense
either finishes the drive or kicks the ball out for the corner three. Payoff
to the offense: the kick-out column is the contest curve scaled by the pass
completion rate, and the drive column is the uncontested drive value
attenuated by the helper, drive_base * (1 - alpha^-(22 - d)). The closer the
helper is to the drive, the less the drive is worth; alpha near 1 makes help
devastating everywhere, larger alpha makes it matter only up close.

The game is solved exactly by a dense simplex on the standard value
formulation. Fictitious play is provided as an independent approximation
oracle for cross-checking the solver.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from ._configio import CSV_SCHEMA_LINE, load_config
from .errors import ConfigError, EmptyInputError, NumericalFailureError
from .shotmodel import ContestCurve, contest_points, load_contest_curve

DEFENDER_DISTANCES = tuple(range(1, 22))
OFFENSE_ACTIONS = ("Drive", "Pass")
CORNER_TO_BASKET_FT = 22.0

DUALITY_TOL = 1e-9
SUPPORT_EPS = 1e-9


@dataclass(frozen=True)
class GameSpec:
    alpha: float
    drive_base_points: float
    pass_completion: float
    c3_curve: ContestCurve
    attenuation: str = "multiplicative"

    def __post_init__(self):
        if not self.alpha > 1.0:
            raise ConfigError(
                f"alpha must be > 1 (got {self.alpha}); at alpha = 1 the helper "
                "erases the drive at every distance and the game degenerates"
            )
        if not 0.0 < self.pass_completion <= 1.0:
            raise ConfigError(f"pass_completion={self.pass_completion} must be in (0, 1]")
        if self.drive_base_points < 0:
            raise ConfigError("drive_base_points must be >= 0")
        if self.attenuation not in ("multiplicative", "subtractive"):
            raise ConfigError(f"unknown attenuation mode {self.attenuation!r}")


@dataclass(frozen=True, eq=False)
class PayoffMatrix:
    """Expected points to the offense, rows = defender distance, cols = action."""

    entries: np.ndarray
    distances: tuple = DEFENDER_DISTANCES
    actions: tuple = OFFENSE_ACTIONS

    def __post_init__(self):
        object.__setattr__(self, "entries", np.asarray(self.entries, dtype=float))
        if self.entries.ndim != 2:
            raise ValueError("payoff entries must be a matrix")
        if not np.all(np.isfinite(self.entries)):
            raise ValueError("payoff entries must be finite")
        if self.entries.shape[0] != len(self.distances):
            object.__setattr__(self, "distances", tuple(range(1, self.entries.shape[0] + 1)))
        if self.entries.shape[1] != len(self.actions):
            object.__setattr__(
                self, "actions", tuple(f"a{j}" for j in range(self.entries.shape[1]))
            )


@dataclass(frozen=True, eq=False)
class Equilibrium:
    defender_mix: np.ndarray
    offense_mix: np.ndarray
    value: float
    expected_defender_distance: float
    support: tuple

    def __post_init__(self):
        for mix in (self.defender_mix, self.offense_mix):
            if abs(mix.sum() - 1.0) > 1e-12 or np.any(mix < -1e-15):
                raise ValueError("mixed strategy must be a probability vector")


def build_payoff(spec: GameSpec) -> PayoffMatrix:
    """Payoff matrix over the 21 defender distances and {Drive, Pass}."""
    d = np.array(DEFENDER_DISTANCES, dtype=float)
    pass_col = spec.pass_completion * contest_points(spec.c3_curve, d)
    attenuation = 1.0 - spec.alpha ** -(CORNER_TO_BASKET_FT - d)
    if spec.attenuation == "multiplicative":
        drive_col = spec.drive_base_points * attenuation
    else:
        drive_col = np.maximum(spec.drive_base_points - attenuation, 0.0)
    entries = np.column_stack([drive_col, pass_col])
    if np.any(entries < 0.0) or np.any(entries > 3.0):
        raise ConfigError(
            f"payoff entries outside [0, 3]: min {entries.min():.3f}, max {entries.max():.3f}"
        )
    return PayoffMatrix(entries)


# ---------------------------------------------------------------------------
# Exact solve via simplex
# ---------------------------------------------------------------------------


def _simplex_max(A_ub: np.ndarray, b_ub: np.ndarray, c: np.ndarray):
    """Maximize c@x subject to A_ub@x <= b_ub, x >= 0, with b_ub >= 0.

    Plain dense tableau simplex starting from the slack basis. Entering
    variable: most positive reduced cost, lowest index on ties; leaving row:
    minimum ratio, lowest row index on ties (keeps degenerate solves
    deterministic). Falls back to Bland's rule if an unusually long pivot
    sequence suggests cycling. Returns (x, duals, objective).
    """
    m, n = A_ub.shape
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A_ub
    T[:m, n : n + m] = np.eye(m)
    T[:m, -1] = b_ub
    T[m, :n] = -c
    basis = list(range(n, n + m))
    max_pivots = 50 * (n + m)
    for pivot in range(max_pivots):
        reduced = T[m, :-1]
        if pivot < max_pivots // 2:
            j = int(np.argmin(reduced))
            if reduced[j] >= -1e-12:
                break
        else:  # Bland's rule: first improving column
            improving = np.flatnonzero(reduced < -1e-12)
            if len(improving) == 0:
                break
            j = int(improving[0])
        col = T[:m, j]
        positive = col > 1e-12
        if not positive.any():
            raise NumericalFailureError("linear program is unbounded")
        ratios = np.full(m, np.inf)
        ratios[positive] = T[:m, -1][positive] / col[positive]
        i = int(np.argmin(ratios))
        T[i] /= T[i, j]
        for r in range(m + 1):
            if r != i and T[r, j] != 0.0:
                T[r] -= T[r, j] * T[i]
        basis[i] = j
    else:
        raise NumericalFailureError("simplex failed to terminate")
    x = np.zeros(n + m)
    x[basis] = T[:m, -1]
    duals = T[m, n : n + m].copy()
    return x[:n], duals, float(T[m, -1])


def solve_zero_sum(matrix) -> Equilibrium:
    """Exact equilibrium of the zero-sum game (offense maximizes).

    Solves the value LP for the row (defender) player with a simplex that
    returns a basic optimal solution, so the defender mixes over at most as
    many distances as the offense has actions. The offense mix comes from the
    dual values. Verifies strong duality to 1e-9 before returning.
    """
    if isinstance(matrix, PayoffMatrix):
        A = matrix.entries
        distances = np.array(matrix.distances, dtype=float)
    else:
        A = np.asarray(matrix, dtype=float)
        distances = np.arange(1, A.shape[0] + 1, dtype=float)
    if not np.all(np.isfinite(A)):
        raise NumericalFailureError("payoff matrix must be finite")
    m, n = A.shape
    shift = 1.0 - A.min()
    As = A + shift

    # Defender: max sum(x) s.t. As.T @ x <= 1, x >= 0, with q = x / sum(x)
    # and game value 1 / sum(x). Slack duals give the offense mix.
    x, duals, obj = _simplex_max(As.T, np.ones(n), np.ones(m))
    if obj <= 0:
        raise NumericalFailureError(
            f"degenerate LP objective {obj}; matrix range [{A.min()}, {A.max()}]"
        )
    value_shifted = 1.0 / obj
    defender_mix = x * value_shifted
    dual_sum = duals.sum()
    if dual_sum <= 0:
        raise NumericalFailureError("dual solution vanished; condition suspect")
    offense_mix = duals / dual_sum
    value = value_shifted - shift

    defender_mix = np.maximum(defender_mix, 0.0)
    defender_mix /= defender_mix.sum()
    offense_mix = np.maximum(offense_mix, 0.0)
    offense_mix /= offense_mix.sum()

    minimax = float(np.max(defender_mix @ A))
    maximin = float(np.min(A @ offense_mix))
    if abs(minimax - maximin) > DUALITY_TOL or abs(minimax - value) > 1e-7:
        raise NumericalFailureError(
            f"duality gap {abs(minimax - maximin):.3e} exceeds {DUALITY_TOL}; "
            f"value={value:.6f} minimax={minimax:.6f} maximin={maximin:.6f}"
        )
    value = minimax
    support = tuple(
        int(distances[i]) for i in np.flatnonzero(defender_mix > SUPPORT_EPS)
    )
    return Equilibrium(
        defender_mix=defender_mix,
        offense_mix=offense_mix,
        value=value,
        expected_defender_distance=float(defender_mix @ distances),
        support=support,
    )


# ---------------------------------------------------------------------------
# Fictitious play (verification oracle)
# ---------------------------------------------------------------------------


@numba.njit(cache=True)
def _fp_counts(A, iters):  # pragma: no cover - exercised via fictitious_play
    m, n = A.shape
    row_counts = np.zeros(m)
    col_counts = np.zeros(n)
    row_payoff = np.zeros(m)  # cumulative points conceded per defender row
    col_payoff = np.zeros(n)  # cumulative points earned per offense column
    i = 0
    j = 0
    for _ in range(iters):
        row_counts[i] += 1.0
        col_counts[j] += 1.0
        for r in range(m):
            row_payoff[r] += A[r, j]
        for c in range(n):
            col_payoff[c] += A[i, c]
        best_i = 0
        for r in range(1, m):
            if row_payoff[r] < row_payoff[best_i]:
                best_i = r
        best_j = 0
        for c in range(1, n):
            if col_payoff[c] > col_payoff[best_j]:
                best_j = c
        i = best_i
        j = best_j
    return row_counts / iters, col_counts / iters


@dataclass(frozen=True, eq=False)
class ApproxEquilibrium:
    defender_mix: np.ndarray
    offense_mix: np.ndarray
    value: float
    value_lower: float
    value_upper: float
    exploitability: float
    iterations: int


def exploitability(matrix, defender_mix, offense_mix) -> float:
    """How far a strategy pair is from equilibrium (0 exactly at one)."""
    A = matrix.entries if isinstance(matrix, PayoffMatrix) else np.asarray(matrix, dtype=float)
    upper = float(np.max(defender_mix @ A))  # best offense reply
    lower = float(np.min(A @ offense_mix))  # best defender reply
    return upper - lower


def fictitious_play(matrix, iters: int = 1_000_000) -> ApproxEquilibrium:
    """Simultaneous best-response dynamics from the first row/column.

    Returns empirical mixes, the value bracket they certify, and the
    exploitability (bracket width), which shrinks on the order of
    1/sqrt(iters).
    """
    if iters < 1:
        raise ValueError("iters must be >= 1")
    A = matrix.entries if isinstance(matrix, PayoffMatrix) else np.asarray(matrix, dtype=float)
    defender_mix, offense_mix = _fp_counts(np.ascontiguousarray(A, dtype=np.float64), iters)
    upper = float(np.max(defender_mix @ A))
    lower = float(np.min(A @ offense_mix))
    return ApproxEquilibrium(
        defender_mix=defender_mix,
        offense_mix=offense_mix,
        value=0.5 * (upper + lower),
        value_lower=lower,
        value_upper=upper,
        exploitability=upper - lower,
        iterations=iters,
    )


# ---------------------------------------------------------------------------
# Sweeps and empirical comparison
# ---------------------------------------------------------------------------


def sweep_alpha(spec: GameSpec, alphas) -> list[dict]:
    """Solve the game for each alpha; the rest of the spec is shared."""
    results = []
    for alpha in alphas:
        eq = solve_zero_sum(
            build_payoff(
                GameSpec(
                    alpha=float(alpha),
                    drive_base_points=spec.drive_base_points,
                    pass_completion=spec.pass_completion,
                    c3_curve=spec.c3_curve,
                    attenuation=spec.attenuation,
                )
            )
        )
        results.append({"alpha": float(alpha), "equilibrium": eq})
    return results


def _binned(observed: np.ndarray) -> np.ndarray:
    bins = np.clip(np.rint(observed).astype(int), 1, 21)
    pmf = np.bincount(bins - 1, minlength=21).astype(float)
    return pmf / pmf.sum()


def _is_bimodal(pmf: np.ndarray, prominence: float = 0.05) -> bool:
    padded = np.concatenate([[0.0], pmf, [0.0]])
    peaks = 0
    for i in range(1, len(padded) - 1):
        if padded[i] > padded[i - 1] and padded[i] > padded[i + 1] and padded[i] >= prominence:
            peaks += 1
    return peaks >= 2


def compare_empirical(eq: Equilibrium, observed) -> dict:
    """Binned comparison of observed defender distances with an equilibrium mix.

    Observations are rounded to the 21 one-foot strategy bins; the total
    variation distance is 0.5 * L1 between the binned distributions.
    """
    observed = np.asarray(observed, dtype=float)
    if observed.size == 0:
        raise EmptyInputError("no observed distances")
    emp = _binned(observed)
    tv = 0.5 * float(np.abs(emp - eq.defender_mix).sum())
    return {
        "observed_mean": float(observed.mean()),
        "eq_mean": eq.expected_defender_distance,
        "total_variation": tv,
        "bimodality_flags": {
            "observed": _is_bimodal(emp),
            "equilibrium": _is_bimodal(eq.defender_mix),
        },
    }


# ---------------------------------------------------------------------------
# Config plumbing and calibration
# ---------------------------------------------------------------------------


def load_game_spec(name: str = "game_default.json", alpha: float | None = None) -> GameSpec:
    doc = load_config(name)
    try:
        return GameSpec(
            alpha=float(doc["alpha"] if alpha is None else alpha),
            drive_base_points=float(doc["drive_base_points"]),
            pass_completion=float(doc["pass_completion"]),
            c3_curve=load_contest_curve(doc.get("c3_curve_ref", "contest_curve_c3.json")),
            attenuation=doc.get("attenuation", "multiplicative"),
        )
    except KeyError as exc:
        raise ConfigError(f"malformed game config {name!r}: missing {exc}") from exc


COMMIT_LOW_MAX_FT = 4
COMMIT_HIGH_MIN_FT = 18
TARGET_EXPECTED_DISTANCE = (12.0, 14.0)
CALIBRATION_ALPHAS = (1.3, 1.9)


def commitment_mass(eq: Equilibrium) -> float:
    """Defender mass on the committed regions (close to shooter or to drive)."""
    d = np.array(DEFENDER_DISTANCES)
    mask = (d <= COMMIT_LOW_MAX_FT) | (d >= COMMIT_HIGH_MIN_FT)
    return float(eq.defender_mix[mask].sum())


def calibrate_drive_base(
    curve: ContestCurve | None = None,
    pass_completion: float = 0.8,
    alphas=CALIBRATION_ALPHAS,
    base_grid=None,
) -> dict:
    """Pick drive_base_points so the solved game is committed and balanced.

    Scans a grid and keeps the base maximizing the worst-case margin of the
    expected defender distance inside the target band, subject to at least
    99% of defender mass sitting on the committed regions for every alpha.
    """
    curve = curve or load_contest_curve()
    if base_grid is None:
        base_grid = np.round(np.arange(0.80, 1.1001, 0.0025), 4)
    lo, hi = TARGET_EXPECTED_DISTANCE
    best = None
    for base in base_grid:
        margins = []
        ok = True
        for alpha in alphas:
            spec = GameSpec(
                alpha=alpha,
                drive_base_points=float(base),
                pass_completion=pass_completion,
                c3_curve=curve,
            )
            eq = solve_zero_sum(build_payoff(spec))
            if commitment_mass(eq) < 0.99:
                ok = False
                break
            e = eq.expected_defender_distance
            margins.append(min(e - lo, hi - e))
        if not ok:
            continue
        margin = min(margins)
        if best is None or margin > best["margin"]:
            best = {
                "drive_base_points": float(base),
                "pass_completion": pass_completion,
                "margin": float(margin),
            }
    if best is None or best["margin"] <= 0:
        raise ConfigError("no drive_base_points in the grid meets the calibration targets")
    return best


def game_config_json(calibration: dict, alpha: float = 1.9) -> dict:
    return {
        "schema_version": 1,
        "alpha": alpha,
        "drive_base_points": calibration["drive_base_points"],
        "pass_completion": calibration["pass_completion"],
        "attenuation": "multiplicative",
        "c3_curve_ref": "contest_curve_c3.json",
    }


# ---------------------------------------------------------------------------
# Exports
# ---------------------------------------------------------------------------


def equilibrium_to_json(eq: Equilibrium, alpha: float | None = None) -> dict:
    doc = {
        "value": eq.value,
        "expected_defender_distance": eq.expected_defender_distance,
        "defender_mix": [float(v) for v in eq.defender_mix],
        "offense_mix": {"Drive": float(eq.offense_mix[0]), "Pass": float(eq.offense_mix[1])},
        "support": list(eq.support),
    }
    if alpha is not None:
        doc["alpha"] = alpha
    return doc


def equilibrium_to_csv(eq: Equilibrium) -> str:
    lines = [CSV_SCHEMA_LINE, "distance,probability"]
    for d, p in zip(DEFENDER_DISTANCES, eq.defender_mix):
        lines.append(f"{d},{p!r}")
    return "\n".join(lines) + "\n"


def payoff_to_csv(matrix: PayoffMatrix) -> str:
    lines = [CSV_SCHEMA_LINE, "distance," + ",".join(a.lower() for a in matrix.actions)]
    for d, row in zip(matrix.distances, matrix.entries):
        lines.append(f"{d}," + ",".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"
