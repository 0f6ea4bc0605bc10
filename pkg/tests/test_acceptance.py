"""Acceptance suite: one test per release criterion, printed pass/fail.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one line per
criterion. Tolerances are fixed here, not tuned at runtime.
"""

import functools
import json
import math
import time
from pathlib import Path

import numpy as np
import pytest
from helpers import (
    enumeration_game_value,
    hierarchical_blob_fixture,
    random_payoff_matrices,
)

from kickout.cli import main as cli_main
from kickout.data import make_rng
from kickout.game import (
    commitment_mass,
    fictitious_play,
    load_game_spec,
    solve_zero_sum,
    sweep_alpha,
)
from kickout.shotmodel import fisher_covariance, fit_logistic, loglik_and_grad, sigmoid
from kickout.trajectories import gap_statistic, radius_of_gyration

Z99 = 2.5758293035489004  # two-sided 99% normal quantile


def criterion(number, description):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"ACCEPTANCE {number:2d} FAIL {description}")
                raise
            print(f"ACCEPTANCE {number:2d} PASS {description}")

        return run

    return wrap


@criterion(1, "exact solver: duality and unexploitability on 500 random games in under 5s")
def test_solver_duality_on_random_matrices():
    matrices = random_payoff_matrices(500, seed=1001)
    start = time.perf_counter()
    for A in matrices:
        eq = solve_zero_sum(A)
        minimax = np.max(eq.defender_mix @ A)
        maximin = np.min(A @ eq.offense_mix)
        assert abs(minimax - maximin) <= 1e-9
        assert np.all(eq.defender_mix @ A <= eq.value + 1e-9)
        assert np.all(A @ eq.offense_mix >= eq.value - 1e-9)
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"500 solves took {elapsed:.2f}s"


@criterion(2, "solver value agrees with fictitious play (1e-3) and enumeration (1e-9) on 100 games")
def test_oracle_agreement():
    for A in random_payoff_matrices(100, seed=1002):
        eq = solve_zero_sum(A)
        assert eq.value == pytest.approx(enumeration_game_value(A), abs=1e-9)
        fp = fictitious_play(A, iters=10_000_000)
        assert abs(fp.value - eq.value) < 1e-3


@criterion(3, "matching pennies solves to value 0 and (0.5, 0.5) mixes within 1e-12")
def test_matching_pennies_exact():
    eq = solve_zero_sum(np.array([[1.0, -1.0], [-1.0, 1.0]]))
    assert abs(eq.value) <= 1e-12
    assert np.all(np.abs(eq.defender_mix - 0.5) <= 1e-12)
    assert np.all(np.abs(eq.offense_mix - 0.5) <= 1e-12)


@criterion(4, "shipped config commits the defender at alpha 1.3/1.9 with 12-14 ft expected distance")
def test_committed_equilibrium_structure():
    repo = Path(__file__).resolve().parent.parent
    assert (repo / "scripts" / "calibrate_game_config.py").is_file()
    assert (repo / "src" / "kickout" / "configs" / "game_default.json").is_file()
    spec = load_game_spec()
    for entry in sweep_alpha(spec, [1.3, 1.9]):
        eq = entry["equilibrium"]
        assert commitment_mass(eq) >= 0.99
        assert 12.0 <= eq.expected_defender_distance <= 14.0


@criterion(5, "gyration radius matches a brute-force oracle to 1e-12 on 1000 random clusters")
def test_radius_of_gyration_oracle():
    rng = make_rng(1005, 0)
    for _ in range(1000):
        n = int(rng.integers(1, 15))
        dim = int(rng.integers(1, 7))
        members = rng.uniform(-60.0, 60.0, size=(n, dim))
        mean = [math.fsum(members[:, j]) / n for j in range(dim)]
        total = math.fsum(
            (members[i, j] - mean[j]) ** 2 for i in range(n) for j in range(dim)
        )
        assert abs(radius_of_gyration(members) - math.sqrt(total / n)) < 1e-12
    assert radius_of_gyration([[4.0, -1.0, 0.5]]) == 0.0
    assert radius_of_gyration([[0.0, 0.0], [7.0, 0.0]]) == pytest.approx(3.5, abs=1e-15)


@criterion(6, "gap statistic recovers planted k in {3,4,5} on >=90% of 50 seeds in under 60s")
def test_gap_statistic_recovery():
    start = time.perf_counter()
    for planted in (3, 4, 5):
        hits = 0
        for seed in range(50):
            X, _, _ = hierarchical_blob_fixture(planted, seed)
            report = gap_statistic(X, range(1, 8), n_refs=10, seed=seed)
            hits += report.chosen_k == planted
        assert hits >= 45, f"planted k={planted}: only {hits}/50 recovered"
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0, f"recovery experiment took {elapsed:.1f}s"


@criterion(7, "logistic gradient matches finite differences and planted betas sit in the 99% CI")
def test_logistic_gradient_and_recovery():
    rng = make_rng(1007, 0)
    d = rng.uniform(0.0, 30.0, 500)
    y = (rng.random(500) < 0.5).astype(float)
    h = 1e-5
    for _ in range(100):
        beta = rng.uniform(-2.0, 2.0, 2) * np.array([1.0, 0.1])
        _, grad = loglik_and_grad(beta, d, y)
        for j in range(2):
            e = np.zeros(2)
            e[j] = h
            hi, _ = loglik_and_grad(beta + e, d, y)
            lo, _ = loglik_and_grad(beta - e, d, y)
            fd = (hi - lo) / (2 * h)
            assert abs(grad[j] - fd) / max(1.0, abs(fd)) < 1e-5

    gen = make_rng(1007, 1)
    beta_true = (2.0, -0.08)
    dist = gen.uniform(0.0, 30.0, 50_000)
    made = (gen.random(50_000) < sigmoid(beta_true[0] + beta_true[1] * dist)).astype(float)
    model = fit_logistic(None, distances=dist, made=made)
    cov = fisher_covariance(dist, (model.beta0, model.beta1))
    assert abs(model.beta0 - beta_true[0]) <= Z99 * math.sqrt(cov[0, 0])
    assert abs(model.beta1 - beta_true[1]) <= Z99 * math.sqrt(cov[1, 1])


@criterion(8, "summarize pipeline reproduces planted assist rates, contest distances, and FG gap")
def test_pipeline_round_trip(tmp_path):
    data_dir = tmp_path / "data"
    assert cli_main(["synth", "--config", "synthetic_headline.json", "--out", str(data_dir)]) == 0
    out = tmp_path / "summary"
    assert cli_main(["summarize", str(data_dir / "shots.csv"), "--out", str(out)]) == 0
    doc = json.loads((out / "summary.json").read_text())

    n_c3 = doc["assist_stats"]["c3_attempts"]
    n_atb3 = doc["assist_stats"]["atb3_attempts"]
    assert n_c3 + n_atb3 == 20_000

    def binom_half(p, n):
        return Z99 * math.sqrt(p * (1.0 - p) / n)

    assert abs(doc["assist_stats"]["c3_assist_rate"] - 0.90) <= binom_half(0.90, n_c3)
    assert abs(doc["assist_stats"]["atb3_assist_rate"] - 0.70) <= binom_half(0.70, n_atb3)
    # Truncation at zero moves the mean of Normal(6.5, 2) by under 0.002 ft,
    # well inside the 99% interval; allow it explicitly.
    slack = 0.002
    assert abs(doc["assist_stats"]["c3_mean_def_dist"] - 6.5) <= Z99 * 2.0 / math.sqrt(n_c3) + slack
    assert (
        abs(doc["assist_stats"]["atb3_mean_def_dist"] - 5.9)
        <= Z99 * 2.0 / math.sqrt(n_atb3) + slack
    )
    gap_half = Z99 * math.sqrt(0.388 * 0.612 / n_c3 + 0.347 * 0.653 / n_atb3)
    observed = doc["gap_decomposition"]["observed_fg_gap_pp"]
    assert abs(observed - 4.1) <= 100.0 * gap_half
    predicted = doc["gap_decomposition"]["distance_predicted_gap_pp"]
    residual = doc["gap_decomposition"]["residual_gap_pp"]
    assert residual == observed - predicted


@criterion(9, "pass-origin table reproduces the reference corner column and its near-rim third")
def test_pass_origin_reference_column():
    from test_analytics import LEFT_COLUMN, left_corner_fixture
    from kickout.analytics import pass_origin_table

    table = pass_origin_table(left_corner_fixture())
    for zone, count in LEFT_COLUMN.items():
        assert table.rows[zone]["LeftCorner"] == count / 1000
    assert table.basket_vicinity["LeftCorner"] == pytest.approx(0.319, abs=1e-12)
    assert sum(r["LeftCorner"] for r in table.rows.values()) == pytest.approx(1.0, abs=1e-9)


@criterion(10, "seeded commands produce byte-identical outputs across repeated runs")
def test_determinism_across_runs(tmp_path):
    """Commands are single-process and single-threaded by design, so thread
    count cannot influence output; this exercises run-to-run stability."""

    def read_dir(p):
        return {f.name: f.read_bytes() for f in sorted(Path(p).iterdir())}

    data = tmp_path / "data"
    assert cli_main(["synth", "--config", "synthetic_tracking.json", "--out", str(data)]) == 0
    shots = tmp_path / "shots"
    assert cli_main(["synth", "--config", "synthetic_headline.json", "--out", str(shots)]) == 0

    runs = {}
    for tag in ("one", "two"):
        base = tmp_path / tag
        assert cli_main(
            ["synth", "--config", "synthetic_tracking.json", "--out", str(base / "synth")]
        ) == 0
        assert cli_main(
            [
                "cluster",
                str(data / "windows.json"),
                "--seed",
                "9",
                "--out",
                str(base / "cluster"),
            ]
        ) == 0
        assert cli_main(
            ["game", "--alphas", "1.3,1.9", "--out", str(base / "game")]
        ) == 0
        assert cli_main(
            ["summarize", str(shots / "shots.csv"), "--out", str(base / "summary")]
        ) == 0
        assert cli_main(
            ["passes", str(shots / "shots.csv"), "--out", str(base / "passes")]
        ) == 0
        assert cli_main(["calibrate", "--out", str(base / "cal")]) == 0
        runs[tag] = {
            sub: read_dir(base / sub)
            for sub in ("synth", "cluster", "game", "summary", "passes", "cal")
        }
    assert runs["one"] == runs["two"]
