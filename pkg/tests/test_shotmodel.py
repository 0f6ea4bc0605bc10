import math

import numpy as np
import pytest

from kickout.court import Point2D
from kickout.data import ShotEvent, court_for_league, make_rng
from kickout.errors import (
    ConfigError,
    DegenerateFitError,
    EmptyInputError,
    OutOfRangeError,
)
from kickout.shotmodel import (
    ContestCurve,
    LogisticModel,
    contest_points,
    efficiency_summary,
    expected_points,
    fisher_covariance,
    fit_logistic,
    load_contest_curve,
    load_reference_model,
    loglik_and_grad,
    predict_make_prob,
    sigmoid,
)


def make_shot(x, y, made, assisted=False, league="NBA", shot_id="s", def_dist=None, origin=None):
    from kickout.court import classify_shot, shot_value

    value = shot_value(classify_shot(Point2D(x, y), court_for_league(league)))
    return ShotEvent(
        shot_id=shot_id,
        shooter_id="p",
        location=Point2D(x, y),
        made=made,
        assisted=assisted,
        shot_value=value,
        league=league,
        closest_defender_distance=def_dist,
        pass_origin=origin,
    )


def simulate(beta0, beta1, n, seed):
    rng = make_rng(seed, 99)
    d = rng.uniform(0.0, 30.0, n)
    y = rng.random(n) < sigmoid(beta0 + beta1 * d)
    return d, y.astype(float)


class TestFitLogistic:
    def test_planted_recovery(self):
        d, y = simulate(2.0, -0.08, 50_000, seed=11)
        model = fit_logistic(None, distances=d, made=y)
        assert -0.088 <= model.beta1 <= -0.072
        cov = fisher_covariance(d, (model.beta0, model.beta1))
        z = 2.5758293035489004  # two-sided 99%
        assert abs(model.beta0 - 2.0) <= z * math.sqrt(cov[0, 0])
        assert abs(model.beta1 + 0.08) <= z * math.sqrt(cov[1, 1])

    def test_gradient_at_optimum_is_tiny(self):
        d, y = simulate(1.0, -0.05, 5_000, seed=3)
        model = fit_logistic(None, distances=d, made=y)
        _, grad = loglik_and_grad((model.beta0, model.beta1), d, y)
        assert np.max(np.abs(grad)) < 1e-8

    def test_constant_distances_degenerate(self):
        with pytest.raises(DegenerateFitError):
            fit_logistic(None, distances=[5.0, 5.0, 5.0, 5.0], made=[1, 0, 1, 0])

    def test_single_outcome_degenerate(self):
        with pytest.raises(DegenerateFitError):
            fit_logistic(None, distances=[5.0, 10.0], made=[1, 1])

    def test_separable_data_degenerate(self):
        d = np.concatenate([np.full(50, 5.0), np.full(50, 25.0)])
        y = np.concatenate([np.ones(50), np.zeros(50)])
        with pytest.raises(DegenerateFitError, match="separable"):
            fit_logistic(None, distances=d, made=y)

    def test_symmetric_no_effect_gives_zero_slope(self):
        d = np.array([10.0, 10.0, 20.0, 20.0])
        y = np.array([1.0, 0.0, 1.0, 0.0])
        model = fit_logistic(None, distances=d, made=y)
        assert model.beta1 == pytest.approx(0.0, abs=1e-12)

    def test_loglik_reported(self):
        d, y = simulate(0.5, -0.02, 2_000, seed=5)
        model = fit_logistic(None, distances=d, made=y)
        ll, _ = loglik_and_grad((model.beta0, model.beta1), d, y)
        assert model.fit_loglik == pytest.approx(ll)
        assert model.fit_loglik <= 0
        assert model.n_obs == 2_000

    def test_threes_only_flag(self):
        shots = [
            make_shot(22.5, 2.0, True),
            make_shot(22.6, 2.0, False),
            make_shot(0.0, 25.0, True),
            make_shot(-23.0, 1.0, False),
            make_shot(5.0, 5.0, True),
            make_shot(6.0, 5.0, True),
        ]
        model = fit_logistic(shots, threes_only=True)
        assert model.n_obs == 4

    def test_gradient_matches_finite_differences(self):
        rng = make_rng(17, 0)
        d = rng.uniform(0.0, 30.0, 400)
        y = (rng.random(400) < 0.5).astype(float)
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


class TestPredict:
    def test_zero_model_is_half(self):
        m = LogisticModel(0.0, 0.0, -1.0, 10)
        assert predict_make_prob(m, 0.0) == 0.5
        assert predict_make_prob(m, 23.0) == 0.5

    def test_monotone_decreasing_for_negative_slope(self):
        m = LogisticModel(2.0, -0.08, -1.0, 10)
        d = np.linspace(0.0, 40.0, 200)
        p = predict_make_prob(m, d)
        assert np.all(np.diff(p) < 0)
        assert np.all((p > 0) & (p < 1))

    def test_reference_model_reproduces_small_distance_gap(self):
        m = load_reference_model()
        gap = predict_make_prob(m, 23.0) - predict_make_prob(m, 25.1)
        assert gap == pytest.approx(0.018, abs=1e-6)

    def test_negative_distance_rejected(self):
        with pytest.raises(OutOfRangeError):
            predict_make_prob(LogisticModel(0.0, 0.0, -1.0, 1), -1.0)


class TestExpectedPoints:
    def test_corner_three_value(self):
        assert expected_points(0.38, 3) == pytest.approx(1.14)

    def test_long_two_value(self):
        assert expected_points(0.45, 2) == pytest.approx(0.90)

    def test_zero_probability(self):
        assert expected_points(0.0, 3) == 0.0

    def test_domain_checks(self):
        with pytest.raises(OutOfRangeError):
            expected_points(1.5, 3)
        with pytest.raises(OutOfRangeError):
            expected_points(0.5, 1)


class TestContestCurve:
    def test_linear_midpoint(self):
        curve = ContestCurve("C3", ((0.0, 0.6), (22.0, 1.5)))
        assert contest_points(curve, 11.0) == pytest.approx(1.05)

    def test_exact_at_knots(self):
        curve = load_contest_curve()
        for d, pts in curve.knots:
            assert contest_points(curve, d) == pts

    def test_default_curve_matches_interpolation_oracle(self):
        curve = load_contest_curve()

        def oracle(d):
            for (d0, p0), (d1, p1) in zip(curve.knots, curve.knots[1:]):
                if d0 <= d <= d1:
                    return p0 + (p1 - p0) * (d - d0) / (d1 - d0)
            raise AssertionError("outside knots")

        for d in (0.0, 2.0, 6.5, 7.9, 13.4, 21.0, 22.0):
            assert contest_points(curve, d) == pytest.approx(oracle(d), abs=1e-12)

    def test_out_of_range(self):
        curve = load_contest_curve()
        with pytest.raises(OutOfRangeError):
            contest_points(curve, -0.5)
        with pytest.raises(OutOfRangeError):
            contest_points(curve, 23.0)

    def test_c3_curve_must_be_non_decreasing(self):
        with pytest.raises(ConfigError):
            ContestCurve("C3", ((0.0, 1.0), (10.0, 0.5), (22.0, 1.5)))

    def test_default_curve_is_non_decreasing_everywhere(self):
        curve = load_contest_curve()
        d = np.linspace(0.0, 22.0, 441)
        vals = contest_points(curve, d)
        assert np.all(np.diff(vals) >= -1e-12)

    def test_knots_must_cover_contest_range(self):
        with pytest.raises(ConfigError):
            ContestCurve("C3", ((0.0, 0.5), (10.0, 1.0)))


class TestEfficiencySummary:
    def test_headline_gap_twelve_per_100(self):
        shots = []
        for i in range(1000):
            shots.append(make_shot(22.5, 2.0, made=i < 388, shot_id=f"c{i}"))
        for i in range(1000):
            shots.append(make_shot(0.0, 25.1, made=i < 347, shot_id=f"a{i}"))
        summary = efficiency_summary(shots)
        assert summary.per_class["C3"].fg_pct == pytest.approx(0.388)
        assert summary.per_class["ATB3"].fg_pct == pytest.approx(0.347)
        assert summary.c3_vs_atb3_gap == pytest.approx(12.3, abs=1e-9)

    def test_all_missed(self):
        shots = [make_shot(22.5, 2.0, False), make_shot(0.0, 25.1, False)]
        summary = efficiency_summary(shots)
        assert summary.per_class["C3"].pps == 0.0
        assert summary.c3_vs_atb3_gap == 0.0

    def test_fiba_fixture_sixteen_per_100(self):
        shots = []
        for i in range(3000):
            shots.append(make_shot(22.0, 2.0, made=i < 1200, league="FIBA", shot_id=f"c{i}"))
        for i in range(3000):
            shots.append(make_shot(0.0, 24.0, made=i < 1040, league="FIBA", shot_id=f"a{i}"))
        summary = efficiency_summary(shots)
        assert abs(summary.c3_vs_atb3_gap - 16.0) <= 1.0

    def test_attempts_conserved_and_zones_match_classifier(self):
        from kickout.court import classify_zone, load_court
        from kickout.data import SyntheticConfig, synthesize_dataset

        ds = synthesize_dataset(
            SyntheticConfig(
                n_shots=3000,
                assist_rate_c3=0.9,
                assist_rate_atb3=0.7,
                logistic_beta0=1.0,
                logistic_beta1=-0.04,
                seed=23,
            )
        )
        summary = efficiency_summary(ds.shots)
        assert sum(z.attempts for z in summary.per_zone.values()) == len(ds.shots)
        court = load_court("nba")
        counts = {}
        for s in ds.shots:
            z = classify_zone(s.location, court).value
            counts[z] = counts.get(z, 0) + 1
        for name, stats in summary.per_zone.items():
            assert counts.get(name, 0) == stats.attempts

    def test_empty_input(self):
        with pytest.raises(EmptyInputError):
            efficiency_summary([])
