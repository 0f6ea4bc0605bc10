import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kickout.court import (
    CORNER_ZONES,
    CourtSpec,
    Point2D,
    ShotClass,
    Zone,
    classify_shot,
    classify_zone,
    classify_zone_indices,
    distance_to_basket,
    load_court,
    mirror_x,
    mirror_zone,
    shot_value,
    three_point_geometry_gap,
)
from kickout.errors import ConfigError, OffCourtError

NBA = load_court("nba")
FIBA = load_court("fiba")


class TestDistance:
    def test_on_axis(self):
        assert distance_to_basket(Point2D(22, 0)) == 22.0

    def test_basket(self):
        assert distance_to_basket(Point2D(0, 0)) == 0.0

    def test_3_4_5(self):
        assert distance_to_basket(Point2D(3, 4)) == 5.0

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            Point2D(float("nan"), 0.0)


class TestClassifyZone:
    @pytest.mark.parametrize(
        "x, y, zone",
        [
            (-22.5, 2, Zone.LEFT_CORNER),
            (0, 26, Zone.TOP_OF_ARC),
            (0, 2, Zone.BASKET_AREA),
            (22.3, 1, Zone.RIGHT_CORNER),
            (0, 12, Zone.DEEP_PAINT),
            (0, 18, Zone.MIDRANGE_SLOT),
            (-15, 3, Zone.LEFT_BASELINE),
            (15, 3, Zone.RIGHT_BASELINE),
            (-14, 14, Zone.LEFT_WING2),
            (14, 14, Zone.RIGHT_WING2),
            (-16, 19, Zone.LEFT_WING3),
            (16, 19, Zone.RIGHT_WING3),
        ],
    )
    def test_reference_points(self, x, y, zone):
        assert classify_zone(Point2D(x, y), NBA) is zone

    def test_off_court_raises(self):
        with pytest.raises(OffCourtError):
            classify_zone(Point2D(0, 60), NBA)
        with pytest.raises(OffCourtError):
            classify_zone(Point2D(26, 5), NBA)

    def test_boundary_belongs_to_basket_nearer_zone(self):
        # On the corner line the shot is still a two (baseline zone).
        assert classify_zone(Point2D(22.0, 3), NBA) is Zone.RIGHT_BASELINE
        # On the arc it is still a two.
        assert classify_zone(Point2D(0, 23.75), NBA) is Zone.MIDRANGE_SLOT
        # On the basket-area circle it is the basket area.
        assert classify_zone(Point2D(8.0, 0), NBA) is Zone.BASKET_AREA

    def test_partition_of_one_million_samples(self):
        rng = np.random.default_rng(12345)
        for court in (NBA, FIBA):
            xs = rng.uniform(-court.court_halfwidth, court.court_halfwidth, 1_000_000)
            ys = rng.uniform(court.min_y, court.max_y, 1_000_000)
            idx = classify_zone_indices(xs, ys, court)
            assert np.all(idx >= 0), "every on-court point falls in exactly one zone"

    def test_mirror_symmetry_sampled(self):
        rng = np.random.default_rng(99)
        xs = rng.uniform(-NBA.court_halfwidth, NBA.court_halfwidth, 20_000)
        ys = rng.uniform(NBA.min_y, NBA.max_y, 20_000)
        left = classify_zone_indices(xs, ys, NBA)
        right = classify_zone_indices(-xs, ys, NBA)
        names = [rule.name for rule in NBA.zones]
        for a, b in zip(left, right):
            assert mirror_zone(names[a]) is names[b]


class TestClassifyShot:
    def test_corner_three(self):
        assert classify_shot(Point2D(22.3, 1), NBA) is ShotClass.C3

    def test_above_break_three(self):
        # 24.9 ft out, above the corner break, so beyond the 23.75 arc.
        p = Point2D(-16, 19)
        assert distance_to_basket(p) > NBA.arc_radius
        assert classify_shot(p, NBA) is ShotClass.ATB3

    def test_two_point(self):
        assert classify_shot(Point2D(10, 10), NBA) is ShotClass.TWO_POINT

    def test_corner_implies_corner_distance(self):
        rng = np.random.default_rng(5)
        xs = rng.uniform(-NBA.court_halfwidth, NBA.court_halfwidth, 50_000)
        ys = rng.uniform(NBA.min_y, NBA.max_y, 50_000)
        idx = classify_zone_indices(xs, ys, NBA)
        names = [rule.name for rule in NBA.zones]
        corner = np.array([names[i] in CORNER_ZONES for i in idx])
        d = np.hypot(xs, ys)
        assert np.all(d[corner] >= NBA.corner_line_distance - 1e-9)

    def test_values(self):
        assert shot_value(ShotClass.C3) == 3
        assert shot_value(ShotClass.ATB3) == 3
        assert shot_value(ShotClass.TWO_POINT) == 2


class TestGeometryGap:
    def test_nba_gap(self):
        assert three_point_geometry_gap(NBA) == pytest.approx(1.75)

    def test_fiba_gap_is_roughly_28_percent_of_nba(self):
        nba_gap = three_point_geometry_gap(NBA)
        fiba_gap = three_point_geometry_gap(FIBA)
        assert fiba_gap == pytest.approx(0.49, abs=0.01)
        assert abs(fiba_gap - 0.28 * nba_gap) <= 0.15 * 0.28 * nba_gap

    def test_degenerate_spec_gap_zero(self):
        flat = CourtSpec(
            league="NBA",
            corner_line_distance=NBA.arc_radius,
            arc_radius=NBA.arc_radius,
            corner_break_y=NBA.corner_break_y,
            court_halfwidth=NBA.court_halfwidth,
            baseline_offset=NBA.baseline_offset,
            halfcourt_length=NBA.halfcourt_length,
            zones=NBA.zones,
        )
        assert three_point_geometry_gap(flat) == 0.0

    def test_corner_beyond_arc_rejected(self):
        with pytest.raises(ConfigError):
            CourtSpec(
                league="NBA",
                corner_line_distance=24.0,
                arc_radius=23.75,
                corner_break_y=8.75,
                court_halfwidth=25.0,
                baseline_offset=5.25,
                halfcourt_length=47.0,
                zones=NBA.zones,
            )

    def test_nba_corner_line_is_22(self):
        assert NBA.corner_line_distance == 22.0


@settings(max_examples=200, deadline=None)
@given(
    x=st.floats(-25.0, 25.0, allow_nan=False),
    y=st.floats(-5.25, 41.75, allow_nan=False),
)
def test_zone_mirror_property(x, y):
    p = Point2D(x, y)
    assert classify_zone(mirror_x(p), NBA) is mirror_zone(classify_zone(p, NBA))


@settings(max_examples=200, deadline=None)
@given(
    x=st.floats(-25.0, 25.0, allow_nan=False),
    y=st.floats(-5.25, 41.75, allow_nan=False),
)
def test_classification_is_deterministic(x, y):
    p = Point2D(x, y)
    assert classify_zone(p, NBA) is classify_zone(p, NBA)


def test_load_court_by_path(tmp_path):
    from importlib import resources

    src = resources.files("kickout") / "configs" / "court_nba.json"
    dst = tmp_path / "my_court.json"
    dst.write_text(src.read_text())
    spec = load_court(str(dst))
    assert spec.league == "NBA"


def test_config_dir_override(tmp_path, monkeypatch):
    import json
    from importlib import resources

    doc = json.loads((resources.files("kickout") / "configs" / "court_nba.json").read_text())
    doc["constants"]["arc_radius"] = 23.9
    # Keep zone rules consistent with the tweaked arc.
    for zone in doc["zones"]:
        for cond in zone["all_of"]:
            if "annulus" in cond and cond["annulus"].get("r_max") == 23.75:
                cond["annulus"]["r_max"] = 23.9
    (tmp_path / "court_nba.json").write_text(json.dumps(doc))
    monkeypatch.setenv("KICKOUT_CONFIG_DIR", str(tmp_path))
    spec = load_court("nba")
    assert spec.arc_radius == 23.9
