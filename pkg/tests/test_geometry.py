"""Distances, elevation angles, and seeded tag placement."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uavscatter import Scenario, elevation_angle_deg, link_distance, place_tags
from uavscatter.montecarlo import substream


class TestLinkDistance:
    def test_vertical_link(self):
        assert link_distance(0.0, 50.0, 0.0, 0.0) == 50.0

    def test_collection_link(self):
        # UAV at (300, 50) over a tag at the origin
        assert link_distance(300.0, 50.0, 0.0, 0.0) == pytest.approx(
            math.sqrt(92500.0), rel=1e-15
        )

    def test_upload_link(self):
        assert link_distance(300.0, 50.0, 500.0, 0.0) == pytest.approx(
            math.sqrt(42500.0), rel=1e-15
        )

    def test_coincident_points_error(self):
        with pytest.raises(ValueError):
            link_distance(1.0, 2.0, 1.0, 2.0)


class TestElevationAngle:
    def test_overhead(self):
        assert elevation_angle_deg(50.0, 50.0) == 90.0

    def test_thirty_degrees(self):
        assert elevation_angle_deg(100.0, 50.0) == pytest.approx(30.0, abs=1e-12)

    def test_collection_geometry(self):
        d = math.sqrt(92500.0)
        assert elevation_angle_deg(d, 50.0) == pytest.approx(9.462322208025618, abs=1e-9)

    def test_rejects_h_above_d(self):
        with pytest.raises(ValueError):
            elevation_angle_deg(49.0, 50.0)
        with pytest.raises(ValueError):
            elevation_angle_deg(50.0, 0.0)

    @settings(max_examples=100, deadline=None)
    @given(
        off1=st.floats(min_value=0.0, max_value=500.0),
        extra=st.floats(min_value=1e-6, max_value=500.0),
    )
    def test_monotone_decreasing_in_offset(self, off1, extra):
        h = 50.0
        d1 = math.hypot(off1, h)
        d2 = math.hypot(off1 + extra, h)
        assert elevation_angle_deg(d2, h) < elevation_angle_deg(d1, h)


class TestPlaceTags:
    def test_support_and_order(self):
        tags = place_tags(3, 20.0, substream(5, 0))
        assert len(tags) == 3
        assert all(0.0 <= x <= 20.0 for x in tags)
        assert list(tags) == sorted(tags)

    def test_degenerate_range(self):
        (x,) = place_tags(1, 1e-9, substream(5, 0))
        assert 0.0 <= x <= 1e-9

    def test_deterministic_per_seed(self):
        assert place_tags(4, 20.0, substream(11, 0)) == place_tags(4, 20.0, substream(11, 0))
        assert place_tags(4, 20.0, substream(11, 0)) != place_tags(4, 20.0, substream(12, 0))

    def test_empirical_mean(self):
        draws = place_tags(100_000, 20.0, substream(3, 0))
        mean = sum(draws) / len(draws)
        assert mean == pytest.approx(10.0, abs=0.1)

    def test_validation(self):
        with pytest.raises(ValueError):
            place_tags(0, 20.0, substream(1, 0))
        with pytest.raises(ValueError):
            place_tags(3, 0.0, substream(1, 0))


class TestScenario:
    def test_distance_at_least_altitude(self):
        sc = Scenario(tag_x=(0.0, 10.0), x1=10.0, x2=300.0, x_b=500.0, h=50.0)
        for tag in sc.tag_x:
            d = link_distance(sc.x1, sc.h, tag, 0.0)
            assert d >= sc.h
        # equality exactly when horizontally aligned
        assert link_distance(10.0, 50.0, 10.0, 0.0) == 50.0

    def test_rejects_bad_geometry(self):
        with pytest.raises(ValueError):
            Scenario(tag_x=(), x1=0.0, x2=300.0, x_b=500.0, h=50.0)
        with pytest.raises(ValueError):
            Scenario(tag_x=(1.0,), x1=0.0, x2=300.0, x_b=500.0, h=0.0)
        with pytest.raises(ValueError):
            Scenario(tag_x=(1.0,), x1=301.0, x2=300.0, x_b=500.0, h=50.0)

    def test_rejects_bad_slots(self):
        with pytest.raises(ValueError):
            Scenario(tag_x=(1.0, 2.0), x1=0.0, x2=300.0, x_b=500.0, h=50.0, slots=(1, 3))
