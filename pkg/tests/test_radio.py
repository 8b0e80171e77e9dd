import math

import pytest

from hosim.radio import (
    MIN_DISTANCE,
    PathLossParams,
    Zone,
    ZoneThresholds,
    classify_zone,
    derive_thresholds,
    path_loss_db,
    rss_dbm,
)

# Golden constant for the default parameters at 1 km, frozen from an
# independent hand evaluation of the published COST-231 Walfisch-Ikegami
# NLOS composition (medium-sized city):
#   free space : 32.4 + 20*log10(1.0) + 20*log10(2000)        =  98.420600
#   orientation: -10 + 0.354*30                               =   0.620000
#   rooftop    : -16.9 - 10*log10(25) + 10*log10(2000)
#                + 20*log10(13.5) + 0.62                      =  25.357575
#   kf         : -4 + 0.7*(2000/925 - 1)                      =  -3.186486
#   multiscreen: -18*log10(16) + 54 + 18*log10(1.0)
#                + kf*log10(2000) - 9*log10(50)               =   6.516423
#   total                                                     = 130.294598
GOLDEN_LOSS_1KM = 130.29459795359855


class TestPathLoss:
    def test_golden_value_at_1km(self):
        assert path_loss_db(PathLossParams(), 1000.0) == pytest.approx(
            GOLDEN_LOSS_1KM, abs=1e-9
        )

    def test_doubling_distance_increases_loss(self):
        p = PathLossParams()
        for d in (50.0, 200.0, 700.0, 1500.0):
            assert path_loss_db(p, 2 * d) > path_loss_db(p, d)

    def test_monotone_on_1m_grid(self):
        # strictly increasing over [MIN_DISTANCE, 3 * coverage radius]
        p = PathLossParams()
        prev = path_loss_db(p, float(MIN_DISTANCE))
        for d in range(int(MIN_DISTANCE) + 1, 2251):
            cur = path_loss_db(p, float(d))
            assert cur > prev
            prev = cur

    def test_clamped_below_min_distance(self):
        p = PathLossParams()
        ref = path_loss_db(p, MIN_DISTANCE)
        assert path_loss_db(p, 5.0) == ref
        assert path_loss_db(p, 0.0) == ref

    def test_base_below_rooftop_branch(self):
        # low-mast variant exercises the shadowed multi-screen terms
        low = PathLossParams(base_height_m=10.0)
        assert path_loss_db(low, 1000.0) > path_loss_db(PathLossParams(), 1000.0)
        assert path_loss_db(low, 400.0) < path_loss_db(low, 1000.0)

    def test_orientation_bands(self):
        for phi in (0.0, 34.9, 35.0, 54.9, 55.0, 90.0):
            p = PathLossParams(street_orientation_deg=phi)
            assert math.isfinite(path_loss_db(p, 500.0))

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"frequency_mhz": 700.0},
            {"frequency_mhz": 2500.0},
            {"street_width_m": 0.0},
            {"mobile_height_m": 20.0},
            {"street_orientation_deg": 120.0},
        ],
    )
    def test_invalid_params(self, kwargs):
        with pytest.raises(ValueError):
            PathLossParams(**kwargs)


class TestRss:
    def test_subtraction(self):
        p = PathLossParams()
        assert rss_dbm(p, 1000.0) == pytest.approx(43.0 - GOLDEN_LOSS_1KM, abs=1e-9)

    def test_strictly_decreasing(self):
        p = PathLossParams()
        ds = [30.0, 100.0, 300.0, 900.0, 2000.0]
        values = [rss_dbm(p, d) for d in ds]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_shadowing_hook(self):
        from hosim.radio import shadowed_rss_dbm

        plain = PathLossParams()
        assert shadowed_rss_dbm(plain, 500.0, 1.7) == rss_dbm(plain, 500.0)
        noisy = PathLossParams(shadowing_sigma_db=8.0)
        assert shadowed_rss_dbm(noisy, 500.0, 1.0) == pytest.approx(
            rss_dbm(noisy, 500.0) + 8.0
        )

    def test_nearest_enb_has_max_rss(self):
        # brute force over all eNBs at random points
        from hosim.topology import Point, build_deployment
        from hosim._pykernel import Stream

        dep = build_deployment(10, 10, 1000.0, 0.05, seed=4)
        p = PathLossParams()
        rng = Stream(99)
        for _ in range(1000):
            q = Point(rng.uniform() * 9000.0, rng.uniform() * 9000.0)
            best = max(
                dep.enbs,
                key=lambda e: rss_dbm(
                    p, math.dist(q, e.center) if q != e.center else 0.0
                ),
            )
            dists = [math.dist(q, e.center) for e in dep.enbs]
            assert dists[best.id] == min(dists)


class TestThresholds:
    def test_default_fractions_anchor_distances(self):
        p = PathLossParams()
        t = derive_thresholds(p, 750.0)
        assert t.p3 == rss_dbm(p, 375.0)
        assert t.p2 == rss_dbm(p, 525.0)
        assert t.p1 == rss_dbm(p, 675.0)

    def test_ordering_forced_by_monotonicity(self):
        p = PathLossParams()
        for fracs in [(0.1, 0.2, 0.3), (0.5, 0.7, 0.9), (0.2, 0.5, 1.0)]:
            t = derive_thresholds(p, 750.0, fracs)
            assert t.p1 < t.p2 < t.p3

    def test_equal_fractions_rejected(self):
        with pytest.raises(ValueError):
            derive_thresholds(PathLossParams(), 750.0, (0.7, 0.7, 0.9))

    def test_unordered_thresholds_rejected(self):
        with pytest.raises(ValueError):
            ZoneThresholds(p1=-80.0, p2=-90.0, p3=-70.0)

    def test_distance_for_rss_inverts_link_budget(self):
        from hosim.radio import distance_for_rss

        p = PathLossParams()
        for d in (50.0, 375.0, 525.0, 675.0, 1800.0):
            target = rss_dbm(p, d)
            back = distance_for_rss(p, target)
            assert back == pytest.approx(d, rel=1e-9)
        # above the clamp-point power everything maps to the clamp
        assert distance_for_rss(p, rss_dbm(p, 1.0) + 50.0) == MIN_DISTANCE


class TestZones:
    def setup_method(self):
        self.t = ZoneThresholds(p1=-90.0, p2=-80.0, p3=-70.0)

    def test_boundaries_belong_to_outer_zone(self):
        assert classify_zone(-70.0, self.t) is Zone.CONCERN  # P == p3
        assert classify_zone(-80.0, self.t) is Zone.EMERGENCY  # P == p2
        assert classify_zone(-90.0, self.t) is Zone.DEAD  # P == p1

    def test_strict_upper_band(self):
        assert classify_zone(-70.0 + 1e-9, self.t) is Zone.NORMAL

    def test_total_partition(self):
        for rss in [x * 0.25 for x in range(-480, 0)]:
            assert classify_zone(rss, self.t) in Zone

    def test_zone_monotone_in_distance(self):
        p = PathLossParams()
        t = derive_thresholds(p, 750.0)
        order = [Zone.NORMAL, Zone.CONCERN, Zone.EMERGENCY, Zone.DEAD]
        last = 0
        for d in range(20, 2250, 5):
            z = order.index(classify_zone(rss_dbm(p, float(d)), t))
            assert z >= last
            last = z

    def test_fraction_epsilon_consistency(self):
        # just beyond f3*R the UE is in CONCERN; just beyond f1*R in DEAD
        p = PathLossParams()
        t = derive_thresholds(p, 750.0)
        assert classify_zone(rss_dbm(p, 375.0 + 1e-6), t) is Zone.CONCERN
        assert classify_zone(rss_dbm(p, 675.0 + 1e-6), t) is Zone.DEAD
