import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hosim.selection import (
    VisitedCells,
    Weights,
    angle_distance,
    average_motion_angle,
    combine_scores,
    expected_exit_angle,
    load_scores,
    orientation_scores,
    select_target,
    signal_scores,
    strongest_cell,
)
from hosim.worked_example import (
    EXPECTED_COMBINED,
    EXPECTED_GAPS,
    EXPECTED_LOAD,
    EXPECTED_ORIENTATION,
    EXPECTED_SIGNAL,
    check_example,
    run_example,
)


class TestVisitedCells:
    def test_push_appends(self):
        v = VisitedCells(8, [10, 11, 12, 13]).push(14)
        assert v.ids == [10, 11, 12, 13, 14]

    def test_capacity_evicts_oldest(self):
        v = VisitedCells(8, range(8)).push(99)
        assert v.ids == [1, 2, 3, 4, 5, 6, 7, 99]
        assert len(v) == 8

    def test_repushing_newest_is_noop(self):
        v = VisitedCells(8, [5]).push(5)
        assert v.ids == [5]

    def test_previous_excludes_current_everywhere(self):
        v = VisitedCells(8, [3, 7, 3, 9])
        assert v.previous(9, 3) == [3, 7, 3][-3:]
        assert v.previous(3, 4) == [7, 9]

    def test_previous_takes_newest_k(self):
        v = VisitedCells(8, [1, 2, 3, 4, 5])
        assert v.previous(5, 2) == [3, 4]


class TestMotionAngle:
    def test_reference_four_cell_case(self):
        entries = {1: (6.0, 110.0), 2: (5.0, 90.0), 3: (4.0, 80.0), 4: (3.0, 100.0)}
        angle = average_motion_angle(entries, [1, 2, 3, 4])
        assert angle == pytest.approx(96.11, abs=0.01)
        # exact rational: (6*110 + 5*90 + 4*80 + 3*100) / 18
        assert angle == pytest.approx(1730.0 / 18.0, abs=1e-12)

    def test_equal_radii_reduce_to_arithmetic_mean(self):
        entries = {1: (2.0, 40.0), 2: (2.0, 80.0), 3: (2.0, 60.0)}
        assert average_motion_angle(entries, [1, 2, 3]) == pytest.approx(60.0, abs=1e-9)

    def test_three_term_weighted_identity(self):
        from hosim._pykernel import Stream

        rng = Stream(17)
        for _ in range(200):
            rs = [1.0 + 9.0 * rng.uniform() for _ in range(3)]
            base = 360.0 * rng.uniform()
            # angles within half a turn of each other: no wrap effects
            thetas = [(base + 60.0 * rng.uniform()) % 360.0 for _ in range(3)]
            entries = {i: (rs[i], thetas[i]) for i in range(3)}
            got = average_motion_angle(entries, [0, 1, 2])
            ref = thetas[2]
            unwrapped = []
            for t in thetas:
                d = (t - ref) % 360.0
                unwrapped.append(ref + (d - 360.0 if d > 180.0 else d))
            want = sum(r * t for r, t in zip(rs, unwrapped)) / sum(rs)
            assert got == pytest.approx(want % 360.0, abs=1e-9)

    def test_wraparound_mean(self):
        # 350 and 10 degrees average to 0, not 180
        entries = {1: (1.0, 350.0), 2: (1.0, 10.0)}
        assert average_motion_angle(entries, [1, 2]) == pytest.approx(0.0, abs=1e-9)

    def test_empty_history_rejected(self):
        with pytest.raises(ValueError):
            average_motion_angle({}, [])

    def test_unknown_id_rejected(self):
        with pytest.raises(KeyError):
            average_motion_angle({1: (1.0, 0.0)}, [1, 2])


class TestExitAngle:
    @pytest.mark.parametrize(
        "motion,expected", [(96.11, 276.11), (0.0, 180.0), (276.11, 96.11)]
    )
    def test_opposite_direction(self, motion, expected):
        assert expected_exit_angle(motion) == pytest.approx(expected, abs=1e-9)

    def test_involution(self):
        for a in (0.0, 45.5, 180.0, 359.9):
            assert expected_exit_angle(expected_exit_angle(a)) == pytest.approx(
                a % 360.0, abs=1e-9
            )


class TestAngleDistance:
    @pytest.mark.parametrize(
        "a,b,expected",
        [
            (276.11, 30.0, 113.89),  # apparent 246.11 -> 360 - 246.11
            (276.11, 90.0, 173.89),  # apparent 186.11 -> 360 - 186.11
            (276.11, 160.0, 116.11),
            (276.11, 230.0, 46.11),
            (276.11, 290.0, 13.89),  # apparent -13.89 -> 13.89
            (276.11, 350.0, 73.89),
        ],
    )
    def test_reference_gaps(self, a, b, expected):
        assert angle_distance(a, b) == pytest.approx(expected, abs=0.01)

    def test_zero_for_equal_directions(self):
        for x in (0.0, 123.4, 359.0):
            assert angle_distance(x, x) == 0.0

    @given(st.floats(0, 360, allow_nan=False), st.floats(0, 360, allow_nan=False))
    def test_range_and_symmetry(self, a, b):
        d = angle_distance(a, b)
        assert 0.0 <= d <= 180.0
        assert d == pytest.approx(angle_distance(b, a), abs=1e-9)


class TestOrientationScores:
    def test_reference_table(self):
        gaps = {1: 113.89, 2: 173.89, 3: 116.11, 4: 46.11, 5: 13.89, 6: 73.89}
        scores = orientation_scores(gaps, 120.0, 125.0)
        assert 2 not in scores
        for i, want in {1: 0.043, 3: 0.034, 4: 0.302, 5: 0.426, 6: 0.196}.items():
            assert scores[i] == pytest.approx(want, abs=0.001)
        assert sum(scores.values()) == pytest.approx(1.0, abs=1e-9)

    def test_single_qualified_gets_one(self):
        assert orientation_scores({7: 10.0, 8: 150.0}, 120.0, 125.0) == {7: 1.0}

    def test_two_candidate_hand_computation(self):
        scores = orientation_scores({1: 0.0, 2: 120.0}, 120.0, 125.0)
        assert scores[1] == pytest.approx(125.0 / 130.0, abs=1e-12)
        assert scores[2] == pytest.approx(5.0 / 130.0, abs=1e-12)

    def test_gap_at_limit_qualifies(self):
        assert 1 in orientation_scores({1: 120.0, 2: 0.0}, 120.0, 125.0)

    def test_all_disqualified_returns_empty(self):
        assert orientation_scores({1: 150.0, 2: 170.0}, 120.0, 125.0) == {}

    def test_ref_must_exceed_limit(self):
        with pytest.raises(ValueError):
            orientation_scores({1: 10.0}, 120.0, 120.0)


class TestLoadScores:
    def test_reference_table(self):
        loads = {1: 0.6, 2: 0.5, 3: 0.904, 4: 0.4, 5: 0.66, 6: 0.3}
        scores = load_scores(loads, 0.9, excluded={2})
        assert 2 not in scores and 3 not in scores
        # complement sum = 0.29 + 0.49 + 0.23 + 0.59 = 1.60
        for i, want in {1: 0.29 / 1.60, 4: 0.49 / 1.60, 5: 0.23 / 1.60,
                        6: 0.59 / 1.60}.items():
            assert scores[i] == pytest.approx(want, abs=1e-12)
        assert sum(scores.values()) == pytest.approx(1.0, abs=1e-9)

    def test_single_idle_candidate(self):
        assert load_scores({4: 0.0}, 0.9) == {4: 1.0}

    def test_two_candidate_hand_computation(self):
        scores = load_scores({1: 0.2, 2: 0.4}, 0.9)
        assert scores[1] == pytest.approx(0.69 / 1.18, abs=1e-12)
        assert scores[2] == pytest.approx(0.49 / 1.18, abs=1e-12)

    def test_at_reference_disqualifies(self):
        # a cell at or above load_limit - 0.01 would score <= 0
        scores = load_scores({1: 0.89, 2: 0.1}, 0.9)
        assert 1 not in scores

    def test_all_disqualified_returns_empty(self):
        assert load_scores({1: 0.95, 2: 0.99}, 0.9) == {}

    def test_out_of_range_load_rejected(self):
        with pytest.raises(ValueError):
            load_scores({1: 1.2}, 0.9)


class TestSignalScores:
    def test_reference_table(self):
        scores = signal_scores({1: 50.0, 4: 90.0, 5: 60.0, 6: 30.0})
        for i, want in {1: 0.22, 4: 0.39, 5: 0.26, 6: 0.13}.items():
            assert scores[i] == pytest.approx(want, abs=0.005)
        assert sum(scores.values()) == pytest.approx(1.0, abs=1e-9)

    def test_single_candidate(self):
        assert signal_scores({3: 42.0}) == {3: 1.0}

    def test_scale_invariance(self):
        a = signal_scores({1: 5.0, 2: 15.0, 3: 30.0})
        b = signal_scores({1: 50.0, 2: 150.0, 3: 300.0})
        for i in a:
            assert a[i] == pytest.approx(b[i], abs=1e-12)

    def test_all_zero_degrades_to_uniform(self):
        assert signal_scores({1: 0.0, 2: 0.0}) == {1: 0.5, 2: 0.5}

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            signal_scores({1: -1.0})


class TestCombineAndSelect:
    def test_reference_pipeline(self):
        target, breakdown, _, _ = run_example()
        assert target == 4
        for i, want in EXPECTED_COMBINED.items():
            assert breakdown.candidates[i].combined == pytest.approx(want, abs=0.002)
        assert check_example() == []

    def test_degenerate_weights_reduce_to_orientation(self):
        target, breakdown, _, _ = run_example()
        w = Weights(1.0, 0.0, 0.0)
        combined = combine_scores(breakdown, w)
        for i, s in combined.items():
            assert s == pytest.approx(breakdown.candidates[i].orientation, abs=1e-12)

    def test_select_argmax_and_tie(self):
        assert select_target({7: 0.25, 3: 0.25, 5: 0.1}) == 3
        assert select_target({5: 0.9}) == 5
        assert select_target({}) is None

    def test_strongest_cell(self):
        assert strongest_cell({1: -80.0, 2: -70.0, 3: -90.0}) == 2
        assert strongest_cell({9: -100.0}) == 9
        assert strongest_cell({4: -70.0, 2: -70.0}) == 2
        with pytest.raises(ValueError):
            strongest_cell({})

    def test_missing_score_for_qualified_candidate_rejected(self):
        from hosim.selection import CandidateScore, ScoreBreakdown

        b = ScoreBreakdown()
        b.candidates[1] = CandidateScore(orientation=0.6, load=None, signal=0.5)
        with pytest.raises(ValueError, match="missing"):
            combine_scores(b, Weights(0.5, 0.25, 0.25))

    def test_weights_validation(self):
        with pytest.raises(ValueError):
            Weights(0.5, 0.25, 0.2)
        with pytest.raises(ValueError):
            Weights(1.2, -0.1, -0.1)

    def test_weight_renormalization(self):
        w = Weights(0.5, 0.25, 0.25).without_orientation()
        assert w.orientation == 0.0
        assert w.load == pytest.approx(0.5)
        assert w.signal == pytest.approx(0.5)

    def test_uniform_weights_combined_sums_to_one(self):
        # with equal weights and nobody disqualified on any criterion,
        # the combined scores inherit the per-criterion normalization
        from hosim.selection import score_candidates
        from hosim._pykernel import Stream

        rng = Stream(88)
        third = 1.0 / 3.0
        w = Weights(third, third, 1.0 - 2 * third)
        for _ in range(300):
            n = 2 + rng.randint(6)
            gaps = {i: rng.randint(120_000) / 1000.0 for i in range(n)}  # <= 120
            loads = {i: rng.randint(440) / 500.0 for i in range(n)}  # < 0.88
            quals = {i: 1.0 + rng.randint(1000) / 10.0 for i in range(n)}
            target, breakdown = score_candidates(
                gaps, loads, lambda short: {i: quals[i] for i in short}, w, 0.9,
            )
            assert len(breakdown.qualified()) == n
            total = sum(c.combined for c in breakdown.candidates.values())
            assert total == pytest.approx(1.0, abs=1e-9)
            assert target is not None

    def test_baseline_equals_signal_only_weighting(self):
        # with all weight on the signal criterion and nobody
        # disqualified, the pipeline degenerates to the baseline policy
        from hosim.selection import score_candidates
        from hosim._pykernel import Stream

        rng = Stream(99)
        w = Weights(0.0, 0.0, 1.0)
        for _ in range(300):
            n = 2 + rng.randint(6)
            gaps = {i: rng.randint(120_000) / 1000.0 for i in range(n)}
            loads = {i: rng.randint(440) / 500.0 for i in range(n)}
            rss = {i: -110.0 + rng.randint(6000) / 100.0 for i in range(n)}
            qualities = {i: rss[i] + 120.0 for i in range(n)}  # positive margins
            target, _ = score_candidates(
                gaps, loads, lambda short: {i: qualities[i] for i in short}, w, 0.9,
            )
            assert target == strongest_cell(rss)


# randomized property suites ------------------------------------------------

ids = st.lists(st.integers(0, 99), min_size=2, max_size=8, unique=True)


@settings(max_examples=300, deadline=None)
@given(ids, st.data())
def test_orientation_normalization_and_monotonicity(candidate_ids, data):
    # gaps at millidegree resolution: differences below the float
    # resolution of the complement are not physically meaningful
    gaps = {
        i: data.draw(st.integers(0, 180_000), label=f"gap{i}") / 1000.0
        for i in candidate_ids
    }
    scores = orientation_scores(gaps, 120.0, 125.0)
    qualified = {i for i in gaps if gaps[i] <= 120.0}
    assert set(scores) == qualified
    if scores:
        assert sum(scores.values()) == pytest.approx(1.0, abs=1e-9)
    if len(scores) >= 2:
        for i in scores:
            assert 0.0 < scores[i] < 1.0
        for i in scores:
            for j in scores:
                if gaps[i] < gaps[j]:
                    assert scores[i] > scores[j]


@settings(max_examples=300, deadline=None)
@given(ids, st.data())
def test_load_normalization_and_monotonicity(candidate_ids, data):
    # loads as connection counts over a capacity, like the simulator's
    loads = {
        i: data.draw(st.integers(0, 500), label=f"m{i}") / 500.0
        for i in candidate_ids
    }
    scores = load_scores(loads, 0.9)
    if scores:
        assert sum(scores.values()) == pytest.approx(1.0, abs=1e-9)
    if len(scores) >= 2:
        for i in scores:
            assert 0.0 < scores[i] < 1.0
        for i in scores:
            for j in scores:
                if loads[i] < loads[j]:
                    assert scores[i] > scores[j]


@settings(max_examples=300, deadline=None)
@given(ids, st.data())
def test_signal_monotenicity_and_argmax_invariance(candidate_ids, data):
    qualities = {
        i: data.draw(st.floats(0.001, 1000, allow_nan=False), label=f"q{i}")
        for i in candidate_ids
    }
    scores = signal_scores(qualities)
    assert sum(scores.values()) == pytest.approx(1.0, abs=1e-9)
    for i in scores:
        for j in scores:
            if qualities[i] > qualities[j]:
                assert scores[i] > scores[j]
    scaled = signal_scores({i: 7.5 * q for i, q in qualities.items()})
    assert select_target(scores) == select_target(scaled)
