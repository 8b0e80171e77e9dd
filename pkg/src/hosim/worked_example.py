"""A fully worked selection decision with hand-checked reference values.

A UE has crossed four cells before reaching the current one; the
current cell sees six neighbors.  Running the whole pipeline on these
inputs must reproduce the reference numbers below (independently
computed by hand), which also powers the ``hosim example`` self-check.
"""

from __future__ import annotations

import io

from .selection import (
    ScoreBreakdown,
    Weights,
    angle_distance,
    average_motion_angle,
    expected_exit_angle,
    score_candidates,
)

# visited history, oldest first: (distance km, angle deg) seen from the
# current cell
VISITED = {11: (6.0, 110.0), 12: (5.0, 90.0), 13: (4.0, 80.0), 14: (3.0, 100.0)}
VISITED_ORDER = [11, 12, 13, 14]

NEIGHBOR_ANGLES = {1: 30.0, 2: 90.0, 3: 160.0, 4: 230.0, 5: 290.0, 6: 350.0}
NEIGHBOR_LOADS = {1: 0.6, 2: 0.5, 3: 0.904, 4: 0.4, 5: 0.66, 6: 0.3}
NEIGHBOR_SIGNAL = {1: 50.0, 4: 90.0, 5: 60.0, 6: 30.0}  # dB, shortlist only

ANGLE_LIMIT = 120.0
ANGLE_REF = 125.0
LOAD_LIMIT = 0.9
WEIGHTS = Weights(0.5, 0.25, 0.25)

# hand-checked expectations
EXPECTED_MOTION_ANGLE = 96.11
EXPECTED_EXIT_ANGLE = 276.11
EXPECTED_GAPS = {1: 113.89, 2: 173.89, 3: 116.11, 4: 46.11, 5: 13.89, 6: 73.89}
EXPECTED_ORIENTATION = {1: 0.043, 3: 0.034, 4: 0.302, 5: 0.426, 6: 0.196}
EXPECTED_LOAD = {1: 0.181, 4: 0.306, 5: 0.144, 6: 0.369}
EXPECTED_SIGNAL = {1: 0.22, 4: 0.39, 5: 0.26, 6: 0.13}
EXPECTED_COMBINED = {1: 0.122, 4: 0.325, 5: 0.314, 6: 0.223}
EXPECTED_TARGET = 4

TOL_ANGLE = 0.01
TOL_ORIENTATION = 0.001
TOL_LOAD = 0.002
TOL_SIGNAL = 0.005
TOL_COMBINED = 0.002


def run_example() -> tuple[int | None, ScoreBreakdown, float, float]:
    """Run the selection pipeline on the reference inputs."""
    motion = average_motion_angle(VISITED, VISITED_ORDER)
    exit_angle = expected_exit_angle(motion)
    gaps = {n: angle_distance(exit_angle, a) for n, a in NEIGHBOR_ANGLES.items()}
    target, breakdown = score_candidates(
        gaps,
        NEIGHBOR_LOADS,
        lambda shortlist: {n: NEIGHBOR_SIGNAL[n] for n in shortlist},
        WEIGHTS,
        LOAD_LIMIT,
        ANGLE_LIMIT,
        ANGLE_REF,
        motion_angle=motion,
        exit_angle=exit_angle,
    )
    return target, breakdown, motion, exit_angle


def check_example() -> list[str]:
    """Return a list of deviations (empty when everything matches)."""
    target, breakdown, motion, exit_angle = run_example()
    bad = []

    def close(label, got, want, tol):
        if got is None or abs(got - want) > tol:
            bad.append(f"{label}: got {got}, expected {want} (tol {tol})")

    close("motion angle", motion, EXPECTED_MOTION_ANGLE, TOL_ANGLE)
    close("exit angle", exit_angle, EXPECTED_EXIT_ANGLE, TOL_ANGLE)
    for n, want in EXPECTED_GAPS.items():
        close(f"gap[{n}]", breakdown.candidates[n].gap_deg, want, TOL_ANGLE)
    for n, want in EXPECTED_ORIENTATION.items():
        close(f"orientation[{n}]", breakdown.candidates[n].orientation, want,
              TOL_ORIENTATION)
    for n, want in EXPECTED_LOAD.items():
        close(f"load[{n}]", breakdown.candidates[n].load, want, TOL_LOAD)
    for n, want in EXPECTED_SIGNAL.items():
        close(f"signal[{n}]", breakdown.candidates[n].signal, want, TOL_SIGNAL)
    for n, want in EXPECTED_COMBINED.items():
        close(f"combined[{n}]", breakdown.candidates[n].combined, want, TOL_COMBINED)
    if breakdown.candidates[2].disqualified_by != "orientation":
        bad.append("neighbor 2 should be disqualified on orientation")
    if breakdown.candidates[3].disqualified_by != "load":
        bad.append("neighbor 3 should be disqualified on load")
    if target != EXPECTED_TARGET:
        bad.append(f"target: got {target}, expected {EXPECTED_TARGET}")
    return bad


def format_breakdown(breakdown: ScoreBreakdown, target: int | None) -> str:
    """Human-readable table of one decision, worked-example style."""
    out = io.StringIO()
    if breakdown.motion_angle is not None:
        out.write(f"motion angle : {breakdown.motion_angle:.2f} deg\n")
        out.write(f"exit angle   : {breakdown.exit_angle:.2f} deg\n")
    if breakdown.orientation_skipped:
        out.write("orientation stage skipped (no history); weights renormalized\n")
    out.write(
        f"{'cell':>6} {'gap':>8} {'load':>7} {'s_om':>7} {'s_cl':>7}"
        f" {'s_rss':>7} {'s_was':>7}  status\n"
    )
    for n in sorted(breakdown.candidates):
        c = breakdown.candidates[n]
        gap = f"{c.gap_deg:8.2f}" if c.gap_deg is not None else " " * 8
        load = f"{c.load_fraction:7.3f}" if c.load_fraction is not None else " " * 7
        om = f"{c.orientation:7.3f}" if c.orientation is not None else " " * 7
        cl = f"{c.load:7.3f}" if c.load is not None else " " * 7
        rss = f"{c.signal:7.3f}" if c.signal is not None else " " * 7
        was = f"{c.combined:7.3f}" if c.combined is not None else " " * 7
        if c.disqualified_by:
            status = f"disqualified ({c.disqualified_by})"
        elif n == target:
            status = "selected"
        else:
            status = ""
        out.write(f"{n:>6} {gap} {load} {om} {cl} {rss} {was}  {status}\n")
    return out.getvalue()


def report() -> str:
    target, breakdown, _, _ = run_example()
    return format_breakdown(breakdown, target)
