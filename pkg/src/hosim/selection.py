"""Target-cell selection: visited-cell history, motion-angle estimation,
and the three-criterion relative scoring that picks the handover target.

Scoring idea: for each criterion (orientation match, current load,
received signal strength) every qualified neighbor gets a positive
share and the shares sum to 1; disqualified neighbors are dropped from
the pool entirely.  The per-neighbor shares are combined with fixed
weights and the argmax wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

DEFAULT_ANGLE_LIMIT = 120.0  # max angular gap (deg) still considered "ahead"
DEFAULT_ANGLE_REF = 125.0  # reference for complementing angular gaps
DEFAULT_HISTORY_CAPACITY = 8

DQ_ORIENTATION = "orientation"
DQ_LOAD = "load"


@dataclass(frozen=True)
class Weights:
    orientation: float = 0.5
    load: float = 0.25
    signal: float = 0.25

    def __post_init__(self):
        for w in (self.orientation, self.load, self.signal):
            if not (0.0 <= w <= 1.0):
                raise ValueError("weights must be fractions in [0, 1]")
        if abs(self.orientation + self.load + self.signal - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1")

    def without_orientation(self) -> "Weights":
        """Redistribute the orientation weight over load and signal."""
        rest = self.load + self.signal
        if rest <= 0.0:
            raise ValueError("load and signal weights are both zero")
        return Weights(0.0, self.load / rest, self.signal / rest)


class VisitedCells:
    """Bounded chronological list of visited cell ids, oldest first.

    Re-pushing the current newest id is a no-op, so an immediate
    ping-pong pair cannot flood the history.
    """

    __slots__ = ("capacity", "ids")

    def __init__(self, capacity: int = DEFAULT_HISTORY_CAPACITY, ids: Iterable[int] = ()):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = capacity
        self.ids: list[int] = list(ids)[-capacity:]

    def push(self, new_id: int) -> "VisitedCells":
        if self.ids and self.ids[-1] == new_id:
            return VisitedCells(self.capacity, self.ids)
        return VisitedCells(self.capacity, self.ids + [new_id])

    def previous(self, current: int, k: int) -> list[int]:
        """The up-to-``k`` newest entries other than ``current``.

        The current cell says nothing about the travel direction seen
        from itself, so every occurrence is dropped (it can re-appear
        in the middle of the history after a revisit)."""
        ids = [i for i in self.ids if i != current]
        return ids[-k:] if k > 0 else []

    def __len__(self) -> int:
        return len(self.ids)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VisitedCells)
            and self.capacity == other.capacity
            and self.ids == other.ids
        )

    def __repr__(self) -> str:
        return f"VisitedCells(capacity={self.capacity}, ids={self.ids})"


def average_motion_angle(
    polar_entries: Mapping[int, tuple[float, float]], visited: VisitedCells | list[int]
) -> float:
    """Estimate of the travel direction seen from the current cell:
    the radius-weighted average of the visited cells' angles.

    Angles are averaged on a continuous branch centred on the newest
    visited cell's angle (raw averaging of degrees is discontinuous at
    the 0/360 wrap), then normalized back to [0, 360).
    """
    ids = visited.ids if isinstance(visited, VisitedCells) else list(visited)
    if not ids:
        raise ValueError("no visited cells to average")
    for i in ids:
        if i not in polar_entries:
            raise KeyError(f"cell {i} missing from the polar table")
    ref = polar_entries[ids[-1]][1]
    num = 0.0
    den = 0.0
    for i in ids:
        r, theta = polar_entries[i]
        delta = (theta - ref) % 360.0
        if delta > 180.0:
            delta -= 360.0
        num += r * (ref + delta)
        den += r
    return (num / den) % 360.0


def expected_exit_angle(motion_angle: float) -> float:
    """A cell entered at some angle is exited on the opposite side."""
    return (motion_angle + 180.0) % 360.0


def angle_distance(a: float, b: float) -> float:
    """Angular separation of two directions, in [0, 180] degrees."""
    d = math.fabs(a - b) % 360.0
    return 360.0 - d if d > 180.0 else d


def orientation_scores(
    gaps: Mapping[int, float],
    angle_limit: float = DEFAULT_ANGLE_LIMIT,
    angle_ref: float = DEFAULT_ANGLE_REF,
) -> dict[int, float]:
    """Relative scores from angular gaps; neighbors with gap > limit are
    disqualified (absent from the result).  Empty result means every
    neighbor was disqualified and the caller must fall back."""
    if angle_ref <= angle_limit:
        raise ValueError("angle_ref must exceed angle_limit")
    qualified = {i: angle_ref - g for i, g in gaps.items() if g <= angle_limit}
    total = sum(qualified.values())
    return {i: c / total for i, c in qualified.items()}


def load_scores(
    loads: Mapping[int, float],
    load_limit: float,
    excluded: Iterable[int] = (),
) -> dict[int, float]:
    """Relative scores from load fractions.

    The reference value is ``load_limit - 0.01``; neighbors at or above
    the reference are disqualified (an overloaded cell would score <= 0
    otherwise), and ids in ``excluded`` never enter the pool."""
    if not (0.0 < load_limit <= 1.0):
        raise ValueError("load_limit must be in (0, 1]")
    load_ref = load_limit - 0.01
    excluded = set(excluded)
    qualified = {}
    for i, cl in loads.items():
        if i in excluded:
            continue
        if not (0.0 <= cl <= 1.0):
            raise ValueError(f"load fraction out of range for cell {i}")
        if cl < load_ref:
            qualified[i] = load_ref - cl
    total = sum(qualified.values())
    return {i: c / total for i, c in qualified.items()}


def signal_scores(qualities: Mapping[int, float]) -> dict[int, float]:
    """Scores directly proportional to nonnegative signal qualities.
    All-zero qualities degrade to a uniform split."""
    if not qualities:
        return {}
    for i, q in qualities.items():
        if q < 0.0:
            raise ValueError(f"negative signal quality for cell {i}")
    total = sum(qualities.values())
    if total == 0.0:
        share = 1.0 / len(qualities)
        return {i: share for i in qualities}
    return {i: q / total for i, q in qualities.items()}


@dataclass
class CandidateScore:
    orientation: float | None = None
    load: float | None = None
    signal: float | None = None
    combined: float | None = None
    disqualified_by: str | None = None
    # raw inputs, kept for reports
    gap_deg: float | None = None
    load_fraction: float | None = None
    signal_quality: float | None = None


@dataclass
class ScoreBreakdown:
    """Full per-neighbor record of one selection decision."""

    candidates: dict[int, CandidateScore] = field(default_factory=dict)
    motion_angle: float | None = None
    exit_angle: float | None = None
    orientation_skipped: bool = False

    def qualified(self) -> list[int]:
        return [i for i, c in self.candidates.items() if c.disqualified_by is None]


def combine_scores(breakdown: ScoreBreakdown, weights: Weights) -> dict[int, float]:
    """Weighted average of the three criterion scores for every fully
    qualified candidate.  Uses orientation-free weights when the
    orientation stage was skipped."""
    w = weights.without_orientation() if breakdown.orientation_skipped else weights
    combined = {}
    for i, c in breakdown.candidates.items():
        if c.disqualified_by is not None:
            continue
        if c.load is None or c.signal is None:
            raise ValueError(f"qualified candidate {i} is missing a score")
        s = c.load * w.load + c.signal * w.signal
        if not breakdown.orientation_skipped:
            if c.orientation is None:
                raise ValueError(f"qualified candidate {i} is missing a score")
            s += c.orientation * w.orientation
        combined[i] = s
        c.combined = s
    return combined


def select_target(combined: Mapping[int, float]) -> int | None:
    """Argmax of the combined scores; ties broken by lowest id.
    None signals an empty map (caller falls back)."""
    if not combined:
        return None
    return min(combined, key=lambda i: (-combined[i], i))


def strongest_cell(rss: Mapping[int, float]) -> int:
    """Baseline policy: argmax received signal strength over all
    neighbors, ties broken by lowest id."""
    if not rss:
        raise ValueError("no neighbors to choose from")
    return min(rss, key=lambda i: (-rss[i], i))


def score_candidates(
    gaps: Mapping[int, float] | None,
    loads: Mapping[int, float],
    qualities_of: "callable",
    weights: Weights,
    load_limit: float,
    angle_limit: float = DEFAULT_ANGLE_LIMIT,
    angle_ref: float = DEFAULT_ANGLE_REF,
    motion_angle: float | None = None,
    exit_angle: float | None = None,
) -> tuple[int | None, ScoreBreakdown]:
    """Run the full scoring pipeline over one neighbor set.

    ``gaps`` is None when no motion history exists yet; the decision
    then rests on load and signal alone.  ``qualities_of`` maps the
    shortlist (the ids that survived orientation and load) to signal
    qualities, mirroring the fact that only shortlisted cells get
    measured.  Returns (target or None, breakdown).
    """
    breakdown = ScoreBreakdown(
        motion_angle=motion_angle,
        exit_angle=exit_angle,
        orientation_skipped=gaps is None,
    )
    ids = set(loads)
    for i in ids:
        breakdown.candidates[i] = CandidateScore(load_fraction=loads[i])

    if gaps is None:
        orientation = {}
        om_excluded: set[int] = set()
    else:
        orientation = orientation_scores(gaps, angle_limit, angle_ref)
        om_excluded = ids - set(orientation)
        for i in ids:
            c = breakdown.candidates[i]
            c.gap_deg = gaps.get(i)
            if i in orientation:
                c.orientation = orientation[i]
            else:
                c.disqualified_by = DQ_ORIENTATION
        if not orientation:
            return None, breakdown

    load = load_scores(loads, load_limit, excluded=om_excluded)
    for i in ids - om_excluded:
        c = breakdown.candidates[i]
        if i in load:
            c.load = load[i]
        else:
            c.disqualified_by = DQ_LOAD
    if not load:
        return None, breakdown

    shortlist = sorted(breakdown.qualified())
    qualities = qualities_of(shortlist)
    signal = signal_scores(qualities)
    for i in shortlist:
        breakdown.candidates[i].signal = signal[i]
        breakdown.candidates[i].signal_quality = qualities[i]

    combined = combine_scores(breakdown, weights)
    return select_target(combined), breakdown
