"""Simulation engine: drives a UE along a trajectory, runs the zone
state machine, triggers scoring at zone transitions, executes handovers
and labels each one against the ground-truth next cell.

Per-cell pipeline (proposed policy):

1. on entering a new serving cell: push it on the visited history;
2. on first reaching the CONCERN band: estimate the motion angle from
   the history, score orientation, snapshot neighbor loads, score
   loads, shortlist the cells qualified on both criteria, measure the
   shortlist's signal margins and pick the target by weighted score;
3. on first reaching the EMERGENCY band: execute the handover.

The baseline policy (``rss_only``) replaces all of it with "strongest
neighbor at the EMERGENCY boundary".

Ground truth: walk the true future trajectory to the first point
outside the serving cell's coverage and take the strongest eNB there,
skipping cells too loaded to admit the call when an admission limit is
configured (``admission_limit``; None disables admission and makes the
ground truth purely geometric).  Loads are a property of the simulated
world, not of the policy: both policies observe the same loads for the
same seeds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from . import seeds
from .mobility import MobilitySpec, Trajectory, generate
from .radio import (
    DEFAULT_ZONE_FRACTIONS,
    QUALITY_FLOOR,
    PathLossParams,
    ZoneThresholds,
    derive_thresholds,
    distance_for_rss,
    rss_dbm,
)
from .selection import (
    DEFAULT_ANGLE_LIMIT,
    DEFAULT_ANGLE_REF,
    DEFAULT_HISTORY_CAPACITY,
    ScoreBreakdown,
    VisitedCells,
    Weights,
    angle_distance,
    average_motion_angle,
    expected_exit_angle,
    score_candidates,
    strongest_cell,
)
from .topology import (
    Deployment,
    build_deployment,
    enbs_by_distance,
    nearest_enb,
    neighbors_of,
    polar_coordinate,
)

POLICY_PROPOSED = "proposed"
POLICY_RSS_ONLY = "rss_only"
POLICIES = (POLICY_PROPOSED, POLICY_RSS_ONLY)

DEFAULT_LOAD_CAPACITY = 500
DEFAULT_ADMISSION_LIMIT = 0.7


@dataclass(frozen=True)
class CellConfig:
    """Everything needed to run one experiment cell."""

    rows: int = 20
    cols: int = 20
    spacing: float = 1000.0
    jitter_fraction: float = 0.0
    model: str = "manhattan"
    steps: int = 10000
    waypoint_resolution: float = 1000.0
    waypoints: tuple = ()
    path_label: str = ""
    policy: str = POLICY_PROPOSED
    weights: Weights = Weights()
    cl_limit: float = 0.7
    k_used: int = 3
    history_capacity: int = DEFAULT_HISTORY_CAPACITY
    angle_limit: float = DEFAULT_ANGLE_LIMIT
    angle_ref: float = DEFAULT_ANGLE_REF
    zone_fractions: tuple = DEFAULT_ZONE_FRACTIONS
    zone_thresholds_dbm: tuple | None = None  # (p1, p2, p3) overrides
    radio: PathLossParams = PathLossParams()
    load_capacity: int = DEFAULT_LOAD_CAPACITY
    admission_limit: float | None = DEFAULT_ADMISSION_LIMIT
    replications: int = 30
    master_seed: int = 1
    cell_index: int = 0

    def __post_init__(self):
        if self.policy not in POLICIES:
            raise ValueError(f"unknown policy {self.policy!r}")
        if not (1 <= self.k_used <= self.history_capacity):
            raise ValueError("k_used must be in [1, history capacity]")
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if self.load_capacity < 1:
            raise ValueError("load capacity must be >= 1")

    @property
    def model_label(self) -> str:
        return f"{self.model}:{self.path_label}" if self.path_label else self.model


@dataclass
class HandoverRecord:
    step: int
    serving: int
    shortlist: frozenset[int]
    selected: int
    ground_truth: int
    correct: bool
    fallback_used: bool
    orientation_skipped: bool
    s_om: float | None = None
    s_cl: float | None = None
    s_rss: float | None = None
    s_was: float | None = None
    breakdown: ScoreBreakdown | None = None


@dataclass
class RunSummary:
    handovers: int = 0
    correct: int = 0
    fallbacks: int = 0
    orientation_skips: int = 0
    coverage_gaps: int = 0
    reassociations: int = 0
    per_replication: list[float] = field(default_factory=list)
    mean_percent_correct: float = float("nan")
    ci95: tuple[float, float] = (float("nan"), float("nan"))

    @property
    def percent_correct(self) -> float:
        return 100.0 * self.correct / self.handovers if self.handovers else float("nan")

    @property
    def fallback_rate(self) -> float:
        return self.fallbacks / self.handovers if self.handovers else 0.0


class LoadModel:
    """Per-epoch, per-cell load fractions from a stateless hash stream.

    connections(epoch, id) is uniform over the integers [0, capacity];
    the load fraction is connections / capacity.  Values depend only on
    (seed, epoch, id), so any subset can be queried lazily and the same
    world is observed by every policy.
    """

    def __init__(self, seed: int, capacity: int = DEFAULT_LOAD_CAPACITY):
        self.seed = seed
        self.capacity = capacity

    def connections(self, epoch: int, enb_id: int) -> int:
        return seeds.derive(self.seed, seeds.LOADS, epoch, enb_id) % (self.capacity + 1)

    def fraction(self, epoch: int, enb_id: int) -> float:
        return self.connections(epoch, enb_id) / self.capacity


class ZeroLoads(LoadModel):
    """All cells idle; isolates the geometric behavior in tests."""

    def __init__(self):
        super().__init__(seed=0)

    def connections(self, epoch: int, enb_id: int) -> int:
        return 0


def sample_loads(
    deployment: Deployment,
    seed: int,
    epoch: int,
    capacity: int = DEFAULT_LOAD_CAPACITY,
) -> np.ndarray:
    """Materialize the load fractions of every eNB for one epoch."""
    model = LoadModel(seed, capacity)
    return np.array([model.fraction(epoch, e) for e in range(len(deployment.enbs))])


def ground_truth_next_cell(
    deployment: Deployment,
    trajectory: Trajectory,
    decision_index: int,
    serving: int,
    loads: Mapping[int, float] | Callable[[int], float] | None = None,
    admission_limit: float | None = None,
) -> int:
    """The cell the UE actually ends up on: walk the future trajectory
    to the first point outside the serving coverage circle (or the
    final point if it never exits) and return the strongest non-serving
    eNB there, ties to the lowest id.  When ``loads`` and
    ``admission_limit`` are given, cells at or above the limit cannot
    admit the call and are skipped unless every alternative is full.
    """
    from . import backend

    cx, cy = deployment.enbs[serving].center
    r2 = deployment.coverage_radius**2
    k = backend.get_kernel()
    exit_idx = k.first_reach(
        trajectory.xs, trajectory.ys, decision_index, cx, cy, r2, True
    )
    if exit_idx < 0:
        exit_idx = len(trajectory) - 1
    p = trajectory.point(exit_idx)
    order = enbs_by_distance(deployment, p)
    load_of = None
    if loads is not None and admission_limit is not None:
        load_of = loads if callable(loads) else loads.__getitem__
    first_choice = None
    for enb_id in order:
        enb_id = int(enb_id)
        if enb_id == serving:
            continue
        if first_choice is None:
            first_choice = enb_id
        if load_of is None or load_of(enb_id) < admission_limit:
            return enb_id
    return first_choice  # every other cell is full: strongest wins anyway


@dataclass
class _PendingDecision:
    target: int | None
    epoch: int
    breakdown: ScoreBreakdown | None
    orientation_skipped: bool


def zone_trigger_distances(
    config: CellConfig, coverage_radius: float
) -> tuple[float, float, ZoneThresholds]:
    """(concern distance, emergency distance, thresholds) for one cell.

    Fraction-anchored thresholds map to exact fraction * radius trigger
    distances; explicit dBm overrides are inverted through the link
    budget."""
    params = config.radio
    if config.zone_thresholds_dbm is not None:
        thresholds = ZoneThresholds(*config.zone_thresholds_dbm)
        d_concern = distance_for_rss(params, thresholds.p3)
        d_emergency = distance_for_rss(params, thresholds.p2)
        if not (d_concern < d_emergency < coverage_radius):
            raise ValueError(
                "zone thresholds must place the selection and handover"
                " triggers strictly inside the coverage radius"
            )
        return d_concern, d_emergency, thresholds
    f3, f2, _ = config.zone_fractions
    thresholds = derive_thresholds(params, coverage_radius, config.zone_fractions)
    return f3 * coverage_radius, f2 * coverage_radius, thresholds


def simulate_trajectory(
    deployment: Deployment,
    trajectory: Trajectory,
    config: CellConfig,
    load_model: LoadModel,
    keep_breakdowns: bool = False,
) -> tuple[list[HandoverRecord], int, int]:
    """Run the zone state machine over one trajectory.

    Returns (handover records, coverage-gap episodes, re-associations).
    """
    from . import backend

    if len(trajectory) == 0:
        return [], 0, 0

    k = backend.get_kernel()
    radius = deployment.coverage_radius
    d_concern, d_emergency, thresholds = zone_trigger_distances(config, radius)
    t2_concern = d_concern**2
    t2_emergency = d_emergency**2
    r2_cov = radius**2
    params = config.radio
    p1 = thresholds.p1

    xs, ys = trajectory.xs, trajectory.ys
    serving = nearest_enb(deployment, trajectory.point(0))
    visited = VisitedCells(config.history_capacity).push(serving)
    records: list[HandoverRecord] = []
    coverage_gaps = 0
    reassociations = 0
    epoch = 0
    n = len(trajectory)
    proposed = config.policy == POLICY_PROPOSED

    def rss_at(point, ids) -> dict[int, float]:
        out = {}
        for m in ids:
            c = deployment.enbs[m].center
            dx = point[0] - c[0]
            dy = point[1] - c[1]
            out[m] = rss_dbm(params, math.sqrt(dx * dx + dy * dy))
        return out

    def dist2_to(enb_id, idx) -> float:
        c = deployment.enbs[enb_id].center
        dx = float(xs[idx]) - c[0]
        dy = float(ys[idx]) - c[1]
        return dx * dx + dy * dy

    i = 0
    while i < n:
        cx, cy = deployment.enbs[serving].center
        neighbor_ids = neighbors_of(deployment, serving)
        if not neighbor_ids:
            # single-cell world: nothing to hand over to; just account
            # for the episodes spent outside coverage
            while True:
                exit_i = k.first_reach(xs, ys, i, cx, cy, r2_cov, True)
                if exit_i < 0:
                    break
                coverage_gaps += 1
                i = _first_within(xs, ys, exit_i, cx, cy, r2_cov)
                if i < 0:
                    break
            break

        # next coverage loss: the serving signal drops below the
        # connectable floor before any handover fires (wrong or missed
        # selection) and the link fails
        c = k.first_reach(xs, ys, i, cx, cy, r2_cov, True)

        # handover trigger: the signal must dip below the EMERGENCY
        # boundary from inside (a crossing, not a level: a UE heading
        # inbound through the outer bands must not hand over)
        b = k.first_below(xs, ys, i, cx, cy, t2_emergency)
        h = k.first_reach(xs, ys, b, cx, cy, t2_emergency, False) if b >= 0 else -1

        if c >= 0 and (h < 0 or c < h):
            # radio-link failure: re-associate with the strongest cell,
            # walking through any region no cell covers
            i = c
            in_gap = False
            best = serving
            while i < n:
                best = nearest_enb(deployment, trajectory.point(i))
                if dist2_to(best, i) <= r2_cov:
                    break
                in_gap = True
                i += 1
            if in_gap:
                coverage_gaps += 1
            if i >= n:
                break  # the trajectory ends outside all coverage
            if best != serving:
                serving = best
                visited = visited.push(best)
                reassociations += 1
            continue
        if h < 0:
            break  # the journey ends without another handover trigger

        # selection moment: the NORMAL -> CONCERN drop when the UE
        # visits the NORMAL band first; otherwise decide at the
        # handover trigger itself (cell clipped without a strong phase)
        a = k.first_below(xs, ys, i, cx, cy, t2_concern)
        if 0 <= a <= h:
            j = k.first_reach(xs, ys, a, cx, cy, t2_concern, False)
        else:
            j = h
        epoch += 1
        cycle_epoch = epoch
        pending = _PendingDecision(None, cycle_epoch, None, False)
        if proposed:
            pending = _decide(
                deployment, config, load_model, visited, serving,
                neighbor_ids, trajectory.point(j), cycle_epoch, p1, rss_at,
            )
        point_h = trajectory.point(h)
        if pending.target is not None:
            selected = pending.target
            fallback = False
        else:
            selected = strongest_cell(rss_at(point_h, neighbor_ids))
            fallback = proposed  # the baseline policy is not a fallback
        truth = ground_truth_next_cell(
            deployment, trajectory, h, serving,
            loads=(lambda m, e=cycle_epoch: load_model.fraction(e, m)),
            admission_limit=config.admission_limit,
        )
        records.append(_make_record(h, serving, selected, truth, fallback, pending,
                                    keep_breakdowns))
        visited = visited.push(selected)
        serving = selected
        i = h + 1

    return records, coverage_gaps, reassociations


def _make_record(step, serving, selected, truth, fallback, pending,
                 keep_breakdowns) -> HandoverRecord:
    b = pending.breakdown
    winner = b.candidates.get(selected) if b is not None else None
    return HandoverRecord(
        step=step,
        serving=serving,
        shortlist=frozenset(b.qualified()) if b is not None else frozenset(),
        selected=selected,
        ground_truth=truth,
        correct=selected == truth,
        fallback_used=fallback,
        orientation_skipped=pending.orientation_skipped,
        s_om=winner.orientation if winner else None,
        s_cl=winner.load if winner else None,
        s_rss=winner.signal if winner else None,
        s_was=winner.combined if winner else None,
        breakdown=b if keep_breakdowns else None,
    )


def _decide(
    deployment, config, load_model, visited, serving, neighbor_ids,
    point, epoch, p1, rss_at,
) -> _PendingDecision:
    """CONCERN-stage scoring: orientation from the visited history,
    loads from the epoch snapshot, signal margins for the shortlist."""
    previous = visited.previous(serving, config.k_used)
    gaps = None
    motion = exit_angle = None
    if previous:
        sc = deployment.enbs[serving].center
        entries = {
            n: polar_coordinate(sc, deployment.enbs[n].center) for n in previous
        }
        motion = average_motion_angle(entries, previous)
        exit_angle = expected_exit_angle(motion)
        gaps = {
            n: angle_distance(
                exit_angle, polar_coordinate(sc, deployment.enbs[n].center).theta_deg
            )
            for n in neighbor_ids
        }
    elif config.weights.load + config.weights.signal <= 0.0:
        # no history and no non-orientation weight to fall back on
        return _PendingDecision(None, epoch, None, True)

    loads = {n: load_model.fraction(epoch, n) for n in neighbor_ids}

    def qualities_of(shortlist):
        rss = rss_at(point, shortlist)
        return {n: max(rss[n] - p1, QUALITY_FLOOR) for n in shortlist}

    target, breakdown = score_candidates(
        gaps,
        loads,
        qualities_of,
        config.weights,
        config.cl_limit,
        config.angle_limit,
        config.angle_ref,
        motion_angle=motion,
        exit_angle=exit_angle,
    )
    return _PendingDecision(target, epoch, breakdown, gaps is None)


def _first_within(xs, ys, start, cx, cy, r2) -> int:
    for i in range(start, len(xs)):
        dx = xs[i] - cx
        dy = ys[i] - cy
        if dx * dx + dy * dy <= r2:
            return i
    return -1


def build_cell_deployment(config: CellConfig, rep: int) -> Deployment:
    """Deployment for one replication; jittered placements are re-drawn
    per replication so comparisons average over placements."""
    dep_seed = seeds.derive(
        config.master_seed, seeds.DEPLOYMENT, config.cell_index, rep
    )
    return build_deployment(
        config.rows, config.cols, config.spacing, config.jitter_fraction, dep_seed
    )


def run_replication(
    config: CellConfig, rep: int, keep_breakdowns: bool = False
) -> tuple[list[HandoverRecord], int, int]:
    """One independent replication: build the world, generate the
    trajectory, run the state machine."""
    deployment = build_cell_deployment(config, rep)
    traj_seed = seeds.derive(config.master_seed, seeds.TRAJECTORY, config.cell_index, rep)
    load_seed = seeds.derive(config.master_seed, seeds.LOADS, config.cell_index, rep)
    spec = MobilitySpec(
        kind=config.model,
        field_size=deployment.field_size,
        steps=config.steps,
        waypoint_resolution=config.waypoint_resolution,
        waypoints=config.waypoints,
        seed=traj_seed,
    )
    trajectory = generate(spec)
    load_model = LoadModel(load_seed, config.load_capacity)
    return simulate_trajectory(
        deployment, trajectory, config, load_model, keep_breakdowns=keep_breakdowns
    )


def run_experiment(config: CellConfig) -> RunSummary:
    """Run all replications of one cell and aggregate the statistics."""
    summary = RunSummary()
    for rep in range(config.replications):
        records, gaps, reassoc = run_replication(config, rep)
        summary.coverage_gaps += gaps
        summary.reassociations += reassoc
        summary.handovers += len(records)
        summary.correct += sum(r.correct for r in records)
        summary.fallbacks += sum(r.fallback_used for r in records)
        summary.orientation_skips += sum(r.orientation_skipped for r in records)
        if records:
            summary.per_replication.append(
                100.0 * sum(r.correct for r in records) / len(records)
            )
    _aggregate(summary)
    return summary


def _aggregate(summary: RunSummary) -> None:
    reps = summary.per_replication
    if not reps:
        return
    mean = sum(reps) / len(reps)
    summary.mean_percent_correct = mean
    if len(reps) == 1:
        summary.ci95 = (mean, mean)
        return
    var = sum((v - mean) ** 2 for v in reps) / (len(reps) - 1)
    half = _t_quantile(len(reps) - 1) * math.sqrt(var / len(reps))
    summary.ci95 = (mean - half, mean + half)


def _t_quantile(dof: int) -> float:
    """Two-sided 95% Student-t quantile."""
    from scipy.stats import t

    return float(t.ppf(0.975, dof))
