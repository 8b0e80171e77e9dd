"""eNB grid deployment, polar coordinate tables and coverage queries.

The deployment is a rows x cols square grid of eNBs with optional
per-axis uniform placement jitter.  All values are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import seeds
from ._pykernel import Stream

COVERAGE_FRACTION = 0.75  # coverage radius as a fraction of eNB spacing


class Point(NamedTuple):
    x: float
    y: float


class PolarCoord(NamedTuple):
    r: float
    theta_deg: float


@dataclass(frozen=True)
class Enb:
    id: int
    center: Point
    coverage_radius: float


@dataclass(frozen=True, eq=False)
class Deployment:
    rows: int
    cols: int
    spacing: float
    jitter_fraction: float
    seed: int
    enbs: list[Enb] = field(repr=False)
    # flat center arrays in id order, for vectorized distance queries
    xs: np.ndarray = field(repr=False)
    ys: np.ndarray = field(repr=False)

    @property
    def coverage_radius(self) -> float:
        return COVERAGE_FRACTION * self.spacing

    @property
    def field_size(self) -> tuple[float, float]:
        """(width, height) of the service area: the hull of the nominal grid."""
        return ((self.cols - 1) * self.spacing, (self.rows - 1) * self.spacing)

    def center_of(self, enb_id: int) -> Point:
        return self.enbs[enb_id].center

    def row_col(self, enb_id: int) -> tuple[int, int]:
        return divmod(enb_id, self.cols)


def build_deployment(
    rows: int,
    cols: int,
    spacing: float,
    jitter_fraction: float = 0.0,
    seed: int = 0,
) -> Deployment:
    """Build a rows x cols grid of eNBs, id-assigned row-major.

    eNB (row, col) sits at (col*spacing, row*spacing), displaced per axis
    by a uniform offset in [-jf*spacing, +jf*spacing] when jitter is on.
    Coverage radius is 75% of the spacing for every eNB.
    """
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be >= 1")
    if spacing <= 0:
        raise ValueError("spacing must be positive")
    if not (0.0 <= jitter_fraction < 0.5):
        raise ValueError("jitter_fraction must be in [0, 0.5)")

    rng = Stream(seeds.derive(seed, seeds.DEPLOYMENT))
    amp = jitter_fraction * spacing
    radius = COVERAGE_FRACTION * spacing
    enbs = []
    xs = np.empty(rows * cols)
    ys = np.empty(rows * cols)
    for row in range(rows):
        for col in range(cols):
            x = col * spacing
            y = row * spacing
            if amp > 0.0:
                x += amp * (2.0 * rng.uniform() - 1.0)
                y += amp * (2.0 * rng.uniform() - 1.0)
            enb_id = row * cols + col
            enbs.append(Enb(enb_id, Point(x, y), radius))
            xs[enb_id] = x
            ys[enb_id] = y
    return Deployment(rows, cols, spacing, jitter_fraction, seed, enbs, xs, ys)


def polar_coordinate(origin: Point, target: Point) -> PolarCoord:
    """Polar coordinate of ``target`` relative to ``origin``: Euclidean
    distance and angle counterclockwise from the +x axis in [0, 360)."""
    dx = target[0] - origin[0]
    dy = target[1] - origin[1]
    if dx == 0.0 and dy == 0.0:
        raise ValueError("polar coordinate undefined for coincident points")
    r = math.sqrt(dx * dx + dy * dy)
    theta = math.degrees(math.atan2(dy, dx)) % 360.0
    return PolarCoord(r, theta)


@dataclass(frozen=True)
class PolarTable:
    """Per-eNB table of every other eNB's polar coordinate."""

    origin: int
    entries: dict[int, PolarCoord]


def build_polar_table(deployment: Deployment, origin: int) -> PolarTable:
    _check_id(deployment, origin)
    oc = deployment.enbs[origin].center
    entries = {
        enb.id: polar_coordinate(oc, enb.center)
        for enb in deployment.enbs
        if enb.id != origin
    }
    return PolarTable(origin, entries)


def neighbors_of(deployment: Deployment, enb_id: int) -> set[int]:
    """The 8-connected grid neighbors: 8 interior, 5 edge, 3 corner."""
    _check_id(deployment, enb_id)
    row, col = deployment.row_col(enb_id)
    out = set()
    for dr in (-1, 0, 1):
        for dc in (-1, 0, 1):
            if dr == 0 and dc == 0:
                continue
            r, c = row + dr, col + dc
            if 0 <= r < deployment.rows and 0 <= c < deployment.cols:
                out.add(r * deployment.cols + c)
    return out


def covering_enbs(deployment: Deployment, p: Point) -> set[int]:
    """All eNBs whose coverage circle contains ``p`` (distance <= radius)."""
    r2 = deployment.coverage_radius**2
    dx = deployment.xs - p[0]
    dy = deployment.ys - p[1]
    hit = np.flatnonzero(dx * dx + dy * dy <= r2)
    return set(int(i) for i in hit)


def enbs_by_distance(deployment: Deployment, p: Point) -> np.ndarray:
    """eNB ids sorted by increasing distance to ``p``; ties by lowest id."""
    dx = deployment.xs - p[0]
    dy = deployment.ys - p[1]
    return np.argsort(dx * dx + dy * dy, kind="stable")


def nearest_enb(deployment: Deployment, p: Point) -> int:
    """The closest eNB to ``p`` (lowest id on exact ties)."""
    dx = deployment.xs - p[0]
    dy = deployment.ys - p[1]
    return int(np.argmin(dx * dx + dy * dy))


def _check_id(deployment: Deployment, enb_id: int) -> None:
    if not (0 <= enb_id < len(deployment.enbs)):
        raise KeyError(f"unknown eNB id {enb_id}")
