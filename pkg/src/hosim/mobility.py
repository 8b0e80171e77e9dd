"""UE trajectory generation at fixed step resolution.

Four movement models over a rectangular field:

- fixed_path: a polyline of waypoints, rasterized at one step of arc
  per tick (phase-1 style routes).
- manhattan: axis-locked motion between random waypoints on a coarse
  sub-grid (x first, then y), one axis per tick.
- random_direction: constant heading until the field edge is reached,
  then a fresh inward heading.
- random_waypoint: straight lines between uniform waypoints on the
  step grid; both axes may move in one tick.

Every model moves each axis by 0 or +-step_resolution per tick, stays
inside the field, and is a pure function of (spec, seed).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path as FsPath

import numpy as np

from . import backend
from .topology import Point

STEP_RESOLUTION = 10.0  # metres

FIXED_PATH = "fixed_path"
MANHATTAN = "manhattan"
RANDOM_DIRECTION = "random_direction"
RANDOM_WAYPOINT = "random_waypoint"
MODELS = (FIXED_PATH, MANHATTAN, RANDOM_DIRECTION, RANDOM_WAYPOINT)


@dataclass(frozen=True)
class MobilitySpec:
    kind: str
    field_size: tuple[float, float]
    steps: int = 10000
    waypoint_resolution: float = 1000.0  # manhattan only
    waypoints: tuple[Point, ...] = ()  # fixed_path only
    seed: int = 0

    def __post_init__(self):
        if self.kind not in MODELS:
            raise ValueError(f"unknown mobility model {self.kind!r}")
        w, h = self.field_size
        if w < 0 or h < 0:
            raise ValueError("field dimensions must be nonnegative")
        if self.kind != FIXED_PATH and self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.kind == MANHATTAN:
            if self.waypoint_resolution <= 0:
                raise ValueError("waypoint resolution must be positive")
            if w % self.waypoint_resolution or h % self.waypoint_resolution:
                raise ValueError(
                    "waypoint resolution must divide the field dimensions"
                )
        if self.kind == FIXED_PATH:
            if len(self.waypoints) < 2:
                raise ValueError("a fixed path needs at least two waypoints")
            for p in self.waypoints:
                if not (0.0 <= p[0] <= w and 0.0 <= p[1] <= h):
                    raise ValueError(f"waypoint {p} is outside the field")
        elif w < STEP_RESOLUTION or h < STEP_RESOLUTION:
            raise ValueError("field too small for random motion")


@dataclass(frozen=True, eq=False)
class Trajectory:
    xs: np.ndarray = field(repr=False)
    ys: np.ndarray = field(repr=False)
    step_resolution: float = STEP_RESOLUTION

    def __len__(self) -> int:
        return len(self.xs)

    def point(self, i: int) -> Point:
        return Point(float(self.xs[i]), float(self.ys[i]))

    def points(self) -> list[Point]:
        return [Point(float(x), float(y)) for x, y in zip(self.xs, self.ys)]


def generate(spec: MobilitySpec) -> Trajectory:
    """Generate the trajectory for ``spec`` (dispatch on the model)."""
    if spec.kind == FIXED_PATH:
        return generate_fixed_path(spec)
    if spec.kind == MANHATTAN:
        return generate_manhattan(spec)
    if spec.kind == RANDOM_DIRECTION:
        return generate_random_direction(spec)
    return generate_random_waypoint(spec)


def generate_fixed_path(spec: MobilitySpec) -> Trajectory:
    k = backend.get_kernel()
    wx = [float(p[0]) for p in spec.waypoints]
    wy = [float(p[1]) for p in spec.waypoints]
    xs, ys = k.traj_fixed(wx, wy, STEP_RESOLUTION)
    return _wrap(xs, ys)


def generate_manhattan(spec: MobilitySpec) -> Trajectory:
    k = backend.get_kernel()
    w, h = spec.field_size
    xs, ys = k.traj_manhattan(
        spec.seed, spec.steps, w, h, spec.waypoint_resolution, STEP_RESOLUTION
    )
    return _wrap(xs, ys)


def generate_random_direction(spec: MobilitySpec) -> Trajectory:
    k = backend.get_kernel()
    w, h = spec.field_size
    xs, ys, _ = k.traj_random_direction(spec.seed, spec.steps, w, h, STEP_RESOLUTION)
    return _wrap(xs, ys)


def generate_random_waypoint(spec: MobilitySpec) -> Trajectory:
    k = backend.get_kernel()
    w, h = spec.field_size
    xs, ys = k.traj_random_waypoint(spec.seed, spec.steps, w, h, STEP_RESOLUTION)
    return _wrap(xs, ys)


def _wrap(xs, ys) -> Trajectory:
    return Trajectory(np.asarray(xs, dtype=np.float64), np.asarray(ys, dtype=np.float64))


def save_path_file(trajectory: Trajectory, path: str | FsPath) -> None:
    """Write a trajectory as plain text, one "x y" pair per line (metres)."""
    with open(path, "w") as fh:
        for x, y in zip(trajectory.xs, trajectory.ys):
            fh.write(f"{x:g} {y:g}\n")


def load_path_file(path: str | FsPath) -> Trajectory:
    """Read a plain-text "x y" per line trajectory file."""
    xs = []
    ys = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'x y'")
            xs.append(float(parts[0]))
            ys.append(float(parts[1]))
    return _wrap(xs, ys)


def load_waypoints_file(path: str | FsPath) -> tuple[Point, ...]:
    """Read polyline waypoints from the same "x y" per line format."""
    t = load_path_file(path)
    return tuple(Point(float(x), float(y)) for x, y in zip(t.xs, t.ys))
