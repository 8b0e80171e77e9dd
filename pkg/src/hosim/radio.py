"""Deterministic path loss, received signal strength and signal zones.

Path loss follows the COST-231 Walfisch-Ikegami non-line-of-sight model
(free-space term + rooftop-to-street diffraction + multi-screen
diffraction) for a medium-sized city.  The model is deterministic; an
optional log-normal shadowing hook exists but defaults to sigma = 0 and
is not used by the simulation engine.

Received signal partitions into four zones by three power thresholds
p1 < p2 < p3:

    NORMAL     P > p3        monitor only
    CONCERN    p3 >= P > p2  select the handover target
    EMERGENCY  p2 >= P > p1  execute the handover
    DEAD       P <= p1       signal too weak for handover traffic

Thresholds are anchored to fractions of the coverage radius so the full
zone sequence always occurs inside coverage; explicit dBm overrides can
be passed instead.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

MIN_DISTANCE = 20.0  # metres; the empirical model diverges near 0
QUALITY_FLOOR = 0.01  # dB; floor for signal-margin qualities

DEFAULT_ZONE_FRACTIONS = (0.50, 0.70, 0.90)


class Zone(enum.Enum):
    NORMAL = "normal"
    CONCERN = "concern"
    EMERGENCY = "emergency"
    DEAD = "dead"


@dataclass(frozen=True)
class PathLossParams:
    frequency_mhz: float = 2000.0
    tx_power_dbm: float = 43.0
    base_height_m: float = 30.0
    mobile_height_m: float = 1.5
    building_height_m: float = 15.0
    building_spacing_m: float = 50.0
    street_width_m: float = 25.0
    street_orientation_deg: float = 30.0
    shadowing_sigma_db: float = 0.0

    def __post_init__(self):
        if not (800.0 <= self.frequency_mhz <= 2000.0):
            raise ValueError("frequency must be within 800-2000 MHz")
        for name in (
            "base_height_m",
            "mobile_height_m",
            "building_height_m",
            "building_spacing_m",
            "street_width_m",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.mobile_height_m >= self.building_height_m:
            raise ValueError("mobile antenna must be below rooftop level")
        if not (0.0 <= self.street_orientation_deg <= 90.0):
            raise ValueError("street orientation must be in [0, 90] degrees")
        if self.shadowing_sigma_db < 0:
            raise ValueError("shadowing sigma must be >= 0")


@dataclass(frozen=True)
class ZoneThresholds:
    p1: float
    p2: float
    p3: float

    def __post_init__(self):
        if not (self.p1 < self.p2 < self.p3):
            raise ValueError("thresholds must satisfy p1 < p2 < p3")


def _orientation_loss(phi: float) -> float:
    if phi < 35.0:
        return -10.0 + 0.354 * phi
    if phi < 55.0:
        return 2.5 + 0.075 * (phi - 35.0)
    return 4.0 - 0.114 * (phi - 55.0)


def path_loss_db(params: PathLossParams, distance_m: float) -> float:
    """COST-231 Walfisch-Ikegami NLOS loss in dB at ``distance_m``.

    Distances below MIN_DISTANCE are clamped to MIN_DISTANCE.  Strictly
    increasing in distance over the clamped range.
    """
    d_km = max(distance_m, MIN_DISTANCE) / 1000.0
    f = params.frequency_mhz
    log_f = math.log10(f)
    log_d = math.log10(d_km)

    free_space = 32.4 + 20.0 * log_d + 20.0 * log_f

    dh_mobile = params.building_height_m - params.mobile_height_m
    rooftop = (
        -16.9
        - 10.0 * math.log10(params.street_width_m)
        + 10.0 * log_f
        + 20.0 * math.log10(dh_mobile)
        + _orientation_loss(params.street_orientation_deg)
    )
    if rooftop < 0.0:
        rooftop = 0.0

    dh_base = params.base_height_m - params.building_height_m
    if dh_base > 0.0:
        shadow = -18.0 * math.log10(1.0 + dh_base)
        k_a = 54.0
        k_d = 18.0
    else:
        shadow = 0.0
        k_a = 54.0 - 0.8 * dh_base
        if d_km < 0.5:
            k_a = 54.0 - 0.8 * dh_base * (d_km / 0.5)
        k_d = 18.0 - 15.0 * dh_base / params.building_height_m
    k_f = -4.0 + 0.7 * (f / 925.0 - 1.0)  # medium-sized city
    multi_screen = (
        shadow
        + k_a
        + k_d * log_d
        + k_f * log_f
        - 9.0 * math.log10(params.building_spacing_m)
    )
    if multi_screen < 0.0:
        multi_screen = 0.0

    return free_space + rooftop + multi_screen


def rss_dbm(params: PathLossParams, distance_m: float) -> float:
    """Received signal strength: transmit power minus path loss."""
    return params.tx_power_dbm - path_loss_db(params, distance_m)


def shadowed_rss_dbm(params: PathLossParams, distance_m: float, gauss: float) -> float:
    """RSS with a log-normal shadowing term, ``gauss`` ~ N(0, 1)."""
    return rss_dbm(params, distance_m) + params.shadowing_sigma_db * gauss


def derive_thresholds(
    params: PathLossParams,
    coverage_radius: float,
    fractions: tuple[float, float, float] = DEFAULT_ZONE_FRACTIONS,
) -> ZoneThresholds:
    """Anchor zone thresholds to RSS at fractions (f3, f2, f1) of the
    coverage radius; p1 < p2 < p3 follows from loss monotonicity."""
    f3, f2, f1 = fractions
    if not (0.0 < f3 < f2 < f1 <= 1.0):
        raise ValueError("zone fractions must satisfy 0 < f3 < f2 < f1 <= 1")
    return ZoneThresholds(
        p1=rss_dbm(params, f1 * coverage_radius),
        p2=rss_dbm(params, f2 * coverage_radius),
        p3=rss_dbm(params, f3 * coverage_radius),
    )


def classify_zone(rss: float, t: ZoneThresholds) -> Zone:
    """Total, exclusive zone classification; boundaries belong to the
    weaker (outer) zone."""
    if rss > t.p3:
        return Zone.NORMAL
    if rss > t.p2:
        return Zone.CONCERN
    if rss > t.p1:
        return Zone.EMERGENCY
    return Zone.DEAD


def distance_for_rss(params: PathLossParams, rss: float) -> float:
    """Invert the deterministic link budget: the distance at which the
    received power equals ``rss`` (clamped to MIN_DISTANCE).  Used to
    turn explicit dBm zone thresholds into trigger distances."""
    if rss >= rss_dbm(params, MIN_DISTANCE):
        return MIN_DISTANCE
    lo = MIN_DISTANCE
    hi = 2000.0
    while rss_dbm(params, hi) > rss:
        hi *= 2.0
        if hi > 1e9:
            raise ValueError(f"target power {rss} dBm is never reached")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if rss_dbm(params, mid) > rss:
            lo = mid
        else:
            hi = mid
    return hi
