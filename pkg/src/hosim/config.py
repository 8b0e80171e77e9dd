"""Experiment configuration: a flat key/value text format with dotted
sections, expanded into a cartesian matrix of experiment cells.

Grammar (one statement per line):

    key = value            # '#' starts a comment
    key = v1, v2, v3       # sweep keys accept comma-separated lists

Sweep keys (each list value multiplies the matrix): ``model``,
``policy``, ``selection.cl_limit``, ``deployment.jitter``,
``selection.k_used`` and, for fixed-path runs, ``mobility.path_files``.
All other keys are scalars.  Unknown keys are rejected.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path

from .engine import (
    DEFAULT_ADMISSION_LIMIT,
    DEFAULT_LOAD_CAPACITY,
    POLICIES,
    POLICY_PROPOSED,
    CellConfig,
)
from .mobility import FIXED_PATH, MODELS, load_waypoints_file
from .radio import DEFAULT_ZONE_FRACTIONS, PathLossParams
from .selection import (
    DEFAULT_ANGLE_LIMIT,
    DEFAULT_ANGLE_REF,
    DEFAULT_HISTORY_CAPACITY,
    Weights,
)


class ConfigError(ValueError):
    """Invalid configuration; carries the offending key or line."""


def _bool(text: str) -> bool:
    t = text.lower()
    if t in ("true", "1", "yes", "on"):
        return True
    if t in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _float_or_none(text: str) -> float | None:
    return None if text.lower() in ("none", "off") else float(text)


# key -> (parser, is_list, default)
_SCHEMA: dict[str, tuple] = {
    "model": (str, True, None),  # required
    "policy": (str, True, [POLICY_PROPOSED]),
    "run.steps": (int, False, 10000),
    "run.replications": (int, False, 30),
    "run.master_seed": (int, False, 1),
    "run.output_dir": (str, False, "results"),
    "run.write_records": (_bool, False, False),
    "deployment.rows": (int, False, 20),
    "deployment.cols": (int, False, 20),
    "deployment.spacing_m": (float, False, 1000.0),
    "deployment.jitter": (float, True, [0.0]),
    "selection.cl_limit": (float, True, [0.7]),
    "selection.k_used": (int, True, [3]),
    "selection.angle_limit_deg": (float, False, DEFAULT_ANGLE_LIMIT),
    "selection.angle_ref_deg": (float, False, DEFAULT_ANGLE_REF),
    "selection.weights": (float, True, [0.5, 0.25, 0.25]),
    "history.capacity": (int, False, DEFAULT_HISTORY_CAPACITY),
    "zones.fractions": (float, True, list(DEFAULT_ZONE_FRACTIONS)),
    "zones.thresholds_dbm": (float, True, []),  # optional p1, p2, p3 overrides
    "radio.frequency_mhz": (float, False, 2000.0),
    "radio.tx_power_dbm": (float, False, 43.0),
    "radio.base_height_m": (float, False, 30.0),
    "radio.mobile_height_m": (float, False, 1.5),
    "radio.building_height_m": (float, False, 15.0),
    "radio.building_spacing_m": (float, False, 50.0),
    "radio.street_width_m": (float, False, 25.0),
    "radio.street_orientation_deg": (float, False, 30.0),
    "load.capacity": (int, False, DEFAULT_LOAD_CAPACITY),
    "engine.admission_limit": (_float_or_none, False, DEFAULT_ADMISSION_LIMIT),
    "mobility.waypoint_resolution_m": (float, False, 1000.0),
    "mobility.path_files": (str, True, []),
}

# keys whose list values become matrix dimensions
_SWEEP_KEYS = ("model", "policy", "selection.cl_limit", "deployment.jitter",
               "selection.k_used")


@dataclass
class ExperimentMatrix:
    cells: list[CellConfig]
    output_dir: str
    write_records: bool
    effective: dict = field(default_factory=dict)

    def __eq__(self, other):
        return (
            isinstance(other, ExperimentMatrix)
            and self.cells == other.cells
            and self.output_dir == other.output_dir
            and self.write_records == other.write_records
        )


def parse_config_text(text: str, base_dir: str | Path = ".") -> ExperimentMatrix:
    values: dict[str, object] = {}
    for lineno, raw in enumerate(io.StringIO(text), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if key not in _SCHEMA:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        parser, is_list, _ = _SCHEMA[key]
        try:
            if is_list:
                values[key] = [parser(v.strip()) for v in val.split(",") if v.strip()]
            else:
                values[key] = parser(val)
        except ValueError as e:
            raise ConfigError(f"line {lineno}: bad value for {key!r}: {e}") from None
    return _build_matrix(values, Path(base_dir))


def parse_config(path: str | Path) -> ExperimentMatrix:
    """Parse and validate a config file into the experiment matrix."""
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"config file not found: {p}")
    return parse_config_text(p.read_text(), base_dir=p.parent)


def _build_matrix(values: dict, base_dir: Path) -> ExperimentMatrix:
    def get(key):
        return values.get(key, _SCHEMA[key][2])

    if "model" not in values or not values["model"]:
        raise ConfigError("missing required key 'model'")
    models = get("model")
    for m in models:
        if m not in MODELS:
            raise ConfigError(f"unknown model {m!r}")
    policies = get("policy")
    for p in policies:
        if p not in POLICIES:
            raise ConfigError(f"unknown policy {p!r}")

    w = get("selection.weights")
    if len(w) != 3:
        raise ConfigError("selection.weights needs exactly three values")
    try:
        weights = Weights(*w)
    except ValueError as e:
        raise ConfigError(f"selection.weights: {e}") from None

    zf = get("zones.fractions")
    if len(zf) != 3:
        raise ConfigError("zones.fractions needs exactly three values")
    if not (0.0 < zf[0] < zf[1] < zf[2] <= 1.0):
        raise ConfigError("zones.fractions must be increasing in (0, 1]")

    overrides = get("zones.thresholds_dbm")
    if overrides and len(overrides) != 3:
        raise ConfigError(
            "zones.thresholds_dbm needs exactly three values (p1, p2, p3)"
        )
    if overrides and not (overrides[0] < overrides[1] < overrides[2]):
        raise ConfigError("zones.thresholds_dbm must be strictly increasing")

    try:
        radio = PathLossParams(
            frequency_mhz=get("radio.frequency_mhz"),
            tx_power_dbm=get("radio.tx_power_dbm"),
            base_height_m=get("radio.base_height_m"),
            mobile_height_m=get("radio.mobile_height_m"),
            building_height_m=get("radio.building_height_m"),
            building_spacing_m=get("radio.building_spacing_m"),
            street_width_m=get("radio.street_width_m"),
            street_orientation_deg=get("radio.street_orientation_deg"),
        )
    except ValueError as e:
        raise ConfigError(f"radio: {e}") from None

    for key in ("deployment.jitter",):
        for v in get(key):
            if not (0.0 <= v < 0.5):
                raise ConfigError(f"{key} values must be in [0, 0.5)")
    for v in get("selection.cl_limit"):
        if not (0.0 < v <= 1.0):
            raise ConfigError("selection.cl_limit values must be in (0, 1]")
    for v in get("selection.k_used"):
        if not (1 <= v <= get("history.capacity")):
            raise ConfigError("selection.k_used must be in [1, history.capacity]")

    if get("run.steps") < 1:
        raise ConfigError("run.steps must be >= 1")
    if get("run.replications") < 1:
        raise ConfigError("run.replications must be >= 1")

    field = (
        (get("deployment.cols") - 1) * get("deployment.spacing_m"),
        (get("deployment.rows") - 1) * get("deployment.spacing_m"),
    )
    path_files = get("mobility.path_files")
    if FIXED_PATH in models and not path_files:
        raise ConfigError("fixed_path runs need mobility.path_files")
    paths = []
    for pf in path_files:
        full = (base_dir / pf) if not Path(pf).is_absolute() else Path(pf)
        if not full.exists():
            raise ConfigError(f"path file not found: {full}")
        waypoints = load_waypoints_file(full)
        for p in waypoints:
            if not (0.0 <= p.x <= field[0] and 0.0 <= p.y <= field[1]):
                raise ConfigError(
                    f"{pf}: waypoint {tuple(p)} lies outside the"
                    f" {field[0]:g} x {field[1]:g} m field"
                )
        paths.append((Path(pf).stem, waypoints))

    cells = []
    index = 0
    for model in models:
        variants = paths if model == FIXED_PATH else [("", ())]
        for label, waypoints in variants:
            for policy in policies:
                for cl_limit in get("selection.cl_limit"):
                    for jitter in get("deployment.jitter"):
                        for k_used in get("selection.k_used"):
                            cells.append(
                                CellConfig(
                                    rows=get("deployment.rows"),
                                    cols=get("deployment.cols"),
                                    spacing=get("deployment.spacing_m"),
                                    jitter_fraction=jitter,
                                    model=model,
                                    steps=get("run.steps"),
                                    waypoint_resolution=get(
                                        "mobility.waypoint_resolution_m"
                                    ),
                                    waypoints=waypoints,
                                    path_label=label,
                                    policy=policy,
                                    weights=weights,
                                    cl_limit=cl_limit,
                                    k_used=k_used,
                                    history_capacity=get("history.capacity"),
                                    angle_limit=get("selection.angle_limit_deg"),
                                    angle_ref=get("selection.angle_ref_deg"),
                                    zone_fractions=tuple(zf),
                                    zone_thresholds_dbm=(
                                        tuple(overrides) if overrides else None
                                    ),
                                    radio=radio,
                                    load_capacity=get("load.capacity"),
                                    admission_limit=get("engine.admission_limit"),
                                    replications=get("run.replications"),
                                    master_seed=get("run.master_seed"),
                                    cell_index=index,
                                )
                            )
                            index += 1

    effective = {key: get(key) for key in _SCHEMA}
    return ExperimentMatrix(
        cells=cells,
        output_dir=get("run.output_dir"),
        write_records=get("run.write_records"),
        effective=effective,
    )


def emit_effective(matrix: ExperimentMatrix) -> str:
    """Serialize the matrix back to config text; re-parsing the output
    yields an equal matrix."""
    lines = []
    for key in sorted(_SCHEMA):
        _, is_list, _ = _SCHEMA[key]
        v = matrix.effective[key]
        if is_list:
            if not v:
                continue  # empty lists (no path files) are omitted
            lines.append(f"{key} = {', '.join(_fmt(x) for x in v)}")
        else:
            lines.append(f"{key} = {_fmt(v)}")
    return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)
