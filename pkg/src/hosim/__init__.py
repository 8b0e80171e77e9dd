"""hosim: a deterministic, seeded cellular-handover simulator.

Target cells are selected by combining three relative criteria:
orientation match against the UE's estimated travel direction, current
cell load, and received signal strength.  The engine replays UEs over
a grid deployment, executes the staged zone pipeline, and scores every
handover against the ground-truth next cell.
"""

__version__ = "0.1.0"

from .backend import backend_name
from .engine import (
    CellConfig,
    HandoverRecord,
    RunSummary,
    ground_truth_next_cell,
    run_experiment,
    run_replication,
    sample_loads,
)
from .mobility import MobilitySpec, Trajectory, generate
from .radio import PathLossParams, Zone, ZoneThresholds, classify_zone, path_loss_db, rss_dbm
from .selection import VisitedCells, Weights
from .topology import Deployment, build_deployment, build_polar_table, neighbors_of

__all__ = [
    "CellConfig",
    "Deployment",
    "HandoverRecord",
    "MobilitySpec",
    "PathLossParams",
    "RunSummary",
    "Trajectory",
    "VisitedCells",
    "Weights",
    "Zone",
    "ZoneThresholds",
    "backend_name",
    "build_deployment",
    "build_polar_table",
    "classify_zone",
    "generate",
    "ground_truth_next_cell",
    "neighbors_of",
    "path_loss_db",
    "rss_dbm",
    "run_experiment",
    "run_replication",
    "sample_loads",
    "__version__",
]
