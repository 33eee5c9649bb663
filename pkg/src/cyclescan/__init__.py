"""Cycle detection and quantification for strategy-simplex time series.

The package counts signed crossings of population trajectories through a
tripwire (a Poincaré section hanging from an anchor point), aggregates them
into per-block cycle statistics, tests them for significance with a
Wilcoxon signed-rank test, and scans anchors over the whole strategy space
to map where cycling is significant.
"""

from .counting import (
    CORRECTED,
    LEGACY,
    CycleStats,
    TransitCount,
    TreatmentSummary,
    classify_transit,
    classify_transit_legacy,
    count_block,
    summarize_treatment,
    transit_values,
)
from .data import DataSet, load_csv, write_csv
from .errors import (
    CyclescanError,
    DataValidationError,
    DegenerateSample,
    EmptyFile,
    EmptyInput,
    InvalidStep,
    InvalidTripwire,
    MissingColumn,
    OpenTrajectory,
    PointOnCurve,
    RowValidation,
    SimplexViolation,
    SpecOutOfSimplex,
    TooShortTrajectory,
)
from .estimators import TripwireCycleCounter, TripwireScanner, as_trajectories, as_trajectory
from .geometry import (
    SIMPLEX_EPS,
    SimplexPoint,
    Trajectory,
    Transit,
    Tripwire,
    crossing_point,
    on_tripwire,
    snap_to_simplex,
)
from .scanner import GridCell, ScanGrid, find_significant, grid_anchors, scan
from .stats import EXACT, NORMAL_DROP, NORMAL_PRATT, TestResult, wilcoxon_signed_rank
from .synth import (
    CIRCLE,
    DISCRETE_POPULATION,
    KINDS,
    NOISY_LOOP,
    SPIRAL,
    GeneratorSpec,
    generate,
    winding_number,
)

__version__ = "0.1.0"

__all__ = [
    "CORRECTED",
    "LEGACY",
    "CIRCLE",
    "SPIRAL",
    "NOISY_LOOP",
    "DISCRETE_POPULATION",
    "KINDS",
    "EXACT",
    "NORMAL_DROP",
    "NORMAL_PRATT",
    "SIMPLEX_EPS",
    "CycleStats",
    "CyclescanError",
    "DataSet",
    "DataValidationError",
    "DegenerateSample",
    "EmptyFile",
    "EmptyInput",
    "GeneratorSpec",
    "GridCell",
    "InvalidStep",
    "InvalidTripwire",
    "MissingColumn",
    "OpenTrajectory",
    "PointOnCurve",
    "RowValidation",
    "ScanGrid",
    "SimplexPoint",
    "SimplexViolation",
    "SpecOutOfSimplex",
    "TestResult",
    "TooShortTrajectory",
    "Trajectory",
    "Transit",
    "TransitCount",
    "TreatmentSummary",
    "TripwireCycleCounter",
    "TripwireScanner",
    "Tripwire",
    "as_trajectories",
    "as_trajectory",
    "classify_transit",
    "classify_transit_legacy",
    "count_block",
    "crossing_point",
    "find_significant",
    "generate",
    "grid_anchors",
    "load_csv",
    "on_tripwire",
    "scan",
    "snap_to_simplex",
    "summarize_treatment",
    "transit_values",
    "wilcoxon_signed_rank",
    "winding_number",
    "write_csv",
]
