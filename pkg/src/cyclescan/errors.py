"""Exception types shared across the package.

Two broad families matter for scripting: data/geometry validation problems
(CLI exit code 2) and degenerate statistics (CLI exit code 3).
"""


class CyclescanError(Exception):
    """Base class for all package-specific errors."""


class DataValidationError(CyclescanError):
    """Invalid input data, geometry, or parameters (CLI exit code 2)."""


class SimplexViolation(DataValidationError):
    """A coordinate pair lies outside the simplex beyond the ingest tolerance."""


class InvalidTripwire(DataValidationError):
    """Tripwire anchor does not sit strictly inside the simplex."""


class TooShortTrajectory(DataValidationError):
    """A trajectory with fewer than 2 points yields no transits."""


class EmptyInput(DataValidationError):
    """An operation that needs at least one block/value received none."""


class InvalidStep(DataValidationError):
    """Scan grid spacing outside (0, 0.5]."""


class SpecOutOfSimplex(DataValidationError):
    """A generator spec whose orbit would leave the simplex."""


class OpenTrajectory(DataValidationError):
    """Winding number requested for a trajectory that is not closed."""


class PointOnCurve(DataValidationError):
    """Winding number requested for a point lying on the trajectory."""


class EmptyFile(DataValidationError):
    """CSV file contains no data rows."""


class MissingColumn(DataValidationError):
    """CSV header does not match either canonical column set."""


class RowValidation(DataValidationError):
    """A CSV data row failed validation.

    Carries the 1-based row number (header = row 1) and a reason string.
    """

    def __init__(self, row: int, reason: str):
        self.row = row
        self.reason = reason
        super().__init__(f"row {row}: {reason}")


class DegenerateSample(CyclescanError):
    """Statistical test cannot be run (e.g. all values zero; CLI exit code 3)."""
