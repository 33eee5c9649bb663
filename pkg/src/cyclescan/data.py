"""CSV ingestion and serialization.

Canonical format, UTF-8 with LF line ends, one observed period per row:

    treatment,block,period,x,y

where x and y are the first two strategy shares, or the count variant

    treatment,block,period,n1,n2,n3

where the shares are inferred per row from the strategy head-counts
(population size = n1 + n2 + n3). Periods must be strictly increasing within
a block; every row is validated against the simplex (tolerance 1e-9) and the
load aborts on the first bad row with its row number.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyFile, MissingColumn, RowValidation, SimplexViolation
from .geometry import Trajectory, snap_to_simplex

FRACTION_HEADER = ("treatment", "block", "period", "x", "y")
COUNT_HEADER = ("treatment", "block", "period", "n1", "n2", "n3")


@dataclass
class DataSet:
    """Blocks grouped by treatment, with their provenance.

    Within a treatment, blocks are ordered by natural sort of the block
    label (B1, B2, ..., B10 style).
    """

    treatments: dict[str, list[Trajectory]] = field(default_factory=dict)
    source: str = ""
    n_rows: int = 0

    def treatment_labels(self) -> list[str]:
        return list(self.treatments)

    def blocks(self, treatment: str) -> list[Trajectory]:
        return self.treatments[treatment]


def _natural_key(label: str) -> tuple:
    parts = re.split(r"(\d+)", label)
    return tuple(int(p) if p.isdigit() else p for p in parts)


def _parse_float(raw: str, row: int, column: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise RowValidation(row, f"column {column!r}: not a number: {raw!r}") from None


def load_csv(path: str) -> DataSet:
    """Load and fully validate a canonical CSV file into a DataSet."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = tuple(h.strip() for h in next(reader))
        except StopIteration:
            raise EmptyFile(f"{path}: file is empty") from None

        if header == FRACTION_HEADER:
            counts = False
        elif header == COUNT_HEADER:
            counts = True
        else:
            raise MissingColumn(
                f"{path}: header {list(header)} matches neither "
                f"{list(FRACTION_HEADER)} nor {list(COUNT_HEADER)}"
            )

        points: dict[tuple[str, str], list[tuple[float, float]]] = {}
        last_period: dict[tuple[str, str], int] = {}
        treatment_order: list[str] = []
        n_rows = 0

        for row_no, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(header):
                raise RowValidation(
                    row_no, f"expected {len(header)} fields, got {len(row)}"
                )
            n_rows += 1
            treatment, block = row[0].strip(), row[1].strip()
            try:
                period = int(row[2])
            except ValueError:
                raise RowValidation(
                    row_no, f"column 'period': not an integer: {row[2]!r}"
                ) from None

            if counts:
                n1 = _parse_float(row[3], row_no, "n1")
                n2 = _parse_float(row[4], row_no, "n2")
                n3 = _parse_float(row[5], row_no, "n3")
                if n1 < 0 or n2 < 0 or n3 < 0:
                    raise RowValidation(row_no, "negative strategy count")
                total = n1 + n2 + n3
                if total <= 0:
                    raise RowValidation(row_no, "population size must be positive")
                x, y = n1 / total, n2 / total
            else:
                x = _parse_float(row[3], row_no, "x")
                y = _parse_float(row[4], row_no, "y")

            try:
                x, y = snap_to_simplex(x, y)
            except SimplexViolation as exc:
                raise RowValidation(row_no, str(exc)) from None

            key = (treatment, block)
            if key in last_period and period <= last_period[key]:
                raise RowValidation(
                    row_no,
                    f"period {period} not strictly increasing within "
                    f"block {block!r} of treatment {treatment!r}",
                )
            last_period[key] = period
            if treatment not in treatment_order:
                treatment_order.append(treatment)
            points.setdefault(key, []).append((x, y))

    if n_rows == 0:
        raise EmptyFile(f"{path}: no data rows")

    treatments: dict[str, list[Trajectory]] = {}
    for treatment in treatment_order:
        labels = sorted(
            (b for (t, b) in points if t == treatment), key=_natural_key
        )
        treatments[treatment] = [
            Trajectory(
                np.array(points[(treatment, b)], dtype=float),
                block_id=b,
                treatment_id=treatment,
            )
            for b in labels
        ]
    return DataSet(treatments=treatments, source=path, n_rows=n_rows)


def write_csv(path: str, trajectories: list[Trajectory]) -> None:
    """Write trajectories in the canonical fraction format.

    Coordinates are serialized with shortest round-trip repr, so a
    write/load cycle reproduces the exact same floats.
    """
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(FRACTION_HEADER) + "\n")
        for traj in trajectories:
            for period in range(len(traj)):
                x = float(traj.points[period, 0])
                y = float(traj.points[period, 1])
                fh.write(
                    f"{traj.treatment_id},{traj.block_id},{period},{x!r},{y!r}\n"
                )
