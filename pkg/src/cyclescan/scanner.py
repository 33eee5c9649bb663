"""Grid scan of tripwire anchors over the full strategy space.

For every interior grid node (i*step, j*step) the scan counts every block
against a tripwire anchored there and tests both block indices (rotation
index and net count) for significance. Cells are evaluated in a fixed anchor
order and keyed by exact grid coordinates, so two scans of the same input
are identical byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .counting import CORRECTED, CycleStats, Rule, count_block
from .errors import DegenerateSample, EmptyInput, InvalidStep
from .geometry import Trajectory, Tripwire
from .stats import wilcoxon_signed_rank

TSV_COLUMNS = ("alpha", "beta", "mean_cri", "p_cri", "c_bar", "p_c", "n_blocks")


@dataclass(frozen=True)
class GridCell:
    """Scan results for one anchor: block averages, p-values, per-block stats."""

    alpha: float
    beta: float
    mean_cri: float
    p_cri: float | None
    c_bar: float
    p_c: float | None
    n_blocks: int
    block_stats: tuple[CycleStats, ...]


@dataclass(frozen=True)
class ScanGrid:
    """All evaluated cells of one scan, keyed by anchor coordinates."""

    step: float
    rule: str
    cells: dict[tuple[float, float], GridCell]

    def anchors(self) -> list[tuple[float, float]]:
        return sorted(self.cells)

    def cell(self, alpha: float, beta: float) -> GridCell:
        return self.cells[(alpha, beta)]

    def to_tsv(self) -> str:
        """Grid as TSV; floats use shortest round-trip repr, absent p is nan."""
        lines = ["\t".join(TSV_COLUMNS)]
        for key in self.anchors():
            c = self.cells[key]
            lines.append(
                "\t".join(
                    (
                        repr(c.alpha),
                        repr(c.beta),
                        repr(c.mean_cri),
                        "nan" if c.p_cri is None else repr(c.p_cri),
                        repr(c.c_bar),
                        "nan" if c.p_c is None else repr(c.p_c),
                        str(c.n_blocks),
                    )
                )
            )
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        """Grid as JSON; includes per-block stats, absent p is null."""
        cells = []
        for key in self.anchors():
            c = self.cells[key]
            cells.append(
                {
                    "alpha": c.alpha,
                    "beta": c.beta,
                    "mean_cri": c.mean_cri,
                    "p_cri": c.p_cri,
                    "c_bar": c.c_bar,
                    "p_c": c.p_c,
                    "n_blocks": c.n_blocks,
                    "blocks": [
                        {"cct": b.cct, "ct": b.ct, "c": b.c, "cri": b.cri}
                        for b in c.block_stats
                    ],
                }
            )
        return json.dumps(
            {"step": self.step, "rule": self.rule, "cells": cells},
            indent=None,
            separators=(",", ":"),
            sort_keys=True,
        )


def grid_anchors(step: float) -> list[tuple[float, float]]:
    """Interior grid nodes {(i*step, j*step) : i, j >= 1, i*step + j*step < 1}.

    Coordinates are integer multiples of the step (no accumulation), rounded
    to 12 decimals so that e.g. 23 * 0.01 keys as the literal 0.23. When the
    step divides 1 evenly the boundary test runs on the integer indices,
    keeping nodes on the diagonal edge reliably excluded.
    """
    if not (0.0 < step <= 0.5):
        raise InvalidStep(f"step must be in (0, 0.5], got {step}")
    inv = 1.0 / step
    index_limit = round(inv) if abs(inv - round(inv)) < 1e-9 else None

    anchors = []
    i = 1
    while i * step < 1.0:
        alpha = round(i * step, 12)
        if alpha >= 1.0:
            break
        j = 1
        while True:
            if index_limit is not None:
                if i + j >= index_limit:
                    break
            elif (i + j) * step >= 1.0:
                break
            beta = round(j * step, 12)
            anchors.append((alpha, beta))
            j += 1
        i += 1
    return anchors


def _p_or_none(values: Sequence[float], method: str) -> float | None:
    try:
        return wilcoxon_signed_rank(values, method).p_two_tailed
    except DegenerateSample:
        return None


def scan(
    blocks: Sequence[Trajectory],
    step: float,
    rule: Rule = CORRECTED,
    method: str = "pratt",
) -> ScanGrid:
    """Evaluate cycle statistics for every interior grid anchor.

    Output is deterministic: cells depend only on the anchor coordinates and
    the blocks, never on evaluation order.
    """
    anchors = grid_anchors(step)
    blocks = list(blocks)
    if not blocks:
        raise EmptyInput("scan needs at least one block")

    cells: dict[tuple[float, float], GridCell] = {}
    for alpha, beta in anchors:
        tripwire = Tripwire(alpha, beta)
        stats = tuple(count_block(b, tripwire, rule) for b in blocks)
        cris = [s.cri for s in stats]
        cs = [s.c for s in stats]
        n = len(stats)
        cells[(alpha, beta)] = GridCell(
            alpha=alpha,
            beta=beta,
            mean_cri=sum(cris) / n,
            p_cri=_p_or_none(cris, method),
            c_bar=sum(cs) / n,
            p_c=_p_or_none(cs, method),
            n_blocks=n,
            block_stats=stats,
        )
    return ScanGrid(step=step, rule=rule, cells=cells)


def find_significant(
    grid: ScanGrid, level: float = 0.05, index: str = "cri"
) -> list[GridCell]:
    """Cells whose p-value for the chosen index ("cri" or "c") beats ``level``.

    Sorted by p ascending, then |mean index| descending, then anchor, so the
    strongest candidates come first and ties break deterministically. Cells
    with no computable p-value never qualify.
    """
    if not (0.0 < level < 1.0):
        raise ValueError(f"level must be in (0, 1), got {level}")
    if index not in ("cri", "c"):
        raise ValueError(f"index must be 'cri' or 'c', got {index!r}")

    def p_of(cell: GridCell) -> float | None:
        return cell.p_cri if index == "cri" else cell.p_c

    def mean_of(cell: GridCell) -> float:
        return cell.mean_cri if index == "cri" else cell.c_bar

    hits = [c for c in grid.cells.values() if p_of(c) is not None and p_of(c) < level]
    hits.sort(key=lambda c: (p_of(c), -abs(mean_of(c)), c.alpha, c.beta))
    return hits
