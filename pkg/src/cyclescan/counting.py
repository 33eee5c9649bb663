"""Transit classification and per-block cycle accumulation.

Each directed transit contributes a signed count against the tripwire:

* +1 / -1 when the transit strictly straddles the anchor's vertical line and
  the crossing point lies on the counting section (full crossing);
* +1/2 / -1/2 when exactly one endpoint sits on the line x = alpha and the
  crossing point lies on the section (the transit starts or ends mid-cross);
* 0 otherwise, including vertical transits.

Counter-clockwise traffic counts positive. The legacy classifier reproduces
a historical buggy variant for comparison: it tests the segment's midpoint
height instead of the interpolated crossing ordinate, and drops the
half-count rule entirely, so edge geometry silently scores zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

import numpy as np

from .errors import EmptyInput, TooShortTrajectory
from .geometry import Trajectory, Transit, Tripwire, crossing_point, on_tripwire

Rule = Literal["corrected", "legacy"]

CORRECTED: Rule = "corrected"
LEGACY: Rule = "legacy"

COND_NONE = "cond1"
COND_FULL = "cond2"
COND_EDGE = "cond3"


@dataclass(frozen=True)
class TransitCount:
    """Signed contribution of one transit and the rule branch that fired."""

    value: float  # one of -1.0, -0.5, 0.0, +0.5, +1.0
    condition: str  # COND_NONE | COND_FULL | COND_EDGE


@dataclass(frozen=True)
class CycleStats:
    """Accumulated counts for one block.

    ``cct`` sums the positive contributions (counter-clockwise), ``ct`` the
    magnitudes of the negative ones (clockwise); both are integer multiples
    of 1/2. ``c`` is the net count cct - ct, and ``cri`` the rotation index
    (cct - ct) / (cct + ct), defined as 0 when there are no crossings at all.
    """

    cct: float
    ct: float
    c: float
    cri: float


@dataclass(frozen=True)
class TreatmentSummary:
    """Block-averaged statistics for one treatment.

    ``mean_cri`` averages the per-block rotation indices; it is NOT the index
    of the pooled counts, and the two differ whenever blocks are unbalanced.
    """

    mean_cct: float
    mean_ct: float
    mean_cri: float
    c_values: tuple[float, ...]
    c_bar: float
    n_blocks: int


def classify_transit(transit: Transit, tripwire: Tripwire) -> TransitCount:
    """Classify one transit with the corrected rules."""
    x1 = transit.from_point.x
    x2 = transit.to_point.x
    if x1 == x2:
        return TransitCount(0.0, COND_NONE)
    cross = crossing_point(transit, tripwire)
    if cross is None or not on_tripwire(cross, tripwire):
        return TransitCount(0.0, COND_NONE)
    alpha = tripwire.alpha
    if x1 < alpha < x2:
        return TransitCount(1.0, COND_FULL)
    if x2 < alpha < x1:
        return TransitCount(-1.0, COND_FULL)
    if x1 == alpha or x2 == alpha:
        return TransitCount(0.5 if x2 > x1 else -0.5, COND_EDGE)
    # crossing point on the section line but outside the segment's x-range
    return TransitCount(0.0, COND_NONE)


def classify_transit_legacy(transit: Transit, tripwire: Tripwire) -> TransitCount:
    """Classify one transit with the legacy (buggy) rules.

    Only strict straddles can score, and the on-section test uses the mean of
    the endpoint heights rather than the interpolated crossing ordinate.
    Transits with an endpoint on the line x = alpha always score zero.
    """
    x1, y1 = transit.from_point.x, transit.from_point.y
    x2, y2 = transit.to_point.x, transit.to_point.y
    if (y1 + y2) / 2.0 < tripwire.beta:
        if x1 < tripwire.alpha < x2:
            return TransitCount(1.0, COND_FULL)
        if x2 < tripwire.alpha < x1:
            return TransitCount(-1.0, COND_FULL)
    return TransitCount(0.0, COND_NONE)


def transit_values(
    xs: np.ndarray, ys: np.ndarray, tripwire: Tripwire, rule: Rule = CORRECTED
) -> np.ndarray:
    """Vectorized per-transit contributions for a whole point sequence.

    ``xs``/``ys`` are the trajectory coordinate arrays; the result has one
    entry per consecutive transit and matches :func:`classify_transit`
    (or the legacy variant) exactly, comparison for comparison.
    """
    x1, x2 = xs[:-1], xs[1:]
    y1, y2 = ys[:-1], ys[1:]
    alpha, beta = tripwire.alpha, tripwire.beta
    values = np.zeros(len(x1))

    if rule == LEGACY:
        below = (y1 + y2) / 2.0 < beta
        values[below & (x1 < alpha) & (alpha < x2)] = 1.0
        values[below & (x2 < alpha) & (alpha < x1)] = -1.0
        return values
    if rule != CORRECTED:
        raise ValueError(f"unknown rule {rule!r}")

    moving = x1 != x2
    dx = np.where(moving, x2 - x1, 1.0)
    cross_y = y1 + (y2 - y1) * (alpha - x1) / dx
    # an endpoint on the section line is its own crossing point, exactly
    cross_y = np.where(x1 == alpha, y1, cross_y)
    cross_y = np.where(x2 == alpha, y2, cross_y)
    on = moving & (cross_y >= 0.0) & (cross_y < beta)

    values[on & (x1 < alpha) & (alpha < x2)] = 1.0
    values[on & (x2 < alpha) & (alpha < x1)] = -1.0
    edge = on & ((x1 == alpha) | (x2 == alpha))
    values[edge & (x2 > x1)] = 0.5
    values[edge & (x2 < x1)] = -0.5
    return values


def count_block(
    trajectory: Trajectory, tripwire: Tripwire, rule: Rule = CORRECTED
) -> CycleStats:
    """Accumulate all transits of one block into its cycle statistics.

    Single pass over consecutive transits. All contributions are multiples
    of 1/2, so the sums are exact in floating point.
    """
    if len(trajectory) < 2:
        raise TooShortTrajectory(
            f"block {trajectory.block_id!r} has {len(trajectory)} point(s); need >= 2"
        )
    values = transit_values(trajectory.xs, trajectory.ys, tripwire, rule)
    cct = float(values[values > 0].sum())
    ct = float(np.abs(values[values < 0]).sum())
    total = cct + ct
    cri = (cct - ct) / total if total > 0 else 0.0
    return CycleStats(cct=cct, ct=ct, c=cct - ct, cri=cri)


def summarize_treatment(blocks: Sequence[CycleStats] | Iterable[CycleStats]) -> TreatmentSummary:
    """Average per-block statistics across a treatment's blocks."""
    blocks = list(blocks)
    if not blocks:
        raise EmptyInput("treatment has no blocks")
    n = len(blocks)
    return TreatmentSummary(
        mean_cct=sum(b.cct for b in blocks) / n,
        mean_ct=sum(b.ct for b in blocks) / n,
        mean_cri=sum(b.cri for b in blocks) / n,
        c_values=tuple(b.c for b in blocks),
        c_bar=sum(b.c for b in blocks) / n,
        n_blocks=n,
    )
