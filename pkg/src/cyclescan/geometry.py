"""Geometric primitives on the projected 2-simplex.

A population state over three strategies is stored as its first two shares
(x, y); the third share is implicit (1 - x - y). The tripwire is a vertical
counting section hanging from an anchor point down to the simplex edge, and
the one nontrivial geometric operation is computing where a directed transit
between two consecutive states crosses the anchor's vertical line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InvalidTripwire, SimplexViolation

#: Ingest tolerance: coordinates within this distance of the simplex are
#: snapped onto it, anything further out is rejected.
SIMPLEX_EPS = 1e-9


@dataclass(frozen=True)
class SimplexPoint:
    """A mixed strategy projected to its first two coordinates.

    Instances are plain value objects and are not validated on construction:
    crossing points returned by :func:`crossing_point` may legitimately carry
    an ordinate outside [0, 1] (callers filter them with :func:`on_tripwire`).
    Validate external data with :func:`snap_to_simplex` instead.
    """

    x: float
    y: float


@dataclass(frozen=True)
class Transit:
    """Directed segment from the state at period ``t`` to the state at ``t + 1``."""

    from_point: SimplexPoint
    to_point: SimplexPoint
    t: int = 0

    def reversed(self) -> "Transit":
        return Transit(self.to_point, self.from_point, self.t)


@dataclass(frozen=True)
class Tripwire:
    """The counting section: a vertical segment below the anchor (alpha, beta).

    The segment runs from the anchor, which is excluded, down to its foot
    (alpha, 0) on the simplex edge, which is included. The anchor must sit
    strictly inside the simplex, otherwise the section degenerates.
    """

    alpha: float
    beta: float

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0):
            raise InvalidTripwire(f"alpha must be in (0, 1), got {self.alpha}")
        if not (self.beta > 0.0):
            raise InvalidTripwire(f"beta must be positive, got {self.beta}")
        if self.alpha + self.beta > 1.0:
            raise InvalidTripwire(
                f"anchor ({self.alpha}, {self.beta}) lies outside the simplex"
            )

    @property
    def anchor(self) -> SimplexPoint:
        return SimplexPoint(self.alpha, self.beta)

    @property
    def foot(self) -> SimplexPoint:
        return SimplexPoint(self.alpha, 0.0)


@dataclass(frozen=True)
class Trajectory:
    """An ordered time series of simplex points for one experimental block.

    Points are stored as a read-only float array of shape (n, 2). Transits
    are formed between consecutive points only; at least two points are
    needed before any transit exists.
    """

    points: np.ndarray
    block_id: str = ""
    treatment_id: str = ""

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError(f"points must have shape (n, 2), got {pts.shape}")
        pts = pts.copy()
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_points(
        cls,
        points: Iterable[SimplexPoint | Sequence[float]],
        block_id: str = "",
        treatment_id: str = "",
    ) -> "Trajectory":
        rows = [
            (p.x, p.y) if isinstance(p, SimplexPoint) else (float(p[0]), float(p[1]))
            for p in points
        ]
        return cls(np.array(rows, dtype=float), block_id, treatment_id)

    def __len__(self) -> int:
        return len(self.points)

    def point(self, i: int) -> SimplexPoint:
        return SimplexPoint(float(self.points[i, 0]), float(self.points[i, 1]))

    def transits(self) -> Iterator[Transit]:
        for t in range(len(self.points) - 1):
            yield Transit(self.point(t), self.point(t + 1), t)

    @property
    def xs(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def ys(self) -> np.ndarray:
        return self.points[:, 1]


def snap_to_simplex(x: float, y: float, eps: float = SIMPLEX_EPS) -> tuple[float, float]:
    """Validate a coordinate pair against the simplex and clamp it onto it.

    Values within ``eps`` of the simplex (negatives from rounding, share sums
    marginally above one) are snapped exactly onto it; anything further out
    raises :class:`SimplexViolation`.
    """
    if not (math.isfinite(x) and math.isfinite(y)):
        raise SimplexViolation(f"non-finite coordinates ({x}, {y})")
    if x < -eps or y < -eps or x > 1.0 + eps or y > 1.0 + eps or x + y > 1.0 + eps:
        raise SimplexViolation(
            f"({x}, {y}) outside the simplex beyond tolerance {eps}"
        )
    x = min(max(x, 0.0), 1.0)
    y = min(max(y, 0.0), 1.0)
    s = x + y
    if s > 1.0:
        x /= s
        y /= s
    return x, y


def crossing_point(transit: Transit, tripwire: Tripwire) -> SimplexPoint | None:
    """Where the transit's line crosses the vertical line through the anchor.

    Returns the crossing point regardless of whether it lies on the tripwire
    segment itself; its ordinate may fall outside [0, 1]. A transit with no
    horizontal motion has no unique crossing and yields ``None``. When an
    endpoint sits exactly on the line x = alpha the interpolation reduces to
    that endpoint, and its ordinate is returned exactly.
    """
    x1, y1 = transit.from_point.x, transit.from_point.y
    x2, y2 = transit.to_point.x, transit.to_point.y
    alpha = tripwire.alpha
    if x1 == x2:
        return None
    if x1 == alpha:
        return SimplexPoint(alpha, y1)
    if x2 == alpha:
        return SimplexPoint(alpha, y2)
    return SimplexPoint(alpha, y1 + (y2 - y1) * (alpha - x1) / (x2 - x1))


def on_tripwire(point: SimplexPoint, tripwire: Tripwire) -> bool:
    """Whether a crossing point lies on the counting section.

    The section is half-open: the foot (alpha, 0) is included, the anchor
    (alpha, beta) is excluded, so the test is 0 <= y < beta with exact
    comparisons. Only points whose abscissa equals the anchor's should be
    tested; the abscissa itself is not re-checked here.
    """
    return 0.0 <= point.y < tripwire.beta
