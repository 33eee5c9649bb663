"""Synthetic trajectory generators and an independent winding-number oracle.

The generators produce trajectories with known cycle structure (closed
polygonal orbits, shrinking spirals, jittered loops, and orbits snapped to
the lattice of a finite population), which the test suite counts against the
tripwire and cross-checks with :func:`winding_number`. Randomness comes from
``numpy.random.default_rng`` (PCG64); an identical spec, seed included,
always yields an identical trajectory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import OpenTrajectory, PointOnCurve, SpecOutOfSimplex
from .geometry import SimplexPoint, Trajectory

CIRCLE = "circle"
SPIRAL = "spiral"
NOISY_LOOP = "noisy-loop"
DISCRETE_POPULATION = "discrete-population"

KINDS = (CIRCLE, SPIRAL, NOISY_LOOP, DISCRETE_POPULATION)

#: A spiral never collapses onto its center; the radius bottoms out here.
SPIRAL_MIN_RADIUS = 1e-6

#: Tolerance for deciding that a query point sits on a trajectory segment.
_ON_CURVE_TOL = 1e-12


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters of one synthetic trajectory.

    ``turns`` is signed: positive winds counter-clockwise. ``noise`` is the
    standard deviation of Gaussian jitter (noisy-loop only) and
    ``population_n`` the population size whose 1/n lattice discrete orbits
    are snapped to (discrete-population only).
    """

    kind: str
    center: SimplexPoint
    radius: float = 0.1
    turns: float = 1.0
    points_per_turn: int = 36
    noise: float = 0.0
    seed: int = 0
    population_n: int = 8


def _check_spec(spec: GeneratorSpec) -> None:
    if spec.kind not in KINDS:
        raise ValueError(f"unknown generator kind {spec.kind!r}")
    if spec.radius <= 0:
        raise ValueError(f"radius must be positive, got {spec.radius}")
    if spec.points_per_turn < 1:
        raise ValueError(f"points_per_turn must be >= 1, got {spec.points_per_turn}")
    if spec.noise < 0:
        raise ValueError(f"noise must be >= 0, got {spec.noise}")
    if spec.kind == DISCRETE_POPULATION and spec.population_n < 1:
        raise ValueError(f"population_n must be >= 1, got {spec.population_n}")
    cx, cy, r = spec.center.x, spec.center.y, spec.radius
    # the orbit's bounding reach must stay inside {x >= 0, y >= 0, x + y <= 1}
    if cx - r < 0 or cy - r < 0 or cx + cy + r * math.sqrt(2.0) > 1.0:
        raise SpecOutOfSimplex(
            f"orbit of radius {r} around ({cx}, {cy}) leaves the simplex"
        )


def _clamp_to_simplex(points: np.ndarray) -> np.ndarray:
    points = np.clip(points, 0.0, 1.0)
    s = points.sum(axis=1)
    over = s > 1.0
    if over.any():
        points[over] /= s[over, None]
    return points


def generate(
    spec: GeneratorSpec, block_id: str = "B1", treatment_id: str = "synthetic"
) -> Trajectory:
    """Produce the trajectory described by ``spec``.

    Circles (and their noisy / population-snapped variants) with an integer
    number of turns are exactly closed: the final point is the first point.
    Raises :class:`SpecOutOfSimplex` if the orbit would leave the simplex.
    """
    _check_spec(spec)
    cx, cy = spec.center.x, spec.center.y

    n_segments = max(1, round(abs(spec.turns) * spec.points_per_turn))
    k = np.arange(n_segments + 1, dtype=float)
    theta = 2.0 * math.pi * spec.turns * k / n_segments

    if spec.kind == SPIRAL:
        radii = spec.radius + (SPIRAL_MIN_RADIUS - spec.radius) * k / n_segments
    else:
        radii = np.full(n_segments + 1, spec.radius)

    points = np.column_stack((cx + radii * np.cos(theta), cy + radii * np.sin(theta)))

    closed = spec.kind != SPIRAL and float(spec.turns) == int(spec.turns)

    if spec.kind == NOISY_LOOP and spec.noise > 0:
        rng = np.random.default_rng(spec.seed)
        points = points + rng.normal(0.0, spec.noise, size=points.shape)
        points = _clamp_to_simplex(points)
    if spec.kind == DISCRETE_POPULATION:
        points = np.round(points * spec.population_n) / spec.population_n
        points = _clamp_to_simplex(points)
    if closed:
        points[-1] = points[0]

    return Trajectory(points, block_id=block_id, treatment_id=treatment_id)


def winding_number(trajectory: Trajectory, point: SimplexPoint) -> int:
    """Signed number of revolutions of a closed trajectory around a point.

    Sums the signed angle each transit subtends at ``point``; for a closed
    polyline the total is an integer multiple of a full turn (within 1e-9),
    and that integer is returned. Counter-clockwise is positive. Raises
    :class:`OpenTrajectory` if the first and last points differ and
    :class:`PointOnCurve` if the point lies on any segment.
    """
    pts = trajectory.points
    if len(pts) < 2:
        raise OpenTrajectory("trajectory has fewer than 2 points")
    if pts[0, 0] != pts[-1, 0] or pts[0, 1] != pts[-1, 1]:
        raise OpenTrajectory("first and last points differ")

    vx = pts[:, 0] - point.x
    vy = pts[:, 1] - point.y

    ax, ay = vx[:-1], vy[:-1]
    bx, by = vx[1:], vy[1:]
    cross = ax * by - ay * bx
    dot = ax * bx + ay * by
    seg_dx = bx - ax
    seg_dy = by - ay
    seg_len2 = seg_dx**2 + seg_dy**2
    # perpendicular offset ~ cross / |segment|; projection must fall inside
    proj = -(ax * seg_dx + ay * seg_dy)
    on_segment = (
        (np.abs(cross) <= _ON_CURVE_TOL)
        & (proj >= -_ON_CURVE_TOL)
        & (proj <= seg_len2 + _ON_CURVE_TOL)
    )
    if bool(np.any(on_segment & (seg_len2 > 0))) or bool(
        np.any((seg_len2 == 0) & (dot <= 0))
    ):
        raise PointOnCurve(f"point ({point.x}, {point.y}) lies on the trajectory")

    total = float(np.arctan2(cross, dot).sum()) / (2.0 * math.pi)
    nearest = round(total)
    if abs(total - nearest) > 1e-9:
        raise PointOnCurve(
            f"angle sum {total} is not integral; point too close to the curve"
        )
    return int(nearest)
