"""Scikit-learn style wrappers around the counting and scanning cores.

``TripwireCycleCounter`` is a transformer that turns a collection of blocks
(trajectories) into the per-block feature matrix [cct, ct, c, cri], fitting
the treatment-level summary and significance tests as attributes.
``TripwireScanner`` fits the full-grid significance map. Both expose
``get_params``/``set_params`` and clone cleanly, so they compose with
pipelines and model-selection utilities.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .counting import count_block, summarize_treatment
from .errors import DegenerateSample, EmptyInput
from .geometry import Trajectory, Tripwire, snap_to_simplex
from .scanner import find_significant, scan
from .stats import wilcoxon_signed_rank

FEATURE_NAMES = ("cct", "ct", "c", "cri")


def as_trajectory(obj, block_id: str = "", validate: bool = False) -> Trajectory:
    """Coerce a Trajectory, an (n, 2) array, or a point sequence to Trajectory.

    With ``validate=True`` raw coordinates are snapped onto the simplex
    (tolerance 1e-9) and out-of-simplex data raises.
    """
    if isinstance(obj, Trajectory):
        return obj
    points = np.asarray(obj, dtype=float)
    if points.ndim != 2 or points.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) point array, got shape {points.shape}")
    if validate:
        points = np.array(
            [snap_to_simplex(float(x), float(y)) for x, y in points], dtype=float
        )
    return Trajectory(points, block_id=block_id)


def as_trajectories(X, validate: bool = False) -> list[Trajectory]:
    """Coerce a collection of blocks; raises on an empty collection."""
    blocks = [
        as_trajectory(b, block_id=f"B{i + 1}", validate=validate)
        for i, b in enumerate(X)
    ]
    if not blocks:
        raise EmptyInput("need at least one block")
    return blocks


class TripwireCycleCounter(BaseEstimator, TransformerMixin):
    """Per-block cycle statistics against one fixed tripwire anchor.

    Parameters
    ----------
    alpha, beta : float
        Tripwire anchor coordinates inside the simplex.
    rule : "corrected" | "legacy"
        Transit classification rules.
    method : str
        Zero handling for the Wilcoxon tests ("pratt", "drop" or "exact").
    validate : bool
        Snap raw input coordinates onto the simplex before counting.

    Attributes (after ``fit``)
    --------------------------
    tripwire_ : Tripwire
    stats_ : list of CycleStats, one per block
    summary_ : TreatmentSummary
    cri_test_, c_test_ : TestResult or None when the test is degenerate
    """

    def __init__(
        self,
        alpha: float = 0.25,
        beta: float = 0.25,
        rule: str = "corrected",
        method: str = "pratt",
        validate: bool = False,
    ):
        self.alpha = alpha
        self.beta = beta
        self.rule = rule
        self.method = method
        self.validate = validate

    def fit(self, X, y=None):
        blocks = as_trajectories(X, validate=self.validate)
        self.tripwire_ = Tripwire(self.alpha, self.beta)
        self.stats_ = [count_block(b, self.tripwire_, self.rule) for b in blocks]
        self.summary_ = summarize_treatment(self.stats_)
        self.cri_test_ = self._test([s.cri for s in self.stats_])
        self.c_test_ = self._test([s.c for s in self.stats_])
        return self

    def _test(self, values):
        try:
            return wilcoxon_signed_rank(values, self.method)
        except DegenerateSample:
            return None

    def transform(self, X) -> np.ndarray:
        """Feature matrix of shape (n_blocks, 4): columns cct, ct, c, cri."""
        tripwire = Tripwire(self.alpha, self.beta)
        blocks = as_trajectories(X, validate=self.validate)
        rows = [count_block(b, tripwire, self.rule) for b in blocks]
        return np.array([[s.cct, s.ct, s.c, s.cri] for s in rows], dtype=float)

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        return np.asarray(FEATURE_NAMES, dtype=object)


class TripwireScanner(BaseEstimator):
    """Full strategy-space significance map over a grid of anchors.

    Attributes (after ``fit``)
    --------------------------
    grid_ : ScanGrid
    significant_ : list of GridCell with p below ``level`` for ``index``,
        strongest first.
    """

    def __init__(
        self,
        step: float = 0.01,
        rule: str = "corrected",
        level: float = 0.05,
        index: str = "cri",
        method: str = "pratt",
        validate: bool = False,
    ):
        self.step = step
        self.rule = rule
        self.level = level
        self.index = index
        self.method = method
        self.validate = validate

    def fit(self, X, y=None):
        blocks = as_trajectories(X, validate=self.validate)
        self.grid_ = scan(blocks, self.step, self.rule, self.method)
        self.significant_ = find_significant(self.grid_, self.level, self.index)
        return self

    def best_anchor_(self) -> tuple[float, float] | None:
        """Anchor of the strongest significant cell, if any."""
        if not getattr(self, "significant_", None):
            return None
        top = self.significant_[0]
        return (top.alpha, top.beta)
