"""One-sample Wilcoxon signed-rank test of a value list against zero.

Defaults are pinned to the conventions this package standardises on for
block-level cycle indices: zeros are handled by Pratt's method (zeros are
ranked together with everything else, then their ranks are discarded and the
null mean/variance adjusted), the normal approximation carries the
average-rank tie correction sum(t^3 - t)/48, and no continuity correction is
applied. Plain zero-dropping and an exact small-sample enumeration are
available as alternatives for cross-checks.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .errors import DegenerateSample

NORMAL_PRATT = "normal-approx-pratt"
NORMAL_DROP = "normal-approx-drop"
EXACT = "exact"

_METHODS = {
    "pratt": NORMAL_PRATT,
    "drop": NORMAL_DROP,
    "exact": EXACT,
    NORMAL_PRATT: NORMAL_PRATT,
    NORMAL_DROP: NORMAL_DROP,
    EXACT: EXACT,
}

#: Largest sample the exact enumeration accepts.
EXACT_MAX_N = 20


@dataclass(frozen=True)
class TestResult:
    """Outcome of a two-tailed signed-rank test.

    ``w_plus`` is the sum of the ranks of the positive values; ``z`` the
    (tie-corrected) normal score of ``w_plus``; ``n_effective`` the number of
    nonzero values actually contributing. Negating every input leaves
    ``p_two_tailed`` unchanged and flips the sign of ``z``.
    """

    w_plus: float
    z: float
    p_two_tailed: float
    n_effective: int
    method: str


def _average_ranks(magnitudes: Sequence[float]) -> list[float]:
    """Ranks 1..n with tied magnitudes sharing their average rank."""
    n = len(magnitudes)
    order = sorted(range(n), key=lambda i: magnitudes[i])
    ranks = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and magnitudes[order[j + 1]] == magnitudes[order[i]]:
            j += 1
        avg = (i + j + 2) / 2.0  # mean of 1-based positions i+1 .. j+1
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    return ranks


def _normal_two_tailed(z: float) -> float:
    return math.erfc(abs(z) / math.sqrt(2.0))


def _normal_approx(values: list[float], keep_zeros: bool) -> TestResult:
    nonzero = [v for v in values if v != 0.0]
    work = values if keep_zeros else nonzero
    n = len(work)
    n_zero = n - len(nonzero)

    ranks = _average_ranks([abs(v) for v in work])
    w_plus = sum(r for v, r in zip(work, ranks) if v > 0.0)

    mean = (n * (n + 1) - n_zero * (n_zero + 1)) / 4.0
    var = (n * (n + 1) * (2 * n + 1) - n_zero * (n_zero + 1) * (2 * n_zero + 1)) / 24.0
    tie_groups = Counter(r for v, r in zip(work, ranks) if v != 0.0)
    var -= sum(t**3 - t for t in tie_groups.values()) / 48.0
    if var <= 0.0:
        raise DegenerateSample("null variance is zero; sample too degenerate")

    z = (w_plus - mean) / math.sqrt(var)
    return TestResult(
        w_plus=w_plus,
        z=z,
        p_two_tailed=_normal_two_tailed(z),
        n_effective=len(nonzero),
        method=NORMAL_PRATT if keep_zeros else NORMAL_DROP,
    )


def _exact(values: list[float]) -> TestResult:
    """Exact null distribution of W+ by dynamic programming over rank sums.

    Zeros are dropped. Average ranks are multiples of 1/2, so doubling makes
    every rank an integer and the distribution enumerable exactly. The
    reported z is the tie-corrected normal score for reference.
    """
    nonzero = [v for v in values if v != 0.0]
    n = len(nonzero)
    if n > EXACT_MAX_N:
        raise ValueError(f"exact method supports n <= {EXACT_MAX_N}, got {n}")

    ranks = _average_ranks([abs(v) for v in nonzero])
    doubled = [round(2.0 * r) for r in ranks]
    total = sum(doubled)

    ways = [0] * (total + 1)
    ways[0] = 1
    for r in doubled:
        for s in range(total, r - 1, -1):
            ways[s] += ways[s - r]

    w_plus = sum(r for v, r in zip(nonzero, ranks) if v > 0.0)
    w2 = round(2.0 * w_plus)
    n_assignments = 2**n
    p_low = sum(ways[: w2 + 1]) / n_assignments
    p_high = sum(ways[w2:]) / n_assignments
    p = min(1.0, 2.0 * min(p_low, p_high))

    z = _normal_approx(nonzero, keep_zeros=False).z
    return TestResult(w_plus=w_plus, z=z, p_two_tailed=p, n_effective=n, method=EXACT)


def wilcoxon_signed_rank(
    values: Sequence[float], method: str = "pratt"
) -> TestResult:
    """Two-tailed one-sample Wilcoxon signed-rank test against zero.

    ``method`` is one of ``pratt`` (default), ``drop`` or ``exact`` (full
    method names are accepted too). Raises :class:`DegenerateSample` when no
    nonzero value remains.
    """
    try:
        canonical = _METHODS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}") from None

    vals = [float(v) for v in values]
    if not vals:
        raise DegenerateSample("empty sample")
    if all(v == 0.0 for v in vals):
        raise DegenerateSample("all values are zero")

    if canonical == EXACT:
        return _exact(vals)
    return _normal_approx(vals, keep_zeros=(canonical == NORMAL_PRATT))
