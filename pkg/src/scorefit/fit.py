"""SRMR discrepancy, its closed form for parallel measurements, and inversions.

The closed form is strictly decreasing in the inter-correlation r for fixed p,
which makes the "required r for a target SRMR" question solvable by bisection.
It also vanishes as p grows, so a minimal scale length always exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, NoSolutionError, ValidationError
from .model import CorrelationMatrix, ParallelSpec

BISECT_TOL = 1e-9
_BISECT_R_WIDTH = 1e-13  # slope is < 0.53, so the residual ends far below BISECT_TOL
_MAX_BISECT_ITER = 200


class ModelKind(Enum):
    FACTOR_SCORE = "factor_score"
    UNIT_WEIGHTED = "unit_weighted"
    REFLECTIVE_FACTOR = "reflective_factor"
    CLOSED_FORM_PARALLEL = "closed_form_parallel"


@dataclass(frozen=True)
class FitReport:
    """SRMR value plus the residual matrix it was computed from."""

    srmr: float
    residuals: np.ndarray
    model_kind: ModelKind | None = None
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        resid = np.array(self.residuals, dtype=float)
        resid.setflags(write=False)
        object.__setattr__(self, "residuals", resid)
        object.__setattr__(self, "warnings", tuple(self.warnings))


def _srmr_from_residuals(resid: np.ndarray) -> float:
    # Diagonal residuals are double-weighted: all p^2 squared entries plus the
    # p squared diagonal entries, averaged over p(p+1) and square-rooted.
    p = resid.shape[0]
    total = float(np.sum(resid * resid) + np.sum(np.diag(resid) ** 2))
    return math.sqrt(total / (p * (p + 1)))


def srmr(
    sigma: CorrelationMatrix,
    sigma_model: CorrelationMatrix,
    model_kind: ModelKind | None = None,
    warnings: Iterable[str] = (),
) -> FitReport:
    """Standardized root mean square residual between two covariance matrices.

    The residual is ``sigma - sigma_model``; swapping the arguments leaves the
    value unchanged.  Identical matrices give exactly zero.
    """
    if sigma.p != sigma_model.p:
        raise DimensionError(
            f"matrix sizes differ: {sigma.p} vs {sigma_model.p}"
        )
    resid = sigma.values - sigma_model.values
    return FitReport(_srmr_from_residuals(resid), resid, model_kind, tuple(warnings))


def srmr_parallel_closed_form(r: float, p: int) -> float:
    """SRMR of the single unit-weighted scale on parallel measurements.

    Closed form in the inter-correlation r and scale length p: the residual has
    p(p-1) off-diagonal entries of size (1-r)/p and a double-weighted diagonal
    of size (1-r)(1-1/p).  Exactly zero at r = 1, and tends to zero as p grows.
    """
    spec = ParallelSpec(r, p)
    off = (1.0 - spec.r) / spec.p
    dia = (1.0 - spec.r) * (1.0 - 1.0 / spec.p)
    return math.sqrt(
        (spec.p - 1) / (spec.p + 1) * off * off + 2.0 / (spec.p + 1) * dia * dia
    )


def solve_r_for_srmr(target_srmr: float, p: int) -> float:
    """Inter-correlation r at which the parallel-scale SRMR hits the target.

    Bisects over r in [0, 1], relying on strict monotone decrease in r.  The
    returned r satisfies ``|closed_form(r, p) - target| < BISECT_TOL``.
    """
    if not (math.isfinite(target_srmr) and target_srmr > 0.0):
        raise ValidationError(f"target SRMR must be positive, got {target_srmr!r}")
    ceiling = srmr_parallel_closed_form(0.0, p)
    if target_srmr > ceiling:
        raise NoSolutionError(
            f"target SRMR {target_srmr:g} exceeds the r=0 value {ceiling:.6f} "
            f"for p={p}; no r in [0, 1] attains it"
        )
    lo, hi = 0.0, 1.0  # value decreases from ceiling at lo to 0 at hi
    for _ in range(_MAX_BISECT_ITER):
        if hi - lo <= _BISECT_R_WIDTH:
            break
        mid = (lo + hi) / 2.0
        if srmr_parallel_closed_form(mid, p) > target_srmr:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def min_p_for_srmr(target_srmr: float, r: float) -> int:
    """Smallest scale length p >= 2 whose parallel-scale SRMR is <= the target.

    Doubling search followed by integer bisection.  A solution always exists
    for r < 1 because the closed form tends to zero in p.
    """
    if not (math.isfinite(target_srmr) and target_srmr > 0.0):
        raise ValidationError(f"target SRMR must be positive, got {target_srmr!r}")
    if not (math.isfinite(r) and 0.0 <= r < 1.0):
        raise ValidationError(f"need r in [0, 1), got {r!r}")
    if srmr_parallel_closed_form(r, 2) <= target_srmr:
        return 2
    # The closed form is monotone decreasing in p for p >= 3 (it rises from
    # p=2 to p=3), so once p=2 fails, bracketing plus bisection is sound.
    hi = 4
    while srmr_parallel_closed_form(r, hi) > target_srmr:
        hi *= 2
    lo = hi // 2  # closed_form(lo) > target
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if srmr_parallel_closed_form(r, mid) <= target_srmr:
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class CurvePoint:
    """Required inter-correlation for one (scale length, SRMR level) pair.

    ``required_r`` is None when no r in [0, 1] attains the level.
    """

    p: int
    srmr_level: float
    required_r: float | None


def required_r_curve(
    srmr_levels: Sequence[float], p_range: Iterable[int]
) -> list[CurvePoint]:
    """Required r for each (p, level) pair, in ascending (p, level) order.

    Unattainable combinations are emitted as data points with
    ``required_r=None`` rather than raised as errors.
    """
    levels = sorted(float(level) for level in srmr_levels)
    for level in levels:
        if not (math.isfinite(level) and level > 0.0):
            raise ValidationError(f"SRMR levels must be positive, got {level!r}")
    points = []
    for p in sorted(set(int(p) for p in p_range)):
        for level in levels:
            try:
                required = solve_r_for_srmr(level, p)
            except NoSolutionError:
                required = None
            points.append(CurvePoint(p, level, required))
    return points
