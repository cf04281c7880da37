"""Brute-force certification of global optima on small instances.

The oracle enumerates candidate inlier subsets directly (never touching the
lifted geometry), fits the fixed-classification subproblem on each, evaluates
the full objective of the fitted model, and returns the minimum.  This is an
independent code path from the hyperplane enumeration and is used to certify
its exactness in the test suite.

For p = 0 a subset only counts when its minimax fit places every subset
point strictly inside the threshold, with a guard band of ``tau`` around the
boundary: subsets whose best possible maximum error lands within ``tau`` of
the threshold are counted separately and also folded into a second,
boundary-inclusive objective, so floating-point ties are surfaced instead of
silently resolved.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .core import (
    LossSpec,
    PointDataset,
    RegressionDataset,
    RegressionModel,
    SubspaceModel,
    loss,
    regression_inliers,
    subspace_inliers,
    subspace_residuals,
)
from .geometry import ON_HYPERPLANE_TOL
from .subsolvers import _lad_fit, _ls_fit, _minimax_fit, _svd_basis

__all__ = ["OracleResult", "oracle_regression", "oracle_subspace"]

MAX_REGRESSION_POINTS = 20
MAX_SUBSPACE_POINTS = 16


@dataclass(frozen=True)
class OracleResult:
    """Certified optimum: objective, inlier set, and a model attaining it.

    ``objective_boundary_inclusive`` additionally admits subsets whose
    feasibility is decided within the floating-point guard band (p = 0
    only); it equals ``objective`` except on boundary-degenerate inputs.
    """

    objective: float
    inliers: np.ndarray
    model: RegressionModel | SubspaceModel
    subsets_evaluated: int
    boundary_subsets: int = 0
    objective_boundary_inclusive: float | None = None


def _subsets_descending(n: int, smallest: int):
    """All index subsets of size >= smallest, largest first, lexicographic within a size."""
    for k in range(n, smallest - 1, -1):
        yield from combinations(range(n), k)


def oracle_regression(data: RegressionDataset, spec: LossSpec) -> OracleResult:
    """Exhaustively certified minimum of the saturated regression loss.

    Enumerates every candidate inlier subset of size >= d, fits the
    subproblem matching the loss (minimax for p = 0, least absolute
    deviations for p = 1, least squares for p = 2), scores the fitted model
    on the full dataset, and keeps the minimum.  Refuses datasets with more
    than 20 points.
    """
    n, d = data.n, data.d
    if n > MAX_REGRESSION_POINTS:
        raise ValueError(
            f"oracle enumeration is limited to {MAX_REGRESSION_POINTS} points, got {n}"
        )
    if spec.p == 0:
        return _oracle_regression_p0(data, spec)
    fit = _lad_fit if spec.p == 1 else lambda x, y: _ls_fit(x, y)[0]
    best: tuple[float, np.ndarray] | None = None
    evaluated = 0
    for subset in _subsets_descending(n, d):
        idx = np.asarray(subset, dtype=np.intp)
        w = fit(data.x[idx], data.y[idx])
        evaluated += 1
        objective = float(np.sum(loss(spec, data.y - data.x @ w)))
        if best is None or objective < best[0]:
            best = (objective, w)
    objective, w = best
    model = RegressionModel(w)
    return OracleResult(
        objective=objective,
        inliers=regression_inliers(data, model, spec),
        model=model,
        subsets_evaluated=evaluated,
    )


def _oracle_regression_p0(data: RegressionDataset, spec: LossSpec) -> OracleResult:
    n, d = data.n, data.d
    eps = spec.epsilon
    tau = ON_HYPERPLANE_TOL * max(1.0, eps)
    best: tuple[float, np.ndarray] | None = None
    best_loose: float | None = None
    boundary = 0
    evaluated = 0
    for k in range(n, d - 1, -1):
        # A level-k subset can only yield a smaller count via a model that
        # covers more than k points, and that larger inlier set was already
        # enumerated (and was minimax-feasible) at its own level.  So once
        # n - k cannot beat the incumbent the remaining levels are dominated.
        if best is not None and n - k >= best[0]:
            break
        for subset in combinations(range(n), k):
            idx = np.asarray(subset, dtype=np.intp)
            w, value = _minimax_fit(data.x[idx], data.y[idx])
            evaluated += 1
            if value >= eps + tau:
                continue
            objective = float(n - np.count_nonzero(np.abs(data.y - data.x @ w) < eps))
            if value < eps - tau:
                if best is None or objective < best[0]:
                    best = (objective, w)
                if best_loose is None or objective < best_loose:
                    best_loose = objective
            else:
                boundary += 1
                if best_loose is None or objective < best_loose:
                    best_loose = objective
    if best is None:
        raise RuntimeError("no feasible inlier subset of size >= d was found")
    if boundary:
        warnings.warn(
            f"{boundary} candidate subsets sit within tolerance of the threshold; "
            "their feasibility is floating-point ambiguous",
            RuntimeWarning,
            stacklevel=2,
        )
    objective, w = best
    model = RegressionModel(w)
    return OracleResult(
        objective=objective,
        inliers=regression_inliers(data, model, spec),
        model=model,
        subsets_evaluated=evaluated,
        boundary_subsets=boundary,
        objective_boundary_inclusive=best_loose,
    )


def oracle_subspace(data: PointDataset, spec: LossSpec) -> OracleResult:
    """Exhaustively certified minimum of the saturated subspace loss.

    Enumerates every candidate inlier subset of size >= the subspace
    dimension and fits each with the squared-residual subspace solver.  For
    p = 0 a subset counts only when the fitted basis keeps every subset
    point strictly inside the threshold.  Supports p in {0, 2}; refuses
    datasets with more than 16 points.
    """
    n, ds = data.n, data.subspace_dim
    if n > MAX_SUBSPACE_POINTS:
        raise ValueError(
            f"oracle enumeration is limited to {MAX_SUBSPACE_POINTS} points, got {n}"
        )
    if spec.p not in (0, 2):
        raise ValueError("subspace oracle supports p in {0, 2} only")
    eps = spec.epsilon
    tau = ON_HYPERPLANE_TOL * max(1.0, eps)
    best: tuple[float, np.ndarray] | None = None
    best_loose: float | None = None
    boundary = 0
    evaluated = 0
    for subset in _subsets_descending(n, ds):
        idx = np.asarray(subset, dtype=np.intp)
        basis, _ = _svd_basis(data.x[idx], ds)
        evaluated += 1
        model = SubspaceModel(basis)
        residuals = subspace_residuals(data, model)
        if spec.p == 0:
            worst = float(residuals[idx].max())
            if worst >= eps + tau:
                continue
            objective = float(n - np.count_nonzero(residuals < eps))
            if worst < eps - tau:
                if best is None or objective < best[0]:
                    best = (objective, basis)
                if best_loose is None or objective < best_loose:
                    best_loose = objective
            else:
                boundary += 1
                if best_loose is None or objective < best_loose:
                    best_loose = objective
        else:
            objective = float(np.sum(loss(spec, residuals)))
            if best is None or objective < best[0]:
                best = (objective, basis)
    if best is None:
        raise RuntimeError("no feasible inlier subset was found")
    if boundary:
        warnings.warn(
            f"{boundary} candidate subsets sit within tolerance of the threshold; "
            "their feasibility is floating-point ambiguous",
            RuntimeWarning,
            stacklevel=2,
        )
    objective, basis = best
    model = SubspaceModel(basis)
    return OracleResult(
        objective=objective,
        inliers=subspace_inliers(data, model, spec),
        model=model,
        subsets_evaluated=evaluated,
        boundary_subsets=boundary,
        objective_boundary_inclusive=best_loose if spec.p == 0 else None,
    )
