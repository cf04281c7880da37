"""Lifted classification sets and hyperplanes through point subsets.

Both estimation problems reduce to classifying an auxiliary point set with
hyperplanes through the origin:

* regression lifts each pair ``(x_i, y_i)`` to two points
  ``[y_i - eps, -x_i]`` and ``[-y_i - eps, x_i]`` in ``R^(d+1)``; a point is
  an inlier of ``w`` exactly when both of its lifted copies fall strictly on
  the negative side of the hyperplane with normal ``[1, w]``;
* subspace estimation lifts each point to ``[-eps^2, nu(x_i)]`` in
  ``R^(D+1)`` where ``nu`` is the degree-2 monomial embedding and
  ``D = d(d+1)/2``; inliers of a basis ``B`` are the points on the negative
  side of a single classifier normal derived from ``B``.

Candidate hyperplanes are generated from seeds of ``m - 1`` lifted points
(``m`` the lifted dimension): the unit normal spans the null space of the
seed rows.  Points whose margin is within ``ON_HYPERPLANE_TOL`` (relative to
``max(1, ||z||)``) are classified 0 and must be resolved by the caller.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal

import numpy as np

from .core import LossSpec, PointDataset, RegressionDataset, SubspaceModel

__all__ = [
    "ON_HYPERPLANE_TOL",
    "LiftedSet",
    "Hyperplane",
    "lift_regression",
    "lift_subspace",
    "veronese",
    "selection_vector",
    "subspace_normal",
    "signed_values",
    "hyperplane_through",
    "classify",
    "inliers_from_signs",
]

# Relative tolerance deciding that a lifted point lies on a hyperplane.
# Seeds are solved to machine precision, so this absorbs null-space round-off
# without absorbing genuine near-inliers at realistic epsilon.
ON_HYPERPLANE_TOL = 1e-9

_EPS = np.finfo(float).eps

Kind = Literal["regression", "subspace"]


@dataclass
class LiftedSet:
    """Classification point set derived from a dataset.

    ``z`` holds the lifted points as rows.  For the regression kind there are
    ``2 * n_points`` rows (the two copies of point ``i`` are rows ``i`` and
    ``i + n_points``); for the subspace kind there are ``n_points`` rows.
    """

    kind: Kind
    z: np.ndarray
    n_points: int
    epsilon: float
    scales: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.z = np.asarray(self.z, dtype=float)
        # Margin tolerances are scaled per point so huge lifted coordinates
        # (e.g. gross outliers) do not defeat the on-hyperplane test.
        self.scales = np.maximum(1.0, np.linalg.norm(self.z, axis=1))

    @property
    def size(self) -> int:
        return self.z.shape[0]

    @property
    def dim(self) -> int:
        return self.z.shape[1]

    def link(self, i: int) -> int:
        """Original data index of lifted row ``i``."""
        if self.kind == "regression" and i >= self.n_points:
            return i - self.n_points
        return i


def lift_regression(data: RegressionDataset, spec: LossSpec) -> LiftedSet:
    """Build the 2n-point lifted set for regression."""
    eps = spec.epsilon
    top = np.column_stack([data.y - eps, -data.x])
    bottom = np.column_stack([-data.y - eps, data.x])
    return LiftedSet("regression", np.vstack([top, bottom]), data.n, eps)


@lru_cache(maxsize=None)
def _monomial_pairs(d: int) -> tuple[np.ndarray, np.ndarray]:
    """Index pairs (k, l), k <= l, in the fixed degree-2 monomial order."""
    first = np.array([k for k in range(d) for _ in range(k, d)])
    second = np.array([l for k in range(d) for l in range(k, d)])
    return first, second


def veronese(x: np.ndarray) -> np.ndarray:
    """Degree-2 monomial embedding of a vector.

    Components are ordered ``x1^2, x1*x2, ..., x1*xd, x2^2, x2*x3, ...,
    xd^2`` and the output has length ``d(d+1)/2``.
    """
    x = np.asarray(x, dtype=float).ravel()
    first, second = _monomial_pairs(x.shape[0])
    return x[first] * x[second]


def _veronese_rows(x: np.ndarray) -> np.ndarray:
    first, second = _monomial_pairs(x.shape[1])
    return x[:, first] * x[:, second]


def selection_vector(d: int) -> np.ndarray:
    """Binary vector picking the squared monomials out of the embedding.

    Satisfies ``veronese(x) @ selection_vector(d) == ||x||^2`` for every x.
    Ones sit at positions ``l_1 = 1`` and ``l_k = l_(k-1) + d - k + 2``
    (1-based) of the monomial order.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    s = np.zeros(d * (d + 1) // 2)
    pos = 1
    for k in range(1, d + 1):
        s[pos - 1] = 1.0
        pos += d - k + 1  # step from l_k to l_(k+1)
    return s


def lift_subspace(data: PointDataset, spec: LossSpec) -> LiftedSet:
    """Build the n-point lifted set for subspace estimation."""
    eps = spec.epsilon
    v = _veronese_rows(data.x)
    z = np.column_stack([np.full(data.n, -eps * eps), v])
    return LiftedSet("subspace", z, data.n, eps)


def subspace_normal(model: SubspaceModel) -> np.ndarray:
    """Classifier normal in the lifted space for a given orthonormal basis.

    The tail encodes the quadratic form ``x^T (I - B B^T) x`` over the plain
    monomial coordinates, so cross-monomial coefficients carry a factor 2.
    With ``h`` the returned vector and ``z`` a lifted point,
    ``h @ z = ||(I - B B^T) x||^2 - eps^2``, hence strict inliers are exactly
    the points with ``h @ z < 0``.
    """
    b = model.basis
    d = b.shape[0]
    first, second = _monomial_pairs(d)
    m = b @ b.T
    coeffs = np.where(first == second, 1.0, 2.0) * m[first, second]
    return np.concatenate([[1.0], selection_vector(d) - coeffs])


@dataclass
class Hyperplane:
    """Unit normal through the origin, with bookkeeping about its seed.

    ``onset`` lists the lifted indices whose margin is within tolerance of
    zero (this always includes the seed, and with non-generic data may
    include more points).
    """

    normal: np.ndarray
    onset: np.ndarray
    seed: tuple[int, ...]


def _fix_sign(h: np.ndarray) -> np.ndarray:
    """Make the first non-negligible coordinate positive, in place."""
    thresh = 1e-12 * np.max(np.abs(h))
    lead = h[int(np.argmax(np.abs(h) > thresh))]
    if lead < 0:
        np.negative(h, out=h)
    return h


def _nullspace_direction(a: np.ndarray) -> np.ndarray | None:
    """Unit vector orthogonal to the rows of ``a``, or None if rank-deficient.

    ``a`` has shape (m-1, m); a null space of dimension > 1 means the seed
    cannot pin down a single hyperplane and is reported as degenerate.  The
    two-row case in R^3 (the hot path of planar regression) uses the cross
    product; everything else goes through the SVD.
    """
    if a.shape == (2, 3):
        h = np.cross(a[0], a[1])
        norm = np.linalg.norm(h)
        if norm <= 3.0 * _EPS * np.linalg.norm(a[0]) * np.linalg.norm(a[1]):
            return None
        return _fix_sign(h / norm)
    _, s, vh = np.linalg.svd(a)
    if s[0] <= 0.0 or s[-1] <= max(a.shape) * _EPS * s[0]:
        return None
    return _fix_sign(vh[-1].copy())


def signed_values(zset: LiftedSet, normal: np.ndarray) -> np.ndarray:
    """Margins ``normal @ z_i`` for every lifted point.

    For the regression kind the second half is obtained from the identity
    ``normal @ z_(i+n) = -normal @ z_i - 2 * eps * normal[0]`` instead of a
    second pass over the data.
    """
    normal = np.asarray(normal, dtype=float)
    if zset.kind == "regression":
        g = zset.z[: zset.n_points] @ normal
        return np.concatenate([g, -g - 2.0 * zset.epsilon * normal[0]])
    return zset.z @ normal


def hyperplane_through(zset: LiftedSet, subset) -> Hyperplane | None:
    """Hyperplane through the origin and the given seed of lifted points.

    The seed must contain exactly ``dim - 1`` distinct lifted indices.
    Returns None when the seed rows are rank-deficient (the caller skips and
    counts such seeds).  For the regression kind the normal is flipped so its
    first coordinate is nonnegative; for the subspace kind both orientations
    are explored downstream, so the deterministic sign fix is kept as is.
    """
    idx = tuple(int(i) for i in subset)
    if len(idx) != zset.dim - 1 or len(set(idx)) != len(idx):
        raise ValueError(f"seed must hold {zset.dim - 1} distinct indices, got {subset!r}")
    h = _nullspace_direction(zset.z[list(idx)])
    if h is None:
        return None
    if zset.kind == "regression" and h[0] < 0:
        np.negative(h, out=h)
    vals = signed_values(zset, h)
    onset = np.flatnonzero(np.abs(vals) <= ON_HYPERPLANE_TOL * zset.scales)
    return Hyperplane(h, onset, idx)


def classify(zset: LiftedSet, normal: np.ndarray) -> np.ndarray:
    """Sign vector in {-1, 0, +1} of every lifted point against a hyperplane.

    A point is classified 0 exactly when its margin is within
    ``ON_HYPERPLANE_TOL * max(1, ||z||)`` of zero; the normal is normalized
    internally so the tolerance is meaningful for any nonzero input.
    """
    normal = np.asarray(normal, dtype=float)
    norm = np.linalg.norm(normal)
    if norm == 0.0:
        raise ValueError("normal must be nonzero")
    vals = signed_values(zset, normal / norm)
    out = np.where(vals > 0, 1, -1).astype(np.int8)
    out[np.abs(vals) <= ON_HYPERPLANE_TOL * zset.scales] = 0
    return out


def inliers_from_signs(
    q: np.ndarray, kind: Kind, orientation: int | None = None
) -> np.ndarray:
    """Inlier indices encoded by a fully resolved sign vector.

    Regression: indices ``i`` with ``q[i] == q[i + n] == -1``.  Subspace:
    indices with ``q[i] == orientation`` for the caller-supplied orientation.
    Zeros are a contract violation; they must be resolved by the completion
    loop before calling this.
    """
    q = np.asarray(q)
    if np.any(q == 0):
        raise ValueError("sign vector contains unresolved zeros")
    if kind == "regression":
        if q.shape[0] % 2:
            raise ValueError("regression sign vector must have even length")
        n = q.shape[0] // 2
        return np.flatnonzero((q[:n] == -1) & (q[n:] == -1))
    if orientation not in (-1, 1):
        raise ValueError("subspace kind needs orientation -1 or +1")
    return np.flatnonzero(q == orientation)
