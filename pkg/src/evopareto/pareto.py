"""Dominance relations, nondominated filtering/sorting, crowding, normalization.

Objective vectors are maximized everywhere in this module; quality indicators
negate to minimization at their own boundary (see :mod:`evopareto.indicators`).
Points are plain float arrays: a population is an ``(n, k)`` array with
``k >= 2`` finite objectives per row.  Objective-space duplicates are legal
and are kept by every operation here; deduplication happens only when the
global reference front is assembled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def as_points(points) -> np.ndarray:
    """Validate and return an (n, k) float array of objective vectors."""
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise ValueError("expected a nonempty (n, k) array of objective vectors")
    if arr.shape[1] < 2:
        raise ValueError("objective vectors need at least two components")
    if not np.all(np.isfinite(arr)):
        raise ValueError("objective vectors must be finite")
    return arr


def dominates(u, v) -> bool:
    """True iff u >= v componentwise and u != v (maximization)."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    return bool(np.all(u >= v) and np.any(u > v))


def _dominance_matrix(points: np.ndarray) -> np.ndarray:
    """Boolean (n, n) matrix with [i, j] True iff point i dominates point j."""
    ge = np.all(points[:, None, :] >= points[None, :, :], axis=2)
    gt = np.any(points[:, None, :] > points[None, :, :], axis=2)
    return ge & gt


def nondominated_mask(points) -> np.ndarray:
    """Boolean mask of points not dominated by any other input point."""
    arr = as_points(points)
    return ~_dominance_matrix(arr).any(axis=0)


def nondominated_filter(points) -> np.ndarray:
    """Exactly the input points dominated by nothing, in input order.

    Duplicates of surviving points are all retained: equal vectors do not
    dominate each other.
    """
    arr = as_points(points)
    return arr[nondominated_mask(arr)]


@dataclass(frozen=True)
class RankedPopulation:
    """Result of fast nondominated sorting.

    ``ranks[i] == 0`` marks the nondominated subset; every rank ``r > 0``
    point is dominated by at least one rank ``r - 1`` point.  ``crowding``
    holds per-point crowding distance computed within each rank, ``+inf`` on
    per-objective boundaries.
    """

    points: np.ndarray
    ranks: np.ndarray
    crowding: np.ndarray

    def fronts(self) -> list[np.ndarray]:
        """Index arrays per rank, input order preserved within each rank."""
        n_fronts = int(self.ranks.max()) + 1
        return [np.flatnonzero(self.ranks == r) for r in range(n_fronts)]


def fast_nondominated_sort(points) -> RankedPopulation:
    """Deb's fast nondominated sort with per-front crowding distances.

    Stable: within each rank, points keep their input order.
    """
    arr = as_points(points)
    n = arr.shape[0]
    dom = _dominance_matrix(arr)
    n_dominators = dom.sum(axis=0)

    ranks = np.full(n, -1, dtype=np.int64)
    current = np.flatnonzero(n_dominators == 0)
    rank = 0
    remaining = n_dominators.astype(np.int64)
    while current.size:
        ranks[current] = rank
        # Peel: members of the current front release the points they dominate.
        remaining = remaining - dom[current].sum(axis=0)
        remaining[current] = -1
        current = np.flatnonzero(remaining == 0)
        rank += 1

    crowding = np.empty(n, dtype=np.float64)
    for r in range(rank):
        idx = np.flatnonzero(ranks == r)
        crowding[idx] = crowding_distance(arr[idx])
    return RankedPopulation(points=arr, ranks=ranks, crowding=crowding)


def crowding_distance(front) -> np.ndarray:
    """NSGA-II crowding distance for a mutually nondominated front.

    Points at a per-objective extreme value get ``+inf``; interior points sum
    ``(next - prev) / range`` per objective, where next/prev are the nearest
    neighbour values with ties collapsing to the point's own value, so exact
    duplicates contribute zero gaps.  Objectives with zero range are skipped
    (degenerate fronts occur early in runs).
    """
    arr = as_points(front)
    n, k = arr.shape
    dist = np.zeros(n, dtype=np.float64)
    if n <= 2:
        dist[:] = np.inf
        return dist
    for j in range(k):
        order = np.argsort(arr[:, j], kind="stable")
        values = arr[order, j]
        span = values[-1] - values[0]
        if span == 0.0:
            continue
        tied = (values[1:-1] == values[:-2]) | (values[1:-1] == values[2:])
        gaps = np.where(tied, 0.0, (values[2:] - values[:-2]) / span)
        dist[order[1:-1]] += gaps
        dist[arr[:, j] == values[0]] = np.inf
        dist[arr[:, j] == values[-1]] = np.inf
    return dist


def normalize(points, ideal, nadir) -> np.ndarray:
    """Affine map sending ideal to 0 and nadir to 1 in every coordinate.

    This is the single maximization-to-minimization boundary: in the output
    space smaller is better.  Points outside the ideal-nadir box land outside
    [0, 1]; callers clip where their semantics require it.
    """
    arr = np.asarray(points, dtype=np.float64)
    ideal = np.asarray(ideal, dtype=np.float64)
    nadir = np.asarray(nadir, dtype=np.float64)
    if np.any(ideal == nadir):
        bad = np.flatnonzero(ideal == nadir).tolist()
        raise ValueError(f"ideal equals nadir in objective(s) {bad}; cannot normalize")
    return (arr - ideal) / (nadir - ideal)
