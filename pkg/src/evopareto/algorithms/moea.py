"""Pareto-based optimizers: NSGA-II, SPEA2, SMS-EMOA, NSGA-III, R-NSGA-II.

All five maximize the mean-return vector.  Dominance, sorting and crowding
come from :mod:`evopareto.pareto` (maximization sense); SMS-EMOA and the
NSGA-III normalization negate to minimization internally where the standard
formulations require it.
"""

from __future__ import annotations

import math

import numpy as np

from .. import pareto
from ..evaluation import EvaluatedIndividual
from ..indicators import hypervolume_contributions
from .base import Optimizer


def _returns(individuals: list[EvaluatedIndividual]) -> np.ndarray:
    return np.array([ind.mean_return for ind in individuals])


class NSGA2(Optimizer):
    """Elitist nondominated sorting GA with crowded tournament selection."""

    def _install_initial(self, evaluated):
        self._population = list(evaluated)
        ranked = pareto.fast_nondominated_sort(_returns(evaluated))
        self._ranks = ranked.ranks
        self._crowding = ranked.crowding

    def _tournament(self) -> np.ndarray:
        i = self.rng.below(self.config.pop_size)
        j = self.rng.below(self.config.pop_size)
        if (self._ranks[j], -self._crowding[j]) < (self._ranks[i], -self._crowding[i]):
            return self._population[j].genome
        return self._population[i].genome

    def _propose(self):
        offspring = []
        while len(offspring) < self.config.pop_size:
            offspring.extend(self._vary_pair(self._tournament(), self._tournament()))
        return offspring[: self.config.pop_size]

    def _absorb(self, evaluated):
        pool = self._population + list(evaluated)
        ranked = pareto.fast_nondominated_sort(_returns(pool))
        survivors: list[int] = []
        for front in ranked.fronts():
            if len(survivors) + len(front) <= self.config.pop_size:
                survivors.extend(front.tolist())
                continue
            need = self.config.pop_size - len(survivors)
            # Descending crowding; stable to keep input order on ties.
            order = np.argsort(-ranked.crowding[front], kind="stable")
            survivors.extend(front[order[:need]].tolist())
            break
        self._population = [pool[i] for i in survivors]
        self._ranks = ranked.ranks[survivors]
        self._crowding = ranked.crowding[survivors]


class SPEA2(Optimizer):
    """Strength Pareto EA with a fixed-size archive (archive size = pop_size).

    The reported population is the archive after environmental selection,
    which is the solution set SPEA2 maintains; each generation's offspring
    are evaluated and merged into it.
    """

    def _install_initial(self, evaluated):
        self._select_archive(list(evaluated))

    def _select_archive(self, union: list[EvaluatedIndividual]) -> None:
        points = _returns(union)
        fitness = self._fitness(points)
        keep = self.config.pop_size
        nondominated = [i for i in range(len(union)) if fitness[i] < 1.0]
        if len(nondominated) > keep:
            chosen = self._truncate(points, nondominated, keep)
        else:
            chosen = list(nondominated)
            if len(chosen) < keep:
                dominated = [i for i in range(len(union)) if fitness[i] >= 1.0]
                dominated.sort(key=lambda i: (fitness[i], i))
                chosen.extend(dominated[: keep - len(chosen)])
        self._population = [union[i] for i in chosen]
        self._fitness_values = fitness[chosen]

    def _fitness(self, points: np.ndarray) -> np.ndarray:
        dom = pareto._dominance_matrix(points)
        strength = dom.sum(axis=1).astype(np.float64)
        raw = strength @ dom
        diff = points[:, None, :] - points[None, :, :]
        dist = np.sqrt(np.sum(diff * diff, axis=2))
        np.fill_diagonal(dist, np.inf)
        kappa = int(math.isqrt(2 * self.config.pop_size))
        idx = min(kappa - 1, points.shape[0] - 2)
        sigma = np.sort(dist, axis=1)[:, max(idx, 0)]
        density = 1.0 / (sigma + 2.0)
        return raw + density

    @staticmethod
    def _truncate(points: np.ndarray, candidates: list[int], keep: int) -> list[int]:
        """Iteratively drop the member with lexicographically closest neighbours."""
        alive = list(candidates)
        diff = points[:, None, :] - points[None, :, :]
        dist = np.sqrt(np.sum(diff * diff, axis=2))
        while len(alive) > keep:
            victim = min(alive, key=lambda i: sorted(dist[i, j] for j in alive if j != i))
            alive.remove(victim)
        return alive

    def _tournament(self) -> np.ndarray:
        i = self.rng.below(len(self._population))
        j = self.rng.below(len(self._population))
        if (self._fitness_values[j], j) < (self._fitness_values[i], i):
            return self._population[j].genome
        return self._population[i].genome

    def _propose(self):
        offspring = []
        while len(offspring) < self.config.pop_size:
            offspring.extend(self._vary_pair(self._tournament(), self._tournament()))
        return offspring[: self.config.pop_size]

    def _absorb(self, evaluated):
        self._select_archive(self._population + list(evaluated))


def smsemoa_removal_index(points: np.ndarray) -> int:
    """Index to drop from a pool (maximization points): worst-rank member
    with the least exclusive hypervolume contribution.

    The reference point is the pool nadir plus a 10% range margin,
    recomputed for this pool; coordinates with zero range get unit margin so
    remaining coordinates still discriminate.
    """
    ranked = pareto.fast_nondominated_sort(points)
    worst_front = ranked.fronts()[-1]
    if worst_front.shape[0] == 1:
        return int(worst_front[0])
    minimized = -points
    nadir = minimized.max(axis=0)
    span = nadir - minimized.min(axis=0)
    ref = nadir + np.where(span > 0.0, 0.1 * span, 1.0)
    contributions = hypervolume_contributions(minimized[worst_front], ref)
    return int(worst_front[int(np.argmin(contributions))])


class SMSEMOA(Optimizer):
    """Steady-state hypervolume-selection EMOA, batched per generation.

    pop_size offspring are created from the generation-start population and
    inserted one at a time, each insertion followed by one hypervolume-based
    removal, so the evaluation budget matches the generational algorithms.
    Exact hypervolume restricts it to k <= 3.
    """

    def _install_initial(self, evaluated):
        if evaluated[0].mean_return.shape[0] > 3:
            raise ValueError("SMS-EMOA uses exact hypervolume and supports k <= 3 only")
        self._population = list(evaluated)

    def _random_pair(self) -> tuple[np.ndarray, np.ndarray]:
        i = self.rng.below(self.config.pop_size)
        j = self.rng.below(self.config.pop_size)
        while j == i:
            j = self.rng.below(self.config.pop_size)
        return self._population[i].genome, self._population[j].genome

    def _propose(self):
        offspring = []
        for _ in range(self.config.pop_size):
            child, _unused = self._vary_pair(*self._random_pair())
            offspring.append(child)
        return offspring

    def _absorb(self, evaluated):
        for child in evaluated:
            pool = self._population + [child]
            drop = smsemoa_removal_index(_returns(pool))
            del pool[drop]
            self._population = pool


def generate_reference_directions(k: int, partitions: int) -> np.ndarray:
    """Das-Dennis simplex lattice: nonnegative k-vectors, coordinates
    multiples of 1/partitions, summing to one.  C(k+p-1, p) directions."""
    if k < 2 or partitions < 1:
        raise ValueError("need k >= 2 and partitions >= 1")
    rows: list[list[int]] = []

    def compose(prefix: list[int], remaining: int, slots: int) -> None:
        if slots == 1:
            rows.append(prefix + [remaining])
            return
        for used in range(remaining + 1):
            compose(prefix + [used], remaining - used, slots - 1)

    compose([], partitions, k)
    return np.array(rows, dtype=np.float64) / partitions


def minimum_partitions(k: int, pop_size: int) -> int:
    """Smallest p whose Das-Dennis lattice has at least pop_size directions."""
    p = 1
    while math.comb(k + p - 1, p) < pop_size:
        p += 1
    return p


def perpendicular_distances(points: np.ndarray, directions: np.ndarray) -> np.ndarray:
    """(n, d) matrix of distances from each point to each direction ray."""
    unit = directions / np.linalg.norm(directions, axis=1, keepdims=True)
    proj = points @ unit.T
    sq = np.sum(points * points, axis=1, keepdims=True) - proj * proj
    return np.sqrt(np.maximum(sq, 0.0))


def niche_fill(niche_count: np.ndarray, candidate_assoc: np.ndarray,
               candidate_dist: np.ndarray, need: int, rng) -> list[int]:
    """Pick ``need`` candidates, always serving the least-crowded direction.

    Direction ties break randomly (one draw per round from ``rng``); within a
    direction candidates are taken closest-perpendicular first, so when every
    candidate maps to a single direction the selection degenerates to plain
    distance ordering.
    """
    counts = niche_count.copy()
    available = np.ones(counts.shape[0], dtype=bool)
    taken = np.zeros(candidate_assoc.shape[0], dtype=bool)
    picked: list[int] = []
    while len(picked) < need:
        open_dirs = np.flatnonzero(available)
        least = open_dirs[counts[open_dirs] == counts[open_dirs].min()]
        direction = int(least[rng.below(len(least))])
        members = np.flatnonzero((candidate_assoc == direction) & ~taken)
        if members.size == 0:
            available[direction] = False
            continue
        choice = int(members[np.argmin(candidate_dist[members])])
        taken[choice] = True
        picked.append(choice)
        counts[direction] += 1
    return picked


class NSGA3(Optimizer):
    """Reference-direction niching NSGA for the many-front regime."""

    def _install_initial(self, evaluated):
        k = evaluated[0].mean_return.shape[0]
        self._directions = generate_reference_directions(k, minimum_partitions(k, self.config.pop_size))
        self._population = list(evaluated)

    def _random_pair(self) -> tuple[np.ndarray, np.ndarray]:
        i = self.rng.below(self.config.pop_size)
        j = self.rng.below(self.config.pop_size)
        while j == i:
            j = self.rng.below(self.config.pop_size)
        return self._population[i].genome, self._population[j].genome

    def _propose(self):
        offspring = []
        while len(offspring) < self.config.pop_size:
            offspring.extend(self._vary_pair(*self._random_pair()))
        return offspring[: self.config.pop_size]

    def _normalize(self, maximized: np.ndarray) -> np.ndarray:
        """Translate by the pool ideal and scale by achievement-scalarizing
        extreme-point intercepts (minimization space)."""
        t = -maximized
        t = t - t.min(axis=0)
        k = t.shape[1]
        extremes = np.empty(k, dtype=np.int64)
        for j in range(k):
            weights = np.full(k, 1e-6)
            weights[j] = 1.0
            extremes[j] = int(np.argmin(np.max(t / weights, axis=1)))
        intercepts = None
        try:
            plane = np.linalg.solve(t[extremes], np.ones(k))
            if np.all(plane > 1e-12) and np.all(np.isfinite(plane)):
                intercepts = 1.0 / plane
        except np.linalg.LinAlgError:
            intercepts = None
        if intercepts is None or np.any(intercepts <= 1e-12):
            intercepts = t.max(axis=0)
        intercepts = np.where(intercepts > 1e-12, intercepts, 1.0)
        return t / intercepts

    def _absorb(self, evaluated):
        pool = self._population + list(evaluated)
        points = _returns(pool)
        ranked = pareto.fast_nondominated_sort(points)
        selected: list[int] = []
        last_front: np.ndarray | None = None
        for front in ranked.fronts():
            if len(selected) + len(front) <= self.config.pop_size:
                selected.extend(front.tolist())
                continue
            last_front = front
            break
        if last_front is None or len(selected) == self.config.pop_size:
            self._population = [pool[i] for i in selected]
            return
        need = self.config.pop_size - len(selected)
        consider = selected + last_front.tolist()
        normalized = self._normalize(points[consider])
        dists = perpendicular_distances(normalized, self._directions)
        assoc = np.argmin(dists, axis=1)
        assoc_dist = dists[np.arange(len(consider)), assoc]
        n_selected = len(selected)
        niche_count = np.bincount(assoc[:n_selected], minlength=self._directions.shape[0])
        chosen = niche_fill(niche_count, assoc[n_selected:], assoc_dist[n_selected:],
                            need, self.rng)
        picked = [int(last_front[c]) for c in chosen]
        self._population = [pool[i] for i in selected + picked]


def reference_point_ranks(front_points: np.ndarray, pool_min: np.ndarray,
                          pool_max: np.ndarray, reference_points: np.ndarray,
                          epsilon: float) -> np.ndarray:
    """R-NSGA-II preference ranks for one front (lower is better).

    Each member's rank is its best position in any per-reference-point
    ordering by normalized Euclidean distance; epsilon-clearing then walks
    members best-first and demotes any unprocessed member closer than
    epsilon (normalized) to a kept one.
    """
    span = pool_max - pool_min
    safe = np.where(span > 0.0, span, 1.0)
    normalized = np.where(span > 0.0, (front_points - pool_min) / safe, 0.0)
    m = front_points.shape[0]
    best_position = np.full(m, np.inf)
    for ref in reference_points:
        d = np.linalg.norm(normalized - ref, axis=1)
        order = np.argsort(d, kind="stable")
        position = np.empty(m)
        position[order] = np.arange(1, m + 1)
        best_position = np.minimum(best_position, position)
    adjusted = best_position.copy()
    processed = np.zeros(m, dtype=bool)
    for idx in sorted(range(m), key=lambda i: (best_position[i], i)):
        if processed[idx]:
            continue
        processed[idx] = True
        near = np.linalg.norm(normalized - normalized[idx], axis=1) < epsilon
        for other in np.flatnonzero(near):
            if not processed[other]:
                processed[other] = True
                adjusted[other] = best_position[other] + m
    return adjusted


class RNSGA2(Optimizer):
    """NSGA-II variant whose diversity pressure comes from reference points.

    Crowding is replaced by the reference-point rank (plus epsilon-clearing).
    Default reference points are the unit-objective ideal corners of the
    normalized space; user-supplied points are given in raw objective space
    and normalized per pool.
    """

    def _install_initial(self, evaluated):
        if self.config.rnsga2_epsilon <= 0:
            raise ValueError("rnsga2_epsilon must be positive")
        self._population = list(evaluated)
        points = _returns(evaluated)
        ranked = pareto.fast_nondominated_sort(points)
        self._ranks = ranked.ranks
        self._pref = self._frontwise_preference(points, ranked)

    def _reference_points(self, k: int, pool_min: np.ndarray, pool_max: np.ndarray) -> np.ndarray:
        raw = self.config.rnsga2_reference_points
        if raw is None:
            return np.eye(k)
        refs = np.array(raw, dtype=np.float64)
        span = pool_max - pool_min
        safe = np.where(span > 0.0, span, 1.0)
        return np.where(span > 0.0, (refs - pool_min) / safe, 0.0)

    def _frontwise_preference(self, points: np.ndarray, ranked: pareto.RankedPopulation) -> np.ndarray:
        pool_min = points.min(axis=0)
        pool_max = points.max(axis=0)
        refs = self._reference_points(points.shape[1], pool_min, pool_max)
        pref = np.empty(points.shape[0])
        for front in ranked.fronts():
            pref[front] = reference_point_ranks(points[front], pool_min, pool_max,
                                                refs, self.config.rnsga2_epsilon)
        return pref

    def _tournament(self) -> np.ndarray:
        i = self.rng.below(self.config.pop_size)
        j = self.rng.below(self.config.pop_size)
        if (self._ranks[j], self._pref[j]) < (self._ranks[i], self._pref[i]):
            return self._population[j].genome
        return self._population[i].genome

    def _propose(self):
        offspring = []
        while len(offspring) < self.config.pop_size:
            offspring.extend(self._vary_pair(self._tournament(), self._tournament()))
        return offspring[: self.config.pop_size]

    def _absorb(self, evaluated):
        pool = self._population + list(evaluated)
        points = _returns(pool)
        ranked = pareto.fast_nondominated_sort(points)
        pref = self._frontwise_preference(points, ranked)
        survivors: list[int] = []
        for front in ranked.fronts():
            if len(survivors) + len(front) <= self.config.pop_size:
                survivors.extend(front.tolist())
                continue
            need = self.config.pop_size - len(survivors)
            order = sorted(range(front.shape[0]), key=lambda i: (pref[front[i]], i))
            survivors.extend(front[order[:need]].tolist())
            break
        self._population = [pool[i] for i in survivors]
        new_points = points[survivors]
        new_ranked = pareto.fast_nondominated_sort(new_points)
        self._ranks = new_ranked.ranks
        self._pref = self._frontwise_preference(new_points, new_ranked)
