"""Scalarized single-objective baselines: GA, DE, PSO.

All three maximize ``scalar_value`` (the equal-weight mean of the objective
components).  Each exposes ``best_scalar``, the algorithm's retained best,
which is non-decreasing over generations on deterministic environments:
GA through 1-elitism, DE through per-slot greedy replacement, PSO through
its personal/global best memory.
"""

from __future__ import annotations

import numpy as np

from ..evaluation import EvaluatedIndividual
from .base import Optimizer


def _argbest(individuals: list[EvaluatedIndividual]) -> int:
    """Index of the highest scalar value; first one on ties."""
    best = 0
    for i in range(1, len(individuals)):
        if individuals[i].scalar_value > individuals[best].scalar_value:
            best = i
    return best


class GA(Optimizer):
    """Generational GA: binary tournament, SBX + polynomial mutation, 1-elitism."""

    def _install_initial(self, evaluated):
        self._population = list(evaluated)

    def _tournament(self) -> np.ndarray:
        i = self.rng.below(self.config.pop_size)
        j = self.rng.below(self.config.pop_size)
        a, b = self._population[i], self._population[j]
        return (a if a.scalar_value >= b.scalar_value else b).genome

    def _propose(self):
        offspring = []
        while len(offspring) < self.config.pop_size:
            child_a, child_b = self._vary_pair(self._tournament(), self._tournament())
            offspring.extend([child_a, child_b])
        return offspring[: self.config.pop_size]

    def _absorb(self, evaluated):
        elite = self._population[_argbest(self._population)]
        newcomers = list(evaluated)
        if elite.scalar_value > newcomers[_argbest(newcomers)].scalar_value:
            worst = min(range(len(newcomers)), key=lambda i: newcomers[i].scalar_value)
            newcomers[worst] = elite
        self._population = newcomers

    @property
    def best_scalar(self) -> float:
        return self._population[_argbest(self._population)].scalar_value


class DE(Optimizer):
    """Differential evolution, rand/1/bin with greedy per-slot selection."""

    def __init__(self, config, genome_length, rng):
        if config.pop_size < 4:
            raise ValueError("DE rand/1 needs pop_size >= 4 for distinct donors")
        super().__init__(config, genome_length, rng)

    def _install_initial(self, evaluated):
        self._population = list(evaluated)

    def _distinct_donors(self, target: int) -> tuple[int, int, int]:
        picked: list[int] = []
        while len(picked) < 3:
            r = self.rng.below(self.config.pop_size)
            if r != target and r not in picked:
                picked.append(r)
        return picked[0], picked[1], picked[2]

    def _propose(self):
        lo, hi = self.config.bounds
        trials = []
        for i in range(self.config.pop_size):
            r1, r2, r3 = self._distinct_donors(i)
            x1 = self._population[r1].genome
            x2 = self._population[r2].genome
            x3 = self._population[r3].genome
            mutant = x1 + self.config.de_f * (x2 - x3)
            target = self._population[i].genome
            j_rand = self.rng.below(self.n_genes)
            trial = target.copy()
            for j in range(self.n_genes):
                if self.rng.uniform() < self.config.de_cr or j == j_rand:
                    trial[j] = mutant[j]
            trials.append(np.clip(trial, lo, hi))
        return trials

    def _absorb(self, evaluated):
        for i, trial in enumerate(evaluated):
            if trial.scalar_value >= self._population[i].scalar_value:
                self._population[i] = trial

    @property
    def best_scalar(self) -> float:
        return self._population[_argbest(self._population)].scalar_value


class PSO(Optimizer):
    """Particle swarm with inertia weight and clamped velocities.

    The reported population is the personal-best set, the solutions the
    swarm actually retains; current particle positions are transient probes
    kept as auxiliaries.
    """

    def _install_initial(self, evaluated):
        self._positions = list(evaluated)
        self._velocities = [np.zeros(self.n_genes) for _ in evaluated]
        self._population = list(evaluated)  # personal bests
        self._gbest = _argbest(self._population)

    def _propose(self):
        cfg = self.config
        lo, hi = cfg.bounds
        v_max = 0.5 * (hi - lo)
        gbest = self._population[self._gbest].genome
        proposals = []
        for i, particle in enumerate(self._positions):
            u1 = self.rng.uniform_vector(self.n_genes)
            u2 = self.rng.uniform_vector(self.n_genes)
            velocity = (cfg.pso_w * self._velocities[i]
                        + cfg.pso_c1 * u1 * (self._population[i].genome - particle.genome)
                        + cfg.pso_c2 * u2 * (gbest - particle.genome))
            velocity = np.clip(velocity, -v_max, v_max)
            self._velocities[i] = velocity
            proposals.append(np.clip(particle.genome + velocity, lo, hi))
        return proposals

    def _absorb(self, evaluated):
        self._positions = list(evaluated)
        for i, particle in enumerate(evaluated):
            if particle.scalar_value > self._population[i].scalar_value:
                self._population[i] = particle
        self._gbest = _argbest(self._population)

    @property
    def best_scalar(self) -> float:
        return self._population[self._gbest].scalar_value
