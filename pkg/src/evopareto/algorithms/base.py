"""Shared optimizer machinery: configuration, variation operators, ask/tell.

Every algorithm runs through the same generation loop: ``ask()`` yields
exactly ``pop_size`` genomes to evaluate (the initial population on the
first call), ``tell()`` receives their evaluations and updates internal
state.  One ask/tell cycle therefore costs exactly ``pop_size`` evaluations
for every algorithm, which is what makes cross-algorithm budgets comparable.
Survivors between generations keep their stored evaluations; nothing is
silently re-evaluated or cached across generations.

All randomness is drawn sequentially from the optimizer's own stream, so a
fixed seed reproduces populations generation by generation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..evaluation import EvaluatedIndividual
from ..rng import RandomStream

ALGORITHM_NAMES = ("GA", "DE", "PSO", "NSGA2", "SPEA2", "SMSEMOA", "NSGA3", "RNSGA2")


@dataclass(frozen=True)
class AlgorithmConfig:
    """Operator settings shared by the whole roster; canonical defaults."""

    name: str
    pop_size: int = 50
    generations: int = 25
    bounds: tuple[float, float] = (-5.0, 5.0)
    eta_c: float = 15.0
    p_crossover: float = 0.9
    eta_m: float = 20.0
    p_m: float | None = None  # None -> 1 / genome_length
    de_f: float = 0.5
    de_cr: float = 0.9
    pso_w: float = 0.7298
    pso_c1: float = 1.49618
    pso_c2: float = 1.49618
    rnsga2_epsilon: float = 0.01
    rnsga2_reference_points: tuple[tuple[float, ...], ...] | None = None

    def __post_init__(self):
        if self.name not in ALGORITHM_NAMES:
            raise ValueError(f"unknown algorithm {self.name!r}; choose from {ALGORITHM_NAMES}")
        if self.pop_size < 2 or self.pop_size % 2 != 0:
            raise ValueError("pop_size must be an even integer >= 2 (pairwise crossover)")
        if self.generations < 1:
            raise ValueError("generations must be >= 1")
        if self.bounds[0] >= self.bounds[1]:
            raise ValueError("lower bound must be below upper bound")


def sbx_crossover(parent_a: np.ndarray, parent_b: np.ndarray, eta_c: float,
                  rng: RandomStream, bounds: tuple[float, float]) -> tuple[np.ndarray, np.ndarray]:
    """Simulated binary crossover, applied per gene with probability 0.5.

    Draw order per gene: one application draw, then (if applied) one spread
    draw u with beta = (2u)^(1/(eta+1)) for u <= 0.5 and
    (1/(2(1-u)))^(1/(eta+1)) otherwise.  Children are clamped to bounds.
    """
    if parent_a.shape != parent_b.shape:
        raise ValueError("parents must have equal genome lengths")
    if eta_c <= 0:
        raise ValueError("eta_c must be positive")
    child_a = parent_a.copy()
    child_b = parent_b.copy()
    for j in range(parent_a.shape[0]):
        if rng.uniform() >= 0.5:
            continue
        u = rng.uniform()
        if u <= 0.5:
            beta = (2.0 * u) ** (1.0 / (eta_c + 1.0))
        else:
            beta = (1.0 / (2.0 * (1.0 - u))) ** (1.0 / (eta_c + 1.0))
        x, y = parent_a[j], parent_b[j]
        child_a[j] = 0.5 * ((1.0 + beta) * x + (1.0 - beta) * y)
        child_b[j] = 0.5 * ((1.0 - beta) * x + (1.0 + beta) * y)
    lo, hi = bounds
    return np.clip(child_a, lo, hi), np.clip(child_b, lo, hi)


def polynomial_mutation(genome: np.ndarray, eta_m: float, p_m: float,
                        rng: RandomStream, bounds: tuple[float, float]) -> np.ndarray:
    """Polynomial mutation with distribution index eta_m.

    Each gene mutates with probability p_m; the perturbation is zero at
    u = 0.5 and respects the gene's distance to each bound.
    """
    if not 0.0 <= p_m <= 1.0:
        raise ValueError("p_m must lie in [0, 1]")
    lo, hi = bounds
    span = hi - lo
    out = genome.copy()
    for j in range(genome.shape[0]):
        if rng.uniform() >= p_m:
            continue
        u = rng.uniform()
        x = out[j]
        if u <= 0.5:
            d = (x - lo) / span
            delta = (2.0 * u + (1.0 - 2.0 * u) * (1.0 - d) ** (eta_m + 1.0)) ** (1.0 / (eta_m + 1.0)) - 1.0
        else:
            d = (hi - x) / span
            delta = 1.0 - (2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d) ** (eta_m + 1.0)) ** (1.0 / (eta_m + 1.0))
        out[j] = x + delta * span
    return np.clip(out, lo, hi)


class Optimizer:
    """Base ask/tell optimizer over flat real genomes."""

    def __init__(self, config: AlgorithmConfig, genome_length: int, rng: RandomStream):
        self.config = config
        self.n_genes = genome_length
        self.rng = rng
        self.generation = -1
        self._population: list[EvaluatedIndividual] = []

    @property
    def name(self) -> str:
        return self.config.name

    @property
    def population(self) -> list[EvaluatedIndividual]:
        """The algorithm's current holdings, one entry per population slot."""
        return list(self._population)

    @property
    def mutation_rate(self) -> float:
        return self.config.p_m if self.config.p_m is not None else 1.0 / self.n_genes

    def ask(self) -> list[np.ndarray]:
        """Exactly pop_size genomes to evaluate next."""
        self.generation += 1
        if self.generation == 0:
            # Initial parameters follow the policy-genome convention: U(-1, 1),
            # well inside the search bounds where tanh layers are responsive.
            return [self.rng.uniform_vector(self.n_genes, -1.0, 1.0)
                    for _ in range(self.config.pop_size)]
        return self._propose()

    def tell(self, evaluated: list[EvaluatedIndividual]) -> None:
        if len(evaluated) != self.config.pop_size:
            raise ValueError("tell() expects exactly pop_size evaluated individuals")
        if self.generation == 0:
            self._install_initial(evaluated)
        else:
            self._absorb(evaluated)

    # Variation helpers shared by the concrete algorithms.

    def _vary_pair(self, parent_a: np.ndarray, parent_b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        if self.rng.uniform() < self.config.p_crossover:
            child_a, child_b = sbx_crossover(parent_a, parent_b, self.config.eta_c,
                                             self.rng, self.config.bounds)
        else:
            child_a, child_b = parent_a.copy(), parent_b.copy()
        child_a = polynomial_mutation(child_a, self.config.eta_m, self.mutation_rate,
                                      self.rng, self.config.bounds)
        child_b = polynomial_mutation(child_b, self.config.eta_m, self.mutation_rate,
                                      self.rng, self.config.bounds)
        return child_a, child_b

    def _propose(self) -> list[np.ndarray]:
        raise NotImplementedError

    def _install_initial(self, evaluated: list[EvaluatedIndividual]) -> None:
        raise NotImplementedError

    def _absorb(self, evaluated: list[EvaluatedIndividual]) -> None:
        raise NotImplementedError
