"""Turning genomes into objective values.

A rollout simulates one full-horizon episode and returns the discounted
vector return sum(gamma^i * r_{i+1}).  :func:`evaluate` averages rollouts
over episodes, each episode drawing from a stream derived from
``(seed_base, episode)``; accumulation is ordered episode 0 to n-1 so
results do not depend on scheduling.  Individuals never share random
numbers: each gets its own seed base from the caller.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import policy
from .environments import Environment
from .policy import PolicySpec
from .rng import RandomStream, derive_seed


@dataclass(frozen=True)
class EvaluatedIndividual:
    genome: np.ndarray
    mean_return: np.ndarray
    n_episodes: int
    scalar_value: float


def scalarize(v) -> float:
    """Equal-weight scalarization: mean of the objective components."""
    v = np.asarray(v, dtype=np.float64)
    if v.shape[0] < 2:
        raise ValueError("scalarization expects k >= 2 objectives")
    return float(np.sum(v) / v.shape[0])


def rollout(env: Environment, spec: PolicySpec, genome, rng: RandomStream) -> np.ndarray:
    """One Monte Carlo sample of the discounted vector return."""
    if spec.obs_dim != env.spec.obs_dim or spec.action_dim != env.spec.action_dim:
        raise ValueError(
            f"policy ({spec.obs_dim}->{spec.action_dim}) does not match "
            f"environment ({env.spec.obs_dim}->{env.spec.action_dim})"
        )
    layers = policy.unflatten(spec, genome)
    state = env.reset(rng)
    total = np.zeros(env.spec.k)
    discount = 1.0
    for _ in range(env.spec.horizon):
        action = policy.forward(layers, env.observation(state))
        result = env.step(state, action, rng)
        total += discount * result.reward
        discount *= env.spec.gamma
        state = result.next_state
    return total


def evaluate(env: Environment, spec: PolicySpec, genome, n_episodes: int,
             seed_base: int) -> EvaluatedIndividual:
    """Empirical mean return over ``n_episodes`` independent episodes."""
    if n_episodes < 1:
        raise ValueError("n_episodes must be >= 1")
    genome = np.asarray(genome, dtype=np.float64)
    total = np.zeros(env.spec.k)
    for episode in range(n_episodes):
        total = total + rollout(env, spec, genome, RandomStream(derive_seed(seed_base, episode)))
    mean = total / n_episodes
    return EvaluatedIndividual(genome=genome, mean_return=mean,
                               n_episodes=n_episodes, scalar_value=scalarize(mean))
