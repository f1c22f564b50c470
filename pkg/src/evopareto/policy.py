"""Fixed-topology feedforward policies encoded as flat real genomes.

A policy is a fully connected network with three hidden layers and tanh on
every layer, output included, so actions always land in ``(-1, 1)`` and the
environments need no extra clamping for policy-produced actions.  The genome
layout is positional and unambiguous: for each layer, input to output, the
weight matrix in row-major ``(out, in)`` order followed by the bias vector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rng import RandomStream


@dataclass(frozen=True)
class PolicySpec:
    obs_dim: int
    hidden: tuple[int, int, int] = (4, 4, 4)
    action_dim: int = 1

    def __post_init__(self):
        if self.obs_dim < 1 or self.action_dim < 1 or min(self.hidden) < 1:
            raise ValueError("all layer widths must be >= 1")

    def layer_sizes(self) -> list[tuple[int, int]]:
        widths = [self.obs_dim, *self.hidden, self.action_dim]
        return list(zip(widths[:-1], widths[1:]))


def genome_length(spec: PolicySpec) -> int:
    """Total parameter count: sum of in*out + out over consecutive layers."""
    return sum(n_in * n_out + n_out for n_in, n_out in spec.layer_sizes())


def init_genome(spec: PolicySpec, rng: RandomStream) -> np.ndarray:
    """Fresh genome with every parameter drawn Uniform(-1, 1)."""
    return rng.uniform_vector(genome_length(spec), -1.0, 1.0)


def unflatten(spec: PolicySpec, genome: np.ndarray) -> list[tuple[np.ndarray, np.ndarray]]:
    """Split a flat genome into per-layer (weights, bias) arrays."""
    theta = np.asarray(genome, dtype=np.float64)
    expected = genome_length(spec)
    if theta.shape != (expected,):
        raise ValueError(f"genome length {theta.shape} does not match spec ({expected},)")
    layers = []
    offset = 0
    for n_in, n_out in spec.layer_sizes():
        w = theta[offset : offset + n_in * n_out].reshape(n_out, n_in)
        offset += n_in * n_out
        b = theta[offset : offset + n_out]
        offset += n_out
        layers.append((w, b))
    return layers


def flatten(layers) -> np.ndarray:
    """Inverse of :func:`unflatten`."""
    return np.concatenate([np.concatenate([w.ravel(), b]) for w, b in layers])


def forward(layers, observation: np.ndarray) -> np.ndarray:
    """Run the network on one observation; tanh at every layer."""
    x = observation
    for w, b in layers:
        x = np.tanh(w @ x + b)
    return x


def act(spec: PolicySpec, genome: np.ndarray, observation) -> np.ndarray:
    """Action in (-1, 1)^action_dim for one observation.

    Pure function of its inputs.  Callers evaluating many steps should
    :func:`unflatten` once and use :func:`forward` directly.
    """
    obs = np.asarray(observation, dtype=np.float64)
    if obs.shape != (spec.obs_dim,):
        raise ValueError(f"observation shape {obs.shape} does not match obs_dim {spec.obs_dim}")
    return forward(unflatten(spec, genome), obs)
