"""Built-in stochastic multi-objective control environments.

Three desk-scale tasks with conflicting continuous objectives, fixed
horizons, and seeded, bit-reproducible transitions:

* ``TradeoffBandit`` -- one step, two exactly antagonistic rewards with a
  known analytic front, used for quantitative acceptance checks.
* ``NoisyPointWalker`` -- 1-D point mass trading speed against actuation
  energy under Gaussian velocity noise.
* ``HopLander`` -- three objectives (forward speed, altitude, energy) with
  a ground-contact nonlinearity.

Environment objects are immutable; all per-episode mutability lives in
:class:`EnvState`, so independent episodes can run concurrently as long as
each owns its state and its random stream.  Actions are clamped to
``[-1, 1]`` defensively, episodes always run the full horizon, and with the
noise scale forced to zero the two stochastic tasks become deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rng import RandomStream


@dataclass(frozen=True)
class EnvSpec:
    name: str
    obs_dim: int
    action_dim: int
    k: int
    horizon: int
    gamma: float
    sigma: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.gamma < 1.0:
            raise ValueError("gamma must lie in [0, 1)")
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")


@dataclass(frozen=True)
class EnvState:
    values: tuple[float, ...]
    step_index: int = 0


@dataclass(frozen=True)
class StepResult:
    next_state: EnvState
    reward: np.ndarray
    done: bool


def _clamp(x: float, lo: float = -1.0, hi: float = 1.0) -> float:
    return lo if x < lo else hi if x > hi else x


class Environment:
    """Shared plumbing; subclasses provide initial state, dynamics, observation."""

    spec: EnvSpec

    def reset(self, rng: RandomStream) -> EnvState:
        return EnvState(values=self._initial(rng), step_index=0)

    def step(self, state: EnvState, action, rng: RandomStream) -> StepResult:
        if state.step_index >= self.spec.horizon:
            raise ValueError("episode already finished; reset before stepping")
        action = [_clamp(float(a)) for a in np.asarray(action, dtype=np.float64)]
        if len(action) != self.spec.action_dim:
            raise ValueError(f"expected {self.spec.action_dim} action components, got {len(action)}")
        values, reward = self._transition(state.values, action, rng)
        next_state = EnvState(values=values, step_index=state.step_index + 1)
        return StepResult(next_state=next_state, reward=np.array(reward), done=next_state.step_index >= self.spec.horizon)

    def observation(self, state: EnvState) -> np.ndarray:
        return np.array(state.values, dtype=np.float64)

    def _initial(self, rng: RandomStream) -> tuple[float, ...]:
        raise NotImplementedError

    def _transition(self, values, action, rng: RandomStream):
        raise NotImplementedError


class TradeoffBandit(Environment):
    """Single-step bandit with rewards (u, 1-u), u = (a+1)/2.

    The achievable set is exactly the segment y1 + y2 = 1 restricted to
    [0, 1]^2, every point of which is nondominated, so the Pareto front is
    known in closed form.
    """

    def __init__(self, sigma: float = 0.0):
        self.spec = EnvSpec(name="TradeoffBandit", obs_dim=1, action_dim=1,
                            k=2, horizon=1, gamma=0.99, sigma=sigma)

    def _initial(self, rng):
        return ()

    def observation(self, state):
        return np.array([1.0])

    def _transition(self, values, action, rng):
        u = (action[0] + 1.0) / 2.0
        return (), (u, 1.0 - u)

    def analytic_front(self, resolution: int) -> np.ndarray:
        """The true front sampled on a uniform grid: {(u, 1-u)}."""
        if resolution < 2:
            raise ValueError("resolution must be >= 2")
        u = np.linspace(0.0, 1.0, resolution)
        return np.column_stack([u, 1.0 - u])


class NoisyPointWalker(Environment):
    """1-D point mass: maximize velocity, minimize actuation energy.

    Dynamics: v' = clamp(v + 0.1 a - 0.05 v + eps, -1, 1) with
    eps ~ N(0, sigma^2); x' = x + 0.1 v'.  Rewards (v', -a^2).

    All stochasticity scales with sigma: the initial velocity is drawn
    Uniform(-5 sigma, 5 sigma), i.e. Uniform(-0.05, 0.05) at the default
    noise level, so sigma = 0 makes whole episodes deterministic.
    """

    def __init__(self, sigma: float = 0.01):
        self.spec = EnvSpec(name="NoisyPointWalker", obs_dim=2, action_dim=1,
                            k=2, horizon=20, gamma=0.99, sigma=sigma)

    def _initial(self, rng):
        amp = 5.0 * self.spec.sigma
        return (0.0, rng.uniform(-amp, amp))

    def _transition(self, values, action, rng):
        x, v = values
        a = action[0]
        eps = self.spec.sigma * rng.normal()
        v_next = _clamp(v + 0.1 * a - 0.05 * v + eps)
        x_next = x + 0.1 * v_next
        return (x_next, v_next), (v_next, -(a * a))


class HopLander(Environment):
    """Three-objective hopper analog: speed vs altitude vs energy.

    Dynamics: w' = w + 0.1 a1 - 0.02; h' = max(0, h + 0.1 w'); grounding
    (h' = 0) zeroes w'; v' = 0.95 v + 0.1 a2 + eps, eps ~ N(0, sigma^2).
    Rewards (v', h', -(a1^2 + a2^2)).  As for the walker, the initial
    altitude perturbation Uniform(-5 sigma, 5 sigma) vanishes at sigma = 0.
    """

    def __init__(self, sigma: float = 0.01):
        self.spec = EnvSpec(name="HopLander", obs_dim=3, action_dim=2,
                            k=3, horizon=20, gamma=0.99, sigma=sigma)

    def _initial(self, rng):
        amp = 5.0 * self.spec.sigma
        return (1.0 + rng.uniform(-amp, amp), 0.0, 0.0)

    def _transition(self, values, action, rng):
        h, w, v = values
        a1, a2 = action
        w_next = w + 0.1 * a1 - 0.02
        h_next = max(0.0, h + 0.1 * w_next)
        if h_next == 0.0:
            w_next = 0.0
        eps = self.spec.sigma * rng.normal()
        v_next = 0.95 * v + 0.1 * a2 + eps
        return (h_next, w_next, v_next), (v_next, h_next, -(a1 * a1 + a2 * a2))


_CATALOG = {
    "TradeoffBandit": TradeoffBandit,
    "NoisyPointWalker": NoisyPointWalker,
    "HopLander": HopLander,
}


def environment_names() -> list[str]:
    return sorted(_CATALOG)


def make_env(name: str, sigma: float | None = None) -> Environment:
    """Instantiate an environment by name, optionally overriding noise scale."""
    try:
        cls = _CATALOG[name]
    except KeyError:
        raise ValueError(f"unknown environment {name!r}; choose from {environment_names()}") from None
    if sigma is None:
        return cls()
    if name == "TradeoffBandit" and sigma != 0.0:
        raise ValueError("TradeoffBandit has no noise to scale")
    return cls(sigma=sigma)
