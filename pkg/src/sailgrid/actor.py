"""Action preferences Q(s,a), stochastic policies, and preference updates."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Mapping

import numpy as np

from sailgrid.env import Action, GridWorld

if TYPE_CHECKING:
    from sailgrid.critic import ValueTable

N_ACTIONS = len(Action)


@dataclass
class QTable:
    """Per-(state, action) preference values, shape (n_states, 4)."""

    values: np.ndarray

    @classmethod
    def zeros(cls, world: GridWorld) -> "QTable":
        return cls(np.zeros((world.n_states, N_ACTIONS)))

    @classmethod
    def random_init(cls, world: GridWorld, rng: np.random.Generator, scale: float = 0.01) -> "QTable":
        """Small i.i.d. uniform entries in [-scale, scale] to break ties."""
        return cls(rng.uniform(-scale, scale, size=(world.n_states, N_ACTIONS)))

    @property
    def n_states(self) -> int:
        return self.values.shape[0]

    def copy(self) -> "QTable":
        return QTable(self.values.copy())


class PolicyKind(Enum):
    SOFTMAX_OVER_Q = "softmax"
    DETERMINISTIC = "deterministic"
    UNIFORM_RANDOM = "uniform"


@dataclass(frozen=True)
class Policy:
    """A rule for turning preferences into action probabilities."""

    kind: PolicyKind
    temperature: float = 1.0
    action_map: Mapping[int, Action] | None = None

    def __post_init__(self) -> None:
        if self.kind is PolicyKind.SOFTMAX_OVER_Q and self.temperature <= 0.0:
            raise ValueError(f"softmax temperature must be positive, got {self.temperature}")
        if self.kind is PolicyKind.DETERMINISTIC and self.action_map is None:
            raise ValueError("deterministic policies need an action_map")

    @classmethod
    def softmax(cls, temperature: float) -> "Policy":
        return cls(PolicyKind.SOFTMAX_OVER_Q, temperature=temperature)

    @classmethod
    def deterministic(cls, action_map: Mapping[int, Action]) -> "Policy":
        return cls(PolicyKind.DETERMINISTIC, action_map=dict(action_map))

    @classmethod
    def uniform_random(cls) -> "Policy":
        return cls(PolicyKind.UNIFORM_RANDOM)


def _check_state(q: QTable, state: int) -> None:
    if not 0 <= state < q.n_states:
        raise ValueError(f"state index {state} out of range for {q.n_states} states")


def advantage(q: QTable, v: "ValueTable", state: int, action: Action) -> float:
    """How much better one action looks than the state's average, Q(s,a) - V(s)."""
    _check_state(q, state)
    return float(q.values[state, action] - v.values[state])


def action_probabilities(policy: Policy, q: QTable | None, state: int) -> np.ndarray:
    """Probability vector over the four actions at one state."""
    if policy.kind is PolicyKind.SOFTMAX_OVER_Q:
        if q is None:
            raise ValueError("softmax policies need a QTable")
        z = q.values[state] / policy.temperature
        z = z - z.max()  # overflow guard
        e = np.exp(z)
        return e / e.sum()
    if policy.kind is PolicyKind.DETERMINISTIC:
        try:
            a = policy.action_map[state]
        except KeyError:
            raise ValueError(f"deterministic policy undefined at state {state}") from None
        p = np.zeros(N_ACTIONS)
        p[a] = 1.0
        return p
    return np.full(N_ACTIONS, 1.0 / N_ACTIONS)


def select_action(policy: Policy, q: QTable | None, state: int, rng: np.random.Generator) -> Action:
    """Sample an action by inverse CDF in canonical action order.

    Deterministic policies return their mapped action without consuming a
    draw; all other kinds consume exactly one uniform draw.
    """
    if policy.kind is PolicyKind.DETERMINISTIC:
        try:
            return policy.action_map[state]
        except KeyError:
            raise ValueError(f"deterministic policy undefined at state {state}") from None
    p = action_probabilities(policy, q, state)
    u = rng.random()
    cum = 0.0
    for a in Action:
        cum += p[a]
        if u < cum:
            return a
    return Action.RIGHT  # u fell into the rounding slack at the top of the CDF


def actor_update(q: QTable, state: int, action: Action, delta: float, alpha_actor: float) -> QTable:
    """Preference step Q(s,a) += alpha * delta on the taken action only."""
    if not 0.0 < alpha_actor <= 1.0:
        raise ValueError(f"alpha_actor must lie in (0, 1], got {alpha_actor}")
    _check_state(q, state)
    q.values[state, action] += alpha_actor * delta
    return q


def greedy_policy(q: QTable) -> Policy:
    """Deterministic argmax extraction; ties break toward the lowest action index."""
    best = np.argmax(q.values, axis=1)
    return Policy.deterministic({s: Action(int(a)) for s, a in enumerate(best)})
