"""Utility-driven action hints and the gain-scheduled composite actor."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from sailgrid.critic import ValueTable
from sailgrid.env import Action, Cell, GridWorld, enumerate_states, step

_MAX_SWEEPS = 1_000_000


@dataclass
class ChoiceSet:
    """Generic choice identifiers with an explicit probability vector."""

    elements: Sequence
    distribution: np.ndarray

    def __post_init__(self) -> None:
        self.distribution = np.asarray(self.distribution, dtype=float)
        if len(self.elements) != self.distribution.shape[0]:
            raise ValueError(
                f"{len(self.elements)} elements but {self.distribution.shape[0]} probabilities"
            )
        if np.any(self.distribution < 0.0):
            raise ValueError("choice probabilities must be nonnegative")
        total = float(self.distribution.sum())
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"choice probabilities sum to {total}, expected 1")


def choice_support(choices: ChoiceSet) -> list:
    """Elements carrying strictly positive probability, input order preserved."""
    return [z for z, p in zip(choices.elements, choices.distribution) if p > 0.0]


def action_utility(state_probs, rewards_for_action) -> float:
    """Expected one-step reward of an action under a distribution over states."""
    p = np.asarray(state_probs, dtype=float)
    total = float(p.sum())
    if abs(total - 1.0) > 1e-12:
        raise ValueError(f"state probabilities sum to {total}, expected 1")
    if isinstance(rewards_for_action, Mapping):
        r = np.array([rewards_for_action[s] for s in range(p.shape[0])], dtype=float)
    else:
        r = np.asarray(rewards_for_action, dtype=float)
    if r.shape != p.shape:
        raise ValueError(f"got {r.shape[0]} rewards for {p.shape[0]} states")
    return float(p @ r)


def uniform_action_utilities(world: GridWorld) -> dict[Action, float]:
    """Per-action expected one-step reward under a uniform state distribution."""
    states = enumerate_states(world)
    p = np.full(len(states), 1.0 / len(states))
    return {
        a: action_utility(p, [step(world, s, a).reward for s in states]) for a in Action
    }


@dataclass(frozen=True)
class SupervisorSpec:
    """Utility weights plus the schedule that fades supervision out."""

    utilities: Mapping[Action, float]
    k0: float = 0.5
    decay: float = 0.99

    def __post_init__(self) -> None:
        missing = [a.label for a in Action if a not in self.utilities]
        if missing:
            raise ValueError(f"utilities missing actions: {', '.join(missing)}")
        if not 0.0 <= self.k0 <= 1.0:
            raise ValueError(f"initial gain k0 must lie in [0, 1], got {self.k0}")
        if not 0.0 < self.decay <= 1.0:
            raise ValueError(f"gain decay must lie in (0, 1], got {self.decay}")


def supervised_value(world: GridWorld, utilities: Mapping[Action, float], gamma: float, tol: float) -> ValueTable:
    """Fixed point of V(s) = sum_a U_a [r(s,a) + gamma V(s')] with V(goal) = 0.

    The utility weights must form a distribution over the four actions, so
    the recursion is a proper policy evaluation with state-independent
    action weights.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if not 0.0 <= gamma < 1.0:
        raise ValueError(f"gamma must lie in [0, 1), got {gamma}")
    missing = [a.label for a in Action if a not in utilities]
    if missing:
        raise ValueError(f"utilities missing actions: {', '.join(missing)}")
    u = np.array([float(utilities[a]) for a in Action])
    if np.any(u < 0.0):
        raise ValueError("utilities must be nonnegative")
    if abs(float(u.sum()) - 1.0) > 1e-12:
        raise ValueError(f"utilities sum to {float(u.sum())}, expected 1")

    states = enumerate_states(world)
    goal = world.index(world.goal)
    moves = [[step(world, s, a) for a in Action] for s in states]
    v = np.zeros(len(states))
    for _ in range(_MAX_SWEEPS):
        new = v.copy()
        for i in range(len(states)):
            if i == goal:
                continue
            new[i] = sum(
                u[a] * (t.reward + gamma * v[world.index(t.next_state)])
                for a, t in zip(Action, moves[i])
            )
        change = float(np.max(np.abs(new - v)))
        v = new
        if change < tol:
            return ValueTable(v, goal)
    raise RuntimeError(f"supervised evaluation did not reach tol={tol} within {_MAX_SWEEPS} sweeps")


def gain(spec: SupervisorSpec, episode: int) -> float:
    """Supervisor mixing weight k0 * decay**episode, clamped to [0, 1]."""
    if episode < 0:
        raise ValueError(f"episode index must be nonnegative, got {episode}")
    return min(1.0, max(0.0, spec.k0 * spec.decay**episode))


def supervisor_action(world: GridWorld, state: Cell) -> Action:
    """One-step hint: maximize immediate reward minus remaining distance to goal.

    Ties break toward the lowest action index.
    """
    if state == world.goal:
        raise ValueError("no hint at the terminal state")
    gr, gc = world.goal
    best, best_score = None, -np.inf
    for a in Action:
        t = step(world, state, a)
        distance = abs(t.next_state[0] - gr) + abs(t.next_state[1] - gc)
        score = t.reward - distance
        if score > best_score:
            best, best_score = a, score
    return best


def composite_action(actor_choice: Action, supervisor_choice: Action, k: float, rng: np.random.Generator) -> Action:
    """Dispatch the supervisor's hint with probability ``k``, else the actor's pick.

    Exactly one uniform draw is consumed regardless of ``k`` so that random
    streams stay aligned across gain schedules.
    """
    if not 0.0 <= k <= 1.0:
        raise ValueError(f"gain k must lie in [0, 1], got {k}")
    return supervisor_choice if rng.random() < k else actor_choice
