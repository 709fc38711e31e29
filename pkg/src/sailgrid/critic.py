"""State-value estimation: TD errors, TD(0) updates, and policy evaluation."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from sailgrid.actor import PolicyKind, action_probabilities
from sailgrid.env import Action, GridWorld, enumerate_states, step

_MAX_SWEEPS = 1_000_000


class TdVariant(Enum):
    """Selectable prediction-error forms.

    STANDARD is the usual signed error r + gamma*V(s') - V(s). SQUARED is the
    alternative r**2 + (gamma*V(s') - V(s))**2; it is nonnegative by
    construction and therefore cannot signal negative surprises. It is kept
    as a comparison variant, not a default.
    """

    STANDARD = "standard"
    SQUARED = "squared"


@dataclass
class ValueTable:
    """Per-state value estimates with the terminal entry pinned at zero.

    A table belongs to a single training loop; concurrent trials must each
    own their own table.
    """

    values: np.ndarray
    goal_index: int

    @classmethod
    def zeros(cls, world: GridWorld) -> "ValueTable":
        return cls(np.zeros(world.n_states), world.index(world.goal))

    def copy(self) -> "ValueTable":
        return ValueTable(self.values.copy(), self.goal_index)


@dataclass
class DopamineTrace:
    """Recorded prediction-error signals, one per environment step."""

    records: list[tuple[int, int, float]] = field(default_factory=list)

    def append(self, episode: int, step_index: int, delta: float) -> None:
        if self.records and (episode, step_index) < self.records[-1][:2]:
            raise ValueError("trace records must be appended in non-decreasing (episode, step) order")
        self.records.append((episode, step_index, float(delta)))

    def __len__(self) -> int:
        return len(self.records)


def td_error(variant: TdVariant, r: float, v_next: float, v_cur: float, gamma: float) -> float:
    """Prediction error for one transition under the chosen variant."""
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")
    if variant is TdVariant.STANDARD:
        return r + gamma * v_next - v_cur
    if variant is TdVariant.SQUARED:
        err = gamma * v_next - v_cur
        return r * r + err * err  # multiplication keeps IEEE inf semantics on overflow
    raise ValueError(f"unknown TD variant {variant!r}")


def critic_update(table: ValueTable, state: int, delta: float, alpha_critic: float) -> ValueTable:
    """TD(0) step V(s) += alpha * delta on one state.

    The goal entry is never moved; it stays clamped at zero so bootstrap
    targets at episode end are well defined.
    """
    if not 0.0 < alpha_critic <= 1.0:
        raise ValueError(f"alpha_critic must lie in (0, 1], got {alpha_critic}")
    if not 0 <= state < table.values.shape[0]:
        raise ValueError(f"state index {state} out of range for {table.values.shape[0]} states")
    if state != table.goal_index:
        table.values[state] += alpha_critic * delta
    return table


def _transition_tables(world: GridWorld) -> tuple[np.ndarray, np.ndarray]:
    """Successor index and reward for every (state, action) pair."""
    n = world.n_states
    nxt = np.empty((n, len(Action)), dtype=np.intp)
    rew = np.empty((n, len(Action)))
    for i, cell in enumerate(enumerate_states(world)):
        for a in Action:
            t = step(world, cell, a)
            nxt[i, a] = world.index(t.next_state)
            rew[i, a] = t.reward
    return nxt, rew


def bellman_evaluate(
    world: GridWorld,
    policy,
    gamma: float,
    tol: float,
    q=None,
) -> ValueTable:
    """Evaluate a policy to its fixed point V(s) = sum_a pi(s,a) [r + gamma V(s')].

    Synchronous sweeps from zero until the max-norm change drops below
    ``tol``; the goal entry is held at zero throughout. Softmax policies read
    their probabilities from ``q``, which must then be provided.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if not 0.0 <= gamma < 1.0:
        raise ValueError(f"gamma must lie in [0, 1), got {gamma}")
    if policy.kind is PolicyKind.SOFTMAX_OVER_Q and q is None:
        raise ValueError("softmax policies need the QTable they read from")

    goal = world.index(world.goal)
    n = world.n_states
    probs = np.empty((n, len(Action)))
    for s in range(n):
        # Any distribution works at the terminal state: its value is clamped.
        probs[s] = 0.25 if s == goal else action_probabilities(policy, q, s)

    nxt, rew = _transition_tables(world)
    v = np.zeros(n)
    for _ in range(_MAX_SWEEPS):
        new = (probs * (rew + gamma * v[nxt])).sum(axis=1)
        new[goal] = 0.0
        change = float(np.max(np.abs(new - v)))
        v = new
        if change < tol:
            return ValueTable(v, goal)
    raise RuntimeError(f"policy evaluation did not reach tol={tol} within {_MAX_SWEEPS} sweeps")


def rescorla_wagner(alpha: float, beta: float, lambda_rw: float, sum_v: float) -> float:
    """Classical-conditioning associative step alpha * beta * (lambda - sum V)."""
    return alpha * beta * (lambda_rw - sum_v)
