"""Finite gridworld environments with deterministic four-connected movement."""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

Cell = tuple[int, int]


class Action(IntEnum):
    """The four moves in canonical order; the ordering is load-bearing for
    tie-breaking and for inverse-CDF sampling, so it must never change."""

    UP = 0
    DOWN = 1
    LEFT = 2
    RIGHT = 3

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def from_label(cls, label: str) -> "Action":
        try:
            return cls[label.upper()]
        except KeyError:
            raise ValueError(f"unknown action label {label!r}") from None


_MOVES: dict[Action, tuple[int, int]] = {
    Action.UP: (-1, 0),
    Action.DOWN: (1, 0),
    Action.LEFT: (0, -1),
    Action.RIGHT: (0, 1),
}


@dataclass(frozen=True)
class GridWorld:
    """Rectangular grid with a single rewarded goal cell.

    Moves that would leave the grid keep the agent in place. Entering the
    goal pays ``goal_reward`` and ends the episode; every other transition
    pays ``step_reward``. Instances are immutable and safe to share across
    concurrently running trials.
    """

    rows: int
    cols: int
    start: Cell
    goal: Cell
    step_reward: float = 0.0
    goal_reward: float = 1.0
    max_steps: int = 100

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"grid must be at least 1x1, got {self.rows}x{self.cols}")
        for name, cell in (("start", self.start), ("goal", self.goal)):
            r, c = cell
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"{name} cell {cell} lies outside the {self.rows}x{self.cols} grid")
        if self.start == self.goal:
            raise ValueError("start and goal must be distinct cells")
        if self.max_steps < 1:
            raise ValueError(f"max_steps must be positive, got {self.max_steps}")

    @property
    def n_states(self) -> int:
        return self.rows * self.cols

    def index(self, cell: Cell) -> int:
        """Row-major state index of a cell."""
        r, c = cell
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise ValueError(f"cell {cell} lies outside the {self.rows}x{self.cols} grid")
        return r * self.cols + c

    def cell(self, index: int) -> Cell:
        if not 0 <= index < self.n_states:
            raise ValueError(f"state index {index} out of range for {self.n_states} states")
        return divmod(index, self.cols)


@dataclass(frozen=True)
class Transition:
    state: Cell
    action: Action
    next_state: Cell
    reward: float
    terminal: bool


def step(world: GridWorld, state: Cell, action: Action) -> Transition:
    """Apply one deterministic move.

    Off-grid attempts leave the state unchanged; ``terminal`` is true exactly
    when the resulting state is the goal.
    """
    world.index(state)
    dr, dc = _MOVES[Action(action)]
    nr, nc = state[0] + dr, state[1] + dc
    next_state = (nr, nc) if 0 <= nr < world.rows and 0 <= nc < world.cols else state
    terminal = next_state == world.goal
    reward = world.goal_reward if terminal else world.step_reward
    return Transition(state, Action(action), next_state, reward, terminal)


def midline_task(rows: int, cols: int, max_steps: int = 100) -> GridWorld:
    """Grid with the start on the middle of the left edge and the goal
    opposite it on the right edge; sparse reward of 1 on goal entry."""
    if cols < 2:
        raise ValueError(f"midline task needs at least 2 columns, got {cols}")
    mid = rows // 2
    return GridWorld(
        rows=rows,
        cols=cols,
        start=(mid, 0),
        goal=(mid, cols - 1),
        step_reward=0.0,
        goal_reward=1.0,
        max_steps=max_steps,
    )


def grid_sailing_task() -> GridWorld:
    """The canonical 3x5 instance used throughout the experiments."""
    return midline_task(3, 5)


def enumerate_states(world) -> list[Cell]:
    """All cells in stable row-major order."""
    return [(r, c) for r in range(world.rows) for c in range(world.cols)]
