"""Seeded multi-trial training runs on the grid sailing task, with CSV logging.

Every run is reproducible byte for byte: each trial draws from its own
NumPy PCG64 generator seeded with ``SeedSequence([seed, trial_index])``, so
trials are independent of execution order. Wall-clock timings are recorded
for reporting only and are the single non-deterministic quantity.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from sailgrid.actor import Policy, QTable, actor_update, advantage, greedy_policy, select_action
from sailgrid.critic import DopamineTrace, TdVariant, ValueTable, critic_update, td_error
from sailgrid.env import Action, Cell, GridWorld, midline_task, step
from sailgrid.supervisor import (
    SupervisorSpec,
    composite_action,
    gain,
    supervisor_action,
    uniform_action_utilities,
)

FINAL_REWARD_WINDOW = 50


@dataclass
class ExperimentConfig:
    """All knobs of one experiment; defaults reproduce the reference setup."""

    rows: int = 3
    cols: int = 5
    episodes: int = 500
    trials: int = 8
    seed: int = 42
    gamma: float = 0.9
    alpha_actor: float = 0.05
    alpha_critic: float = 0.1
    temperature: float = 0.2
    td_variant: TdVariant = TdVariant.STANDARD
    supervisor_enabled: bool = True
    k0: float = 0.5
    decay: float = 0.99
    out_dir: Path = Path("out")
    # comparison mode: drive the actor with Q(s,a) - V(s) instead of the TD error
    advantage_actor: bool = False

    def validate(self) -> None:
        """Raise a ValueError listing every violated bound."""
        problems = []
        if self.rows < 1:
            problems.append(f"rows must be >= 1, got {self.rows}")
        if self.cols < 2:
            problems.append(f"cols must be >= 2 so start and goal differ, got {self.cols}")
        if self.episodes < 1:
            problems.append(f"episodes must be >= 1, got {self.episodes}")
        if self.trials < 1:
            problems.append(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed < 2**64:
            problems.append(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if not 0.0 <= self.gamma < 1.0:
            problems.append(f"gamma must lie in [0, 1), got {self.gamma}")
        if not 0.0 < self.alpha_actor <= 1.0:
            problems.append(f"alpha_actor must lie in (0, 1], got {self.alpha_actor}")
        if not 0.0 < self.alpha_critic <= 1.0:
            problems.append(f"alpha_critic must lie in (0, 1], got {self.alpha_critic}")
        if self.temperature <= 0.0:
            problems.append(f"temperature must be positive, got {self.temperature}")
        if not 0.0 <= self.k0 <= 1.0:
            problems.append(f"k0 must lie in [0, 1], got {self.k0}")
        if not 0.0 < self.decay <= 1.0:
            problems.append(f"decay must lie in (0, 1], got {self.decay}")
        if problems:
            raise ValueError("invalid config: " + "; ".join(problems))

    def world(self) -> GridWorld:
        return midline_task(self.rows, self.cols)

    def resolved(self) -> dict:
        d = asdict(self)
        d["td_variant"] = self.td_variant.value
        d["out_dir"] = str(self.out_dir)
        return d


@dataclass
class StepRecord:
    episode: int
    step: int
    state: Cell
    action: Action
    delta: float


@dataclass
class ExperimentLog:
    """Everything one trial produced, dense enough to redraw all figures."""

    trial: int
    episode_rewards: list[float]
    episode_steps: list[int]
    steps: list[StepRecord]
    dopamine: DopamineTrace
    final_greedy_path: list[Cell]
    final_q: QTable
    first_optimal_episode: int | None
    seconds: float


@dataclass
class RunSummary:
    mean_seconds_per_trial: float
    optimal_trial_count: int
    first_optimal_episode: list[int | None]
    mean_final_reward: float


def trial_rng(seed: int, trial_index: int) -> np.random.Generator:
    """PCG64 stream keyed by (seed, trial_index), independent of run order."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial_index])))


def greedy_path(world: GridWorld, q: QTable) -> list[Cell]:
    """Cells visited by the greedy policy from the start, capped at max_steps."""
    policy = greedy_policy(q)
    path = [world.start]
    state = world.start
    for _ in range(world.max_steps):
        t = step(world, state, policy.action_map[world.index(state)])
        path.append(t.next_state)
        state = t.next_state
        if t.terminal:
            break
    return path


def path_is_optimal(world: GridWorld, path: Sequence[Cell]) -> bool:
    """Shortest possible route: reaches the goal in exactly the Manhattan distance."""
    (sr, sc), (gr, gc) = world.start, world.goal
    shortest = abs(sr - gr) + abs(sc - gc)
    return path[-1] == world.goal and len(path) - 1 == shortest


def train_trial(config: ExperimentConfig, trial_index: int) -> ExperimentLog:
    """Run one seeded trial of supervised (or plain) actor-critic training.

    Per step the actor proposes via softmax over Q, the supervisor (when
    enabled) proposes its hint, the composite action is dispatched, and both
    tables are updated from the same TD error.
    """
    config.validate()
    world = config.world()
    rng = trial_rng(config.seed, trial_index)
    q = QTable.random_init(world, rng)
    v = ValueTable.zeros(world)
    behaviour = Policy.softmax(config.temperature)
    spec = SupervisorSpec(uniform_action_utilities(world), k0=config.k0, decay=config.decay)

    episode_rewards: list[float] = []
    episode_steps: list[int] = []
    records: list[StepRecord] = []
    trace = DopamineTrace()
    first_optimal: int | None = None

    t0 = time.perf_counter()
    for episode in range(config.episodes):
        state = world.start
        total = 0.0
        n = 0
        k = gain(spec, episode) if config.supervisor_enabled else 0.0
        while n < world.max_steps:
            s_idx = world.index(state)
            choice = select_action(behaviour, q, s_idx, rng)
            if config.supervisor_enabled:
                hint = supervisor_action(world, state)
                choice = composite_action(choice, hint, k, rng)
            t = step(world, state, choice)
            delta = td_error(
                config.td_variant,
                t.reward,
                float(v.values[world.index(t.next_state)]),
                float(v.values[s_idx]),
                config.gamma,
            )
            if not math.isfinite(delta):
                # the squared variant feeds its nonnegative error back into V
                # and can grow without bound; stop with a diagnosis instead of
                # letting NaNs poison the tables
                raise FloatingPointError(
                    f"TD error diverged (delta={delta}) in trial {trial_index}, "
                    f"episode {episode}, step {n} under the "
                    f"{config.td_variant.value} variant"
                )
            critic_update(v, s_idx, delta, config.alpha_critic)
            signal = advantage(q, v, s_idx, choice) if config.advantage_actor else delta
            if not math.isfinite(signal):
                raise FloatingPointError(
                    f"actor signal diverged (signal={signal}) in trial {trial_index}, "
                    f"episode {episode}, step {n}"
                )
            actor_update(q, s_idx, choice, signal, config.alpha_actor)
            records.append(StepRecord(episode, n, state, choice, delta))
            trace.append(episode, n, delta)
            total += t.reward
            n += 1
            state = t.next_state
            if t.terminal:
                break
        episode_rewards.append(total)
        episode_steps.append(n)
        if first_optimal is None and path_is_optimal(world, greedy_path(world, q)):
            first_optimal = episode
    seconds = time.perf_counter() - t0

    return ExperimentLog(
        trial=trial_index,
        episode_rewards=episode_rewards,
        episode_steps=episode_steps,
        steps=records,
        dopamine=trace,
        final_greedy_path=greedy_path(world, q),
        final_q=q.copy(),
        first_optimal_episode=first_optimal,
        seconds=seconds,
    )


def summarize(config: ExperimentConfig, logs: Sequence[ExperimentLog]) -> RunSummary:
    world = config.world()
    window = min(FINAL_REWARD_WINDOW, config.episodes)
    tail = [r for log in logs for r in log.episode_rewards[-window:]]
    return RunSummary(
        mean_seconds_per_trial=float(np.mean([log.seconds for log in logs])),
        optimal_trial_count=sum(path_is_optimal(world, log.final_greedy_path) for log in logs),
        first_optimal_episode=[log.first_optimal_episode for log in logs],
        mean_final_reward=float(np.mean(tail)),
    )


def _fmt(x: float) -> str:
    return format(float(x), ".9g")


def _write_lines(path: Path, lines: list[str]) -> Path:
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def representative_log(world: GridWorld, logs: Sequence[ExperimentLog]) -> ExperimentLog:
    """The trial whose artifacts go into the single-trial figure files:
    the first that ended on an optimal greedy path, else trial 0."""
    for log in logs:
        if path_is_optimal(world, log.final_greedy_path):
            return log
    return logs[0]


def emit_figures_data(logs: Sequence[ExperimentLog], world: GridWorld, out_dir: Path) -> list[Path]:
    """Write the CSV series behind the reward, path, Q-value, and action plots.

    rewards.csv spans all trials (one column per trial); path.csv,
    q_values.csv, actions.csv, and delta_trace.csv come from the
    representative trial. Floats carry 9 significant digits.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rep = representative_log(world, logs)
    written = []

    header = "episode," + ",".join(f"trial_{log.trial}" for log in logs)
    rows = [header]
    for e in range(len(logs[0].episode_rewards)):
        rows.append(f"{e}," + ",".join(_fmt(log.episode_rewards[e]) for log in logs))
    written.append(_write_lines(out_dir / "rewards.csv", rows))

    rows = ["step,row,col"]
    rows += [f"{i},{r},{c}" for i, (r, c) in enumerate(rep.final_greedy_path)]
    written.append(_write_lines(out_dir / "path.csv", rows))

    rows = ["state_row,state_col,q_up,q_down,q_left,q_right"]
    for s in range(rep.final_q.n_states):
        r, c = world.cell(s)
        rows.append(f"{r},{c}," + ",".join(_fmt(x) for x in rep.final_q.values[s]))
    written.append(_write_lines(out_dir / "q_values.csv", rows))

    rows = ["episode,step,action"]
    rows += [f"{rec.episode},{rec.step},{rec.action.label}" for rec in rep.steps]
    written.append(_write_lines(out_dir / "actions.csv", rows))

    rows = ["episode,step,delta"]
    rows += [f"{e},{s},{_fmt(d)}" for e, s, d in rep.dopamine.records]
    written.append(_write_lines(out_dir / "delta_trace.csv", rows))

    return written


def write_policy_file(world: GridWorld, q: QTable, path: Path) -> Path:
    """Store the greedy policy with enough context to re-evaluate it later."""
    policy = greedy_policy(q)
    doc = {
        "rows": world.rows,
        "cols": world.cols,
        "start": list(world.start),
        "goal": list(world.goal),
        "step_reward": world.step_reward,
        "goal_reward": world.goal_reward,
        "max_steps": world.max_steps,
        "actions": [policy.action_map[s].label for s in range(world.n_states)],
    }
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def run_experiment(config: ExperimentConfig) -> RunSummary:
    """Run all trials, write every output file, and return the summary.

    Emits rewards.csv, path.csv, q_values.csv, actions.csv, delta_trace.csv,
    greedy_policy.json, and summary.json under ``config.out_dir``.
    """
    config.validate()
    world = config.world()
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    logs = [train_trial(config, i) for i in range(config.trials)]
    summary = summarize(config, logs)

    emit_figures_data(logs, world, out_dir)
    write_policy_file(world, representative_log(world, logs).final_q, out_dir / "greedy_policy.json")
    doc = {"config": config.resolved(), **asdict(summary)}
    (out_dir / "summary.json").write_text(
        json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return summary
