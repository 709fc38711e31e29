"""Command line interface: run experiments, evaluate stored greedy policies."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from sailgrid.actor import Policy
from sailgrid.critic import TdVariant, bellman_evaluate
from sailgrid.env import Action, GridWorld
from sailgrid.experiment import ExperimentConfig, run_experiment


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sailgrid",
        description="Supervised actor-critic learning on a tabular grid sailing task.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    defaults = ExperimentConfig()
    run = sub.add_parser("run", help="train on the grid sailing task and write CSV/JSON outputs")
    run.add_argument("--rows", type=int, default=defaults.rows)
    run.add_argument("--cols", type=int, default=defaults.cols)
    run.add_argument("--episodes", type=int, default=defaults.episodes)
    run.add_argument("--trials", type=int, default=defaults.trials)
    run.add_argument("--seed", type=int, default=defaults.seed)
    run.add_argument("--gamma", type=float, default=defaults.gamma)
    run.add_argument("--alpha-actor", type=float, default=defaults.alpha_actor)
    run.add_argument("--alpha-critic", type=float, default=defaults.alpha_critic)
    run.add_argument("--temperature", type=float, default=defaults.temperature)
    run.add_argument("--td-variant", choices=[v.value for v in TdVariant], default=defaults.td_variant.value)
    run.add_argument("--supervisor", choices=["on", "off"], default="on")
    run.add_argument("--k0", type=float, default=defaults.k0)
    run.add_argument("--decay", type=float, default=defaults.decay)
    run.add_argument("--out", type=Path, default=defaults.out_dir)

    ev = sub.add_parser("evaluate", help="evaluate a stored greedy policy to its fixed point")
    ev.add_argument("--policy", type=Path, required=True, help="greedy_policy.json from a run")
    ev.add_argument("--gamma", type=float, default=defaults.gamma)
    ev.add_argument("--tol", type=float, default=1e-10)

    return parser


def _cmd_run(args: argparse.Namespace) -> None:
    config = ExperimentConfig(
        rows=args.rows,
        cols=args.cols,
        episodes=args.episodes,
        trials=args.trials,
        seed=args.seed,
        gamma=args.gamma,
        alpha_actor=args.alpha_actor,
        alpha_critic=args.alpha_critic,
        temperature=args.temperature,
        td_variant=TdVariant(args.td_variant),
        supervisor_enabled=args.supervisor == "on",
        k0=args.k0,
        decay=args.decay,
        out_dir=args.out,
    )
    summary = run_experiment(config)
    print(f"wrote outputs to {config.out_dir}")
    print(f"optimal greedy path in {summary.optimal_trial_count}/{config.trials} trials")
    print(f"first optimal episode per trial: {summary.first_optimal_episode}")
    print(f"mean reward over final episodes: {summary.mean_final_reward:.4f}")
    print(f"mean wall-clock per trial: {summary.mean_seconds_per_trial:.6f} s")


def _load_policy_file(path: Path) -> tuple[GridWorld, Policy]:
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path} is not valid JSON: {exc}") from exc
    try:
        world = GridWorld(
            rows=doc["rows"],
            cols=doc["cols"],
            start=tuple(doc["start"]),
            goal=tuple(doc["goal"]),
            step_reward=doc["step_reward"],
            goal_reward=doc["goal_reward"],
            max_steps=doc["max_steps"],
        )
        labels = doc["actions"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"{path} is missing required policy fields: {exc}") from exc
    if len(labels) != world.n_states:
        raise ValueError(f"{path} lists {len(labels)} actions for {world.n_states} states")
    action_map = {s: Action.from_label(lbl) for s, lbl in enumerate(labels)}
    return world, Policy.deterministic(action_map)


def _cmd_evaluate(args: argparse.Namespace) -> None:
    world, policy = _load_policy_file(args.policy)
    table = bellman_evaluate(world, policy, args.gamma, args.tol)
    print(f"state values under the stored policy (gamma={args.gamma:g}, tol={args.tol:g})")
    for r in range(world.rows):
        row = [format(table.values[world.index((r, c))], ".9g") for c in range(world.cols)]
        print(",".join(row))


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            _cmd_run(args)
        else:
            _cmd_evaluate(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
