#!/usr/bin/env python3
"""Reproduce the reference experiment: 8 seeded trials on the 3x5 grid.

Writes the CSV series (reward curves, final path, Q values, actions, TD
trace) plus summary.json and greedy_policy.json under --out.
"""

import argparse
from pathlib import Path

from sailgrid.critic import TdVariant
from sailgrid.experiment import ExperimentConfig, run_experiment


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--episodes", type=int, default=500)
    parser.add_argument("--trials", type=int, default=8)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--td-variant", choices=[v.value for v in TdVariant], default="standard")
    parser.add_argument("--no-supervisor", action="store_true")
    parser.add_argument("--out", type=Path, default=Path("out/grid_sailing"))
    args = parser.parse_args()

    config = ExperimentConfig(
        episodes=args.episodes,
        trials=args.trials,
        seed=args.seed,
        td_variant=TdVariant(args.td_variant),
        supervisor_enabled=not args.no_supervisor,
        out_dir=args.out,
    )
    summary = run_experiment(config)
    print(f"outputs in {args.out}")
    print(f"optimal greedy path in {summary.optimal_trial_count}/{config.trials} trials")
    print(f"first optimal episode per trial: {summary.first_optimal_episode}")
    print(f"mean reward over final episodes: {summary.mean_final_reward:.4f}")
    print(f"mean wall-clock per trial: {summary.mean_seconds_per_trial:.6f} s")


if __name__ == "__main__":
    main()
