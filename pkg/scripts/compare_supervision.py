#!/usr/bin/env python3
"""Paired comparison of supervised vs unsupervised training.

Both arms use the same per-trial random streams, so every difference comes
from the supervisor hints alone. Reports the episode at which each trial's
greedy policy first traces the optimal path.
"""

import argparse
import statistics

from sailgrid.experiment import ExperimentConfig, train_trial


def first_optimal_episodes(config: ExperimentConfig) -> list[int]:
    firsts = []
    for trial in range(config.trials):
        log = train_trial(config, trial)
        first = log.first_optimal_episode
        firsts.append(config.episodes if first is None else first)
    return firsts


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--episodes", type=int, default=500)
    parser.add_argument("--trials", type=int, default=8)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    results = {}
    for label, enabled in (("supervised", True), ("unsupervised", False)):
        config = ExperimentConfig(
            episodes=args.episodes,
            trials=args.trials,
            seed=args.seed,
            supervisor_enabled=enabled,
        )
        firsts = first_optimal_episodes(config)
        results[label] = firsts
        print(f"{label:>12}: first-optimal episodes {firsts} (median {statistics.median(firsts)})")

    gap = statistics.median(results["unsupervised"]) - statistics.median(results["supervised"])
    print(f"supervision reaches the optimal path {gap:g} episodes earlier at the median")


if __name__ == "__main__":
    main()
