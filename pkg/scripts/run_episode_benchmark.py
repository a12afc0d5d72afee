#!/usr/bin/env python3
"""Compare MCTS dispatch against the random-feasible baseline over seeded
episodes and print a small table.

    python3 scripts/run_episode_benchmark.py --episodes 30 --requests 20
"""

import argparse
import statistics
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from treexplain.planner import MctsConfig, run_episode
from treexplain.transit import (RewardWeights, Scenario, TravelModel, VehicleState,
                                WorldState, generate_demand)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--episodes", type=int, default=30)
    parser.add_argument("--requests", type=int, default=20)
    parser.add_argument("--vehicles", type=int, default=4)
    parser.add_argument("--iterations", type=int, default=48)
    parser.add_argument("--rate", type=float, default=0.06)
    args = parser.parse_args()

    model = TravelModel(20, 20, 1.0)
    scenario = Scenario(
        WorldState(0, [VehicleState(v, 3, 0, ((v % 2) * 19, (v // 2) * 19))
                       for v in range(args.vehicles)]),
        model)
    config = MctsConfig(iterations=args.iterations, seed=0)
    weights = RewardWeights()

    rows = []
    started = time.monotonic()
    for seed in range(args.episodes):
        demand = generate_demand(seed, 600, args.rate, model)[:args.requests]
        mcts = run_episode(scenario, demand, config, weights, policy="mcts")
        rand = run_episode(scenario, demand, config, weights, policy="random",
                           policy_seed=seed)
        rows.append((seed, mcts.reward.total, mcts.assigned,
                     rand.reward.total, rand.assigned))
    elapsed = time.monotonic() - started

    print(f"{'seed':>4}  {'mcts reward':>12} {'assigned':>8}  "
          f"{'random reward':>13} {'assigned':>8}")
    for seed, m_r, m_a, r_r, r_a in rows:
        print(f"{seed:>4}  {m_r:>12.4f} {m_a:>8}  {r_r:>13.4f} {r_a:>8}")
    mcts_mean = statistics.mean(r[1] for r in rows)
    rand_mean = statistics.mean(r[3] for r in rows)
    print(f"\nmean reward: mcts {mcts_mean:.4f} vs random {rand_mean:.4f} "
          f"({args.episodes} episodes in {elapsed:.0f}s)")


if __name__ == "__main__":
    main()
