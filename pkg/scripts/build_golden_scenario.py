#!/usr/bin/env python3
"""Write the bundled golden scenario: a 20x20 grid, four operable vehicles
(one empty, two with riders onboard, one with a committed pickup), and one
pending request at minute 255. Regenerate with:

    python3 scripts/build_golden_scenario.py
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from treexplain.transit import (Scenario, Stop, TravelModel, TripRequest,
                                VehicleState, WorldState, dump_scenario)


def build() -> Scenario:
    travel = TravelModel(width=20, height=20, speed=1.0)
    vehicles = [
        VehicleState(0, capacity=3, occupancy=0, location=(2, 2)),
        VehicleState(1, capacity=3, occupancy=2, location=(6, 5), route=[
            Stop("dropoff", 101, (9, 8), 246),
            Stop("dropoff", 102, (12, 10), 251),
        ]),
        VehicleState(2, capacity=4, occupancy=1, location=(14, 14), route=[
            Stop("dropoff", 103, (16, 17), 245),
        ]),
        VehicleState(3, capacity=2, occupancy=0, location=(10, 2), route=[
            Stop("pickup", 104, (12, 3), 243),
            Stop("dropoff", 104, (18, 6), 252),
        ]),
    ]
    requests = [
        TripRequest(0, (4, 4), (15, 11), t_p=255, t_d=300),
        TripRequest(101, (3, 5), (9, 8), t_p=228, t_d=250, status="in-transit", t_ap=230),
        TripRequest(102, (5, 4), (12, 10), t_p=232, t_d=258, status="in-transit", t_ap=235),
        TripRequest(103, (13, 13), (16, 17), t_p=225, t_d=246, status="in-transit", t_ap=229),
        TripRequest(104, (12, 3), (18, 6), t_p=240, t_d=262, status="assigned"),
    ]
    world = WorldState(time=240, vehicles=vehicles, requests=requests,
                       assignments={101: 1, 102: 1, 103: 2, 104: 3})
    return Scenario(world, travel)


def main() -> None:
    out = Path(__file__).resolve().parents[1] / "src" / "treexplain" / "data" / "golden_scenario.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    dump_scenario(build(), str(out))
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
