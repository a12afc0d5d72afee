"""Shared fixtures: the golden scenario/tree and randomized world builders."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from treexplain.config import golden_scenario_path
from treexplain.planner import MctsConfig, plan
from treexplain.rag import bundled_store
from treexplain.transit import (PENDING, RewardWeights, Scenario, Stop, TravelModel,
                                TripRequest, VehicleState, WorldState, load_scenario,
                                travel_time)

FIXTURES = Path(__file__).parent / "fixtures"

GOLDEN_CONFIG = MctsConfig(iterations=240, seed=7)
DEFAULT_WEIGHTS = RewardWeights()


@pytest.fixture(scope="session")
def golden_scenario() -> Scenario:
    return load_scenario(str(golden_scenario_path()))


@pytest.fixture(scope="session")
def golden_outcome(golden_scenario):
    request = min((r for r in golden_scenario.world.requests if r.status == PENDING),
                  key=lambda r: (r.t_p, r.id))
    return plan(golden_scenario.world, request, GOLDEN_CONFIG, DEFAULT_WEIGHTS,
                golden_scenario.travel)


@pytest.fixture(scope="session")
def golden_tree(golden_outcome):
    return golden_outcome.tree


@pytest.fixture(scope="session")
def knowledge_store():
    return bundled_store()


def random_world(rng: random.Random, n_vehicles: int | None = None,
                 model: TravelModel | None = None) -> tuple[WorldState, TravelModel, TripRequest]:
    """A consistent random fleet snapshot plus one pending request."""
    model = model or TravelModel(16, 16, 1.0)
    now = rng.randrange(0, 300)
    n_vehicles = n_vehicles or rng.randint(2, 4)
    vehicles: list[VehicleState] = []
    requests: list[TripRequest] = []
    assignments: dict[int, int] = {}
    next_id = 100

    def cell():
        return (rng.randrange(model.width), rng.randrange(model.height))

    for vid in range(n_vehicles):
        capacity = rng.randint(2, 4)
        location = cell()
        vehicle = VehicleState(vid, capacity, 0, location)
        t = now
        here = location
        # maybe one rider already onboard (dropoff pending)
        if rng.random() < 0.5:
            dest = cell()
            while dest == here:
                dest = cell()
            pax = rng.randint(1, min(2, capacity))
            t = t + travel_time(here, dest, model)
            vehicle.route.append(Stop("dropoff", next_id, dest, t))
            vehicle.occupancy = pax
            requests.append(TripRequest(next_id, cell(), dest, max(0, now - 20),
                                        t + rng.randint(1, 15), pax,
                                        "in-transit", t_ap=max(0, now - 10)))
            assignments[next_id] = vid
            here = dest
            next_id += 1
        # maybe one committed (not yet picked up) rider
        if rng.random() < 0.4:
            origin, dest = cell(), cell()
            while dest == origin:
                dest = cell()
            pax = 1
            t1 = t + travel_time(here, origin, model)
            t2 = t1 + travel_time(origin, dest, model)
            vehicle.route.append(Stop("pickup", next_id, origin, t1))
            vehicle.route.append(Stop("dropoff", next_id, dest, t2))
            t_p = now + rng.randint(1, 10)
            requests.append(TripRequest(next_id, origin, dest, t_p,
                                        max(t2, t_p) + rng.randint(1, 15), pax, "assigned"))
            assignments[next_id] = vid
            next_id += 1
        vehicles.append(vehicle)

    origin, dest = cell(), cell()
    while dest == origin:
        dest = cell()
    t_p = now + rng.randint(2, 25)
    request = TripRequest(0, origin, dest,
                          t_p, t_p + travel_time(origin, dest, model) + rng.randint(5, 25),
                          rng.randint(1, 2))
    requests.append(request)
    world = WorldState(now, vehicles, requests, 1.0, assignments)
    return world, model, request
