"""World model tests: reward terms, travel, schedule edits, demand, files."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treexplain.errors import DomainError
from treexplain.transit import (RewardWeights, TravelModel,
                                TripRequest, VehicleState, WorldState, advance,
                                apply_assignment, fulfillment_ratio, generate_demand,
                                load_scenario, occupancy_profile, reward,
                                scenario_from_doc, scenario_to_doc, timing_component,
                                travel_time, dump_scenario)


def req(rid=0, status="pending", t_p=100, t_d=140, t_ap=None, t_ad=None, passengers=1):
    return TripRequest(rid, (0, 0), (5, 5), t_p, t_d, passengers, status, t_ap, t_ad)


class TestRequestInvariants:
    def test_pickup_before_dropoff_required(self):
        with pytest.raises(DomainError):
            TripRequest(0, (0, 0), (1, 1), t_p=50, t_d=50)

    def test_actual_pickup_requires_matching_status(self):
        with pytest.raises(DomainError):
            req(status="pending", t_ap=90)
        with pytest.raises(DomainError):
            req(status="in-transit")  # missing t_ap

    def test_actual_dropoff_only_when_dropped(self):
        with pytest.raises(DomainError):
            req(status="in-transit", t_ap=90, t_ad=120)
        ok = req(status="dropped-off", t_ap=90, t_ad=120)
        assert ok.t_ad == 120

    def test_passengers_positive(self):
        with pytest.raises(DomainError):
            req(passengers=0)


class TestFulfillmentRatio:
    def test_mixed_statuses(self):
        requests = [req(0, "dropped-off", t_ap=100, t_ad=130),
                    req(1, "in-transit", t_ap=95),
                    req(2, "rejected"),
                    req(3, "pending")]
        assert fulfillment_ratio(requests) == 0.5

    def test_all_dropped(self):
        requests = [req(i, "dropped-off", t_ap=100, t_ad=130) for i in range(3)]
        assert fulfillment_ratio(requests) == 1.0

    def test_all_rejected(self):
        assert fulfillment_ratio([req(i, "rejected") for i in range(4)]) == 0.0

    def test_empty_is_error(self):
        with pytest.raises(DomainError):
            fulfillment_ratio([])


class TestTimingComponent:
    def test_on_time_dropoff_is_zero(self):
        assert timing_component([req(0, "dropped-off", t_p=100, t_d=140,
                                     t_ap=100, t_ad=140)]) == 0

    def test_early_pickup_in_transit(self):
        assert timing_component([req(0, "in-transit", t_p=100, t_ap=95)]) == -5

    def test_dropped_off_both_terms(self):
        # (t_d - t_ad) + (t_ap - t_p) = (40 - 35) + (14 - 10)
        r = TripRequest(0, (0, 0), (1, 1), 10, 40, 1, "dropped-off", 14, 35)
        assert timing_component([r]) == 9

    def test_other_statuses_contribute_zero(self):
        requests = [req(0, "pending"), req(1, "assigned"), req(2, "rejected")]
        assert timing_component(requests) == 0

    @given(st.permutations(range(6)))
    def test_permutation_invariant(self, order):
        base = [req(0, "dropped-off", t_p=10, t_d=80, t_ap=25, t_ad=70),
                req(1, "in-transit", t_p=30, t_ap=45),
                req(2, "rejected"), req(3, "pending"),
                req(4, "in-transit", t_p=50, t_ap=48),
                req(5, "dropped-off", t_p=5, t_d=60, t_ap=5, t_ad=66)]
        shuffled = [base[i] for i in order]
        assert timing_component(shuffled) == timing_component(base)


class TestReward:
    def test_fulfillment_only(self):
        requests = [req(0, "dropped-off", t_p=100, t_d=140, t_ap=100, t_ad=140)]
        b = reward(requests, RewardWeights(1.0, 0.0))
        assert b.total == 1.0 and b.timing_part == 0.0

    def test_timing_only_equals_component(self):
        requests = [req(0, "in-transit", t_p=100, t_ap=95), req(1, "pending")]
        b = reward(requests, RewardWeights(0.0, 1.0))
        assert b.total == timing_component(requests)

    def test_weighted_sum(self):
        requests = [req(0, "in-transit", t_p=100, t_ap=95)]
        b = reward(requests, RewardWeights(10.0, 1.0))
        assert b.total == pytest.approx(10.0 * 1.0 + (-5.0))

    def test_zero_timing_weight_reduces_to_fulfillment(self):
        rng = random.Random(3)
        for _ in range(50):
            statuses = rng.choices(["pending", "rejected", "in-transit", "dropped-off"], k=5)
            requests = []
            for i, status in enumerate(statuses):
                t_ap = 90 + i if status in ("in-transit", "dropped-off") else None
                t_ad = 160 + i if status == "dropped-off" else None
                requests.append(req(i, status, t_ap=t_ap, t_ad=t_ad))
            a = rng.uniform(-2, 2)
            b = reward(requests, RewardWeights(a, 0.0))
            assert b.total == pytest.approx(a * fulfillment_ratio(requests), abs=1e-12)

    def test_rejected_to_dropped_is_monotone(self):
        requests = [req(0, "rejected"), req(1, "pending")]
        before = fulfillment_ratio(requests)
        requests[0] = req(0, "dropped-off", t_ap=100, t_ad=135)
        assert fulfillment_ratio(requests) >= before


class TestTravel:
    def test_zero_distance(self):
        assert travel_time((3, 3), (3, 3), TravelModel()) == 0

    def test_unit_speed(self):
        assert travel_time((0, 0), (4, 6), TravelModel()) == 10

    def test_congestion_scales(self):
        model = TravelModel(congestion_factor=1.5)
        assert travel_time((0, 0), (4, 6), model) == 15

    def test_ceil_to_minutes(self):
        model = TravelModel(speed=3.0)
        assert travel_time((0, 0), (2, 2), model) == 2  # 4/3 -> 2

    def test_out_of_grid(self):
        with pytest.raises(DomainError):
            travel_time((0, 0), (25, 0), TravelModel(20, 20))

    @given(st.tuples(st.integers(0, 19), st.integers(0, 19)),
           st.tuples(st.integers(0, 19), st.integers(0, 19)),
           st.tuples(st.integers(0, 19), st.integers(0, 19)))
    @settings(max_examples=200)
    def test_symmetric_and_triangle(self, a, b, c):
        model = TravelModel()
        assert travel_time(a, b, model) == travel_time(b, a, model)
        assert travel_time(a, c, model) <= travel_time(a, b, model) + travel_time(b, c, model)


def two_vehicle_world():
    vehicles = [VehicleState(0, 3, 0, (0, 0)), VehicleState(1, 2, 0, (9, 9))]
    requests = [TripRequest(0, (1, 0), (5, 0), 10, 40)]
    return WorldState(0, vehicles, requests), TravelModel(12, 12)


class TestApplyAssignment:
    def test_insert_into_empty_route(self):
        world, model = two_vehicle_world()
        out = apply_assignment(world, 0, 0, 0, 1, model)
        v = out.vehicle(0)
        assert [s.kind for s in v.route] == ["pickup", "dropoff"]
        assert v.route[0].eta == travel_time((0, 0), (1, 0), model)
        assert v.route[1].eta == v.route[0].eta + travel_time((1, 0), (5, 0), model)
        assert out.request(0).status == "assigned"
        assert out.assignments[0] == 0
        # value semantics: the input is untouched
        assert world.request(0).status == "pending"
        assert world.vehicle(0).route == []

    def test_overcapacity_is_error(self):
        world, model = two_vehicle_world()
        world.requests[0] = TripRequest(0, (1, 0), (5, 0), 10, 40, passengers=3)
        with pytest.raises(DomainError):
            apply_assignment(world, 0, 1, 0, 1, model)  # vehicle 1 capacity 2

    def test_inoperable_vehicle_is_error(self):
        world, model = two_vehicle_world()
        world.vehicle(0).operable = False
        with pytest.raises(DomainError):
            apply_assignment(world, 0, 0, 0, 1, model)

    def test_dropoff_before_pickup_is_error(self):
        world, model = two_vehicle_world()
        with pytest.raises(DomainError):
            apply_assignment(world, 0, 0, 1, 1, model)

    def test_mid_route_insertion_shifts_later_etas_by_detour(self):
        world, model = two_vehicle_world()
        world.requests.append(TripRequest(1, (3, 0), (8, 0), 5, 60))
        first = apply_assignment(world, 1, 0, 0, 1, model)
        tail_before = [s.eta for s in first.vehicle(0).route]
        second = apply_assignment(first, 0, 0, 1, 2, model)
        route = second.vehicle(0).route
        assert [s.request_id for s in route] == [1, 0, 0, 1]
        # the final dropoff of request 1 moved back by the detour length
        base_len = travel_time((0, 0), (3, 0), model) + travel_time((3, 0), (8, 0), model)
        new_len = (travel_time((0, 0), (3, 0), model) + travel_time((3, 0), (1, 0), model)
                   + travel_time((1, 0), (5, 0), model) + travel_time((5, 0), (8, 0), model))
        assert route[-1].eta - tail_before[-1] == new_len - base_len

    def test_capacity_never_exceeded_along_profile(self):
        rng = random.Random(11)
        from tests.conftest import random_world
        for _ in range(80):
            world, model, request = random_world(rng)
            requests_by_id = {r.id: r for r in world.requests}
            for vehicle in world.vehicles:
                for i in range(len(vehicle.route) + 1):
                    for j in range(i + 1, len(vehicle.route) + 2):
                        try:
                            out = apply_assignment(world, request.id, vehicle.id, i, j, model)
                        except DomainError:
                            continue
                        profile = occupancy_profile(out.vehicle(vehicle.id),
                                                    {r.id: r for r in out.requests})
                        assert max(profile) <= vehicle.capacity


class TestAdvance:
    def test_serves_due_stops_and_sets_actuals(self):
        world, model = two_vehicle_world()
        committed = apply_assignment(world, 0, 0, 0, 1, model)
        done = advance(committed, 60)
        r = done.request(0)
        assert r.status == "dropped-off"
        assert r.t_ap == travel_time((0, 0), (1, 0), model)
        assert r.t_ad == r.t_ap + travel_time((1, 0), (5, 0), model)
        assert done.vehicle(0).route == []
        assert done.vehicle(0).location == (5, 0)

    def test_partial_advance_picks_up_only(self):
        world, model = two_vehicle_world()
        committed = apply_assignment(world, 0, 0, 0, 1, model)
        pickup_eta = committed.vehicle(0).route[0].eta
        mid = advance(committed, pickup_eta)
        assert mid.request(0).status == "in-transit"
        assert mid.vehicle(0).occupancy == 1

    def test_backwards_is_error(self):
        world, _ = two_vehicle_world()
        world.time = 50
        with pytest.raises(DomainError):
            advance(world, 10)


class TestDemand:
    def test_rate_must_be_positive(self):
        with pytest.raises(DomainError):
            generate_demand(0, 100, 0.0, TravelModel())

    def test_deterministic_for_seed(self):
        model = TravelModel()
        a = generate_demand(42, 480, 0.05, model)
        b = generate_demand(42, 480, 0.05, model)
        assert a == b

    def test_windows_feasible(self):
        model = TravelModel()
        for r in generate_demand(7, 480, 0.08, model):
            assert r.t_p < r.t_d
            assert r.t_d - r.t_p >= travel_time(r.origin, r.destination, model)

    def test_count_within_poisson_interval(self):
        # statistical oracle: total arrivals over 1000 seeds ~ Poisson(1000*480*0.05)
        model = TravelModel()
        total = sum(len(generate_demand(seed, 480, 0.05, model)) for seed in range(1000))
        mean = 1000 * 480 * 0.05
        half_width = 2.576 * math.sqrt(mean)
        assert mean - half_width <= total <= mean + half_width


class TestScenarioFile:
    def test_round_trip(self, golden_scenario, tmp_path):
        path = tmp_path / "scenario.json"
        dump_scenario(golden_scenario, str(path))
        loaded = load_scenario(str(path))
        assert scenario_to_doc(loaded) == scenario_to_doc(golden_scenario)

    def test_schema_checked(self):
        with pytest.raises(DomainError):
            scenario_from_doc({"schema": "scenario/v9", "travel": {}, "world": {}})

    def test_assignments_recovered_from_routes(self, golden_scenario):
        doc = scenario_to_doc(golden_scenario)
        del doc["world"]["assignments"]
        loaded = scenario_from_doc(doc)
        assert loaded.world.assignments[104] == 3

    def test_golden_shape(self, golden_scenario):
        world = golden_scenario.world
        assert len(world.vehicles) == 4
        assert world.request(0).t_p == 255
        assert world.vehicle(1).occupancy == 2
