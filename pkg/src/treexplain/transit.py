"""Paratransit world model.

Trip requests, vehicles with stop schedules, grid travel times, schedule
edits (insertion of a pickup/dropoff pair), a simple simulation step, a
Poisson demand generator, and the dispatch reward used by the planner.

The reward is a weighted sum of a trip-fulfillment ratio and a timing
component; the timing term is signed exactly as stated (an early pickup
contributes a negative delay, an early drop-off a positive slack), and
the weights decide whether timing is treated as a reward or a penalty.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field, replace

from .errors import DomainError

Coord = tuple[int, int]

PENDING = "pending"
ASSIGNED = "assigned"
IN_TRANSIT = "in-transit"
DROPPED_OFF = "dropped-off"
REJECTED = "rejected"
STATUSES = (PENDING, ASSIGNED, IN_TRANSIT, DROPPED_OFF, REJECTED)
FULFILLED = (IN_TRANSIT, DROPPED_OFF)

PICKUP = "pickup"
DROPOFF = "dropoff"

SCENARIO_SCHEMA = "scenario/v1"


@dataclass(slots=True)
class TripRequest:
    """One trip request. t_p/t_d are the requested pickup and drop-off
    minutes; t_ap/t_ad are the actual ones, present only once they happen."""

    id: int
    origin: Coord
    destination: Coord
    t_p: int
    t_d: int
    passengers: int = 1
    status: str = PENDING
    t_ap: int | None = None
    t_ad: int | None = None

    def __post_init__(self):
        if self.id < 0:
            raise DomainError(f"request id must be non-negative, got {self.id}")
        if self.t_p >= self.t_d:
            raise DomainError(f"request {self.id}: t_p ({self.t_p}) must precede t_d ({self.t_d})")
        if self.passengers < 1:
            raise DomainError(f"request {self.id}: passengers must be >= 1")
        if self.status not in STATUSES:
            raise DomainError(f"request {self.id}: unknown status {self.status!r}")
        if (self.t_ap is not None) != (self.status in FULFILLED):
            raise DomainError(f"request {self.id}: t_ap present iff status is in-transit or dropped-off")
        if (self.t_ad is not None) != (self.status == DROPPED_OFF):
            raise DomainError(f"request {self.id}: t_ad present iff status is dropped-off")
        if self.t_ad is not None and self.t_ap > self.t_ad:
            raise DomainError(f"request {self.id}: t_ap ({self.t_ap}) must not exceed t_ad ({self.t_ad})")

    def clone(self) -> "TripRequest":
        return TripRequest(self.id, self.origin, self.destination, self.t_p, self.t_d,
                           self.passengers, self.status, self.t_ap, self.t_ad)


@dataclass(frozen=True, slots=True)
class Stop:
    """A scheduled stop on a vehicle route."""

    kind: str  # "pickup" | "dropoff"
    request_id: int
    location: Coord
    eta: int


@dataclass(slots=True)
class VehicleState:
    id: int
    capacity: int
    occupancy: int = 0
    location: Coord = (0, 0)
    route: list[Stop] = field(default_factory=list)
    operable: bool = True

    def __post_init__(self):
        if self.id < 0:
            raise DomainError(f"vehicle id must be non-negative, got {self.id}")
        if self.capacity < 1:
            raise DomainError(f"vehicle {self.id}: capacity must be >= 1")
        if not 0 <= self.occupancy <= self.capacity:
            raise DomainError(f"vehicle {self.id}: occupancy {self.occupancy} outside [0, {self.capacity}]")

    def clone(self) -> "VehicleState":
        return VehicleState(self.id, self.capacity, self.occupancy, self.location,
                            list(self.route), self.operable)


@dataclass(slots=True)
class WorldState:
    """Fleet snapshot at a point in time. `assignments` maps request id to
    the vehicle that serves (or served) it; it survives stop completion so
    post-hoc evidence can still name the vehicle."""

    time: int = 0
    vehicles: list[VehicleState] = field(default_factory=list)
    requests: list[TripRequest] = field(default_factory=list)
    congestion_factor: float = 1.0
    assignments: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.congestion_factor <= 0:
            raise DomainError("congestion_factor must be positive")
        vids = [v.id for v in self.vehicles]
        if len(set(vids)) != len(vids):
            raise DomainError("duplicate vehicle ids")
        rids = [r.id for r in self.requests]
        if len(set(rids)) != len(rids):
            raise DomainError("duplicate request ids")

    def vehicle(self, vehicle_id: int) -> VehicleState:
        for v in self.vehicles:
            if v.id == vehicle_id:
                return v
        raise DomainError(f"no such vehicle: {vehicle_id}")

    def request(self, request_id: int) -> TripRequest:
        for r in self.requests:
            if r.id == request_id:
                return r
        raise DomainError(f"no such request: {request_id}")

    def clone(self) -> "WorldState":
        w = WorldState.__new__(WorldState)
        w.time = self.time
        w.vehicles = [v.clone() for v in self.vehicles]
        w.requests = [r.clone() for r in self.requests]
        w.congestion_factor = self.congestion_factor
        w.assignments = dict(self.assignments)
        return w


@dataclass(frozen=True, slots=True)
class RewardWeights:
    """Weights of the fulfillment and timing components. The default makes
    timing a small penalty; flip b's sign to treat slack as a reward."""

    a: float = 1.0
    b: float = -0.01

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError("reward weights must be finite")


@dataclass(frozen=True, slots=True)
class RewardBreakdown:
    total: float
    fulfillment_part: float  # a * w_f
    timing_part: float       # b * w_t


@dataclass(frozen=True, slots=True)
class TravelModel:
    """Manhattan travel on a width x height grid, ceil'd to whole minutes."""

    width: int = 20
    height: int = 20
    speed: float = 1.0  # grid cells per minute
    congestion_factor: float = 1.0

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise DomainError("grid dimensions must be positive")
        if self.speed <= 0:
            raise DomainError("speed must be positive")
        if self.congestion_factor <= 0:
            raise DomainError("congestion_factor must be positive")

    def contains(self, point: Coord) -> bool:
        x, y = point
        return 0 <= x < self.width and 0 <= y < self.height

    def with_congestion(self, factor: float) -> "TravelModel":
        return replace(self, congestion_factor=self.congestion_factor * factor)


@dataclass(slots=True)
class Scenario:
    """A loadable world: fleet snapshot plus the travel model it lives on."""

    world: WorldState
    travel: TravelModel

    def effective_travel(self) -> TravelModel:
        if self.world.congestion_factor == 1.0:
            return self.travel
        return self.travel.with_congestion(self.world.congestion_factor)


def travel_time(origin: Coord, destination: Coord, model: TravelModel) -> int:
    """Minutes to travel between two grid cells, rounded up."""
    if not model.contains(origin):
        raise DomainError(f"coordinate {origin} outside {model.width}x{model.height} grid")
    if not model.contains(destination):
        raise DomainError(f"coordinate {destination} outside {model.width}x{model.height} grid")
    dist = abs(origin[0] - destination[0]) + abs(origin[1] - destination[1])
    if dist == 0:
        return 0
    return math.ceil(dist / model.speed * model.congestion_factor)


def fulfillment_ratio(requests: list[TripRequest]) -> float:
    """Fraction of requests currently in transit or dropped off."""
    if not requests:
        raise DomainError("fulfillment ratio is undefined for an empty request list")
    return sum(1 for r in requests if r.status in FULFILLED) / len(requests)


def timing_component(requests: list[TripRequest]) -> float:
    """Sum of per-trip timing terms.

    in-transit: t_ap - t_p; dropped-off: (t_d - t_ad) + (t_ap - t_p);
    every other status contributes 0.
    """
    total = 0.0
    for r in requests:
        if r.status == IN_TRANSIT:
            if r.t_ap is None:
                raise DomainError(f"request {r.id} is in-transit but has no actual pickup time")
            total += r.t_ap - r.t_p
        elif r.status == DROPPED_OFF:
            if r.t_ap is None or r.t_ad is None:
                raise DomainError(f"request {r.id} is dropped-off but lacks actual times")
            total += (r.t_d - r.t_ad) + (r.t_ap - r.t_p)
    return total


def reward(requests: list[TripRequest], weights: RewardWeights) -> RewardBreakdown:
    """a * fulfillment + b * timing, with the two parts kept separate."""
    f_part = weights.a * fulfillment_ratio(requests)
    t_part = weights.b * timing_component(requests)
    return RewardBreakdown(f_part + t_part, f_part, t_part)


def occupancy_profile(vehicle: VehicleState, requests_by_id: dict[int, TripRequest]) -> list[int]:
    """Onboard count now and after each scheduled stop."""
    profile = [vehicle.occupancy]
    onboard = vehicle.occupancy
    for stop in vehicle.route:
        req = requests_by_id.get(stop.request_id)
        if req is None:
            raise DomainError(f"vehicle {vehicle.id} route references unknown request {stop.request_id}")
        onboard += req.passengers if stop.kind == PICKUP else -req.passengers
        profile.append(onboard)
    return profile


def _rebuild_etas(location: Coord, now: int, stops: list[Stop], model: TravelModel) -> list[Stop]:
    out = []
    t = now
    here = location
    for stop in stops:
        t = t + travel_time(here, stop.location, model)
        here = stop.location
        out.append(Stop(stop.kind, stop.request_id, stop.location, t))
    return out


def _check_route(vehicle: VehicleState, requests_by_id: dict[int, TripRequest]) -> None:
    seen_pickup: set[int] = set()
    last_eta = None
    for stop in vehicle.route:
        if last_eta is not None and stop.eta < last_eta:
            raise DomainError(f"vehicle {vehicle.id}: stop etas must be non-decreasing")
        last_eta = stop.eta
        if stop.kind == PICKUP:
            seen_pickup.add(stop.request_id)
        elif stop.request_id not in seen_pickup:
            req = requests_by_id.get(stop.request_id)
            # a lone dropoff is fine when the passenger is already onboard
            if req is None or req.status != IN_TRANSIT:
                raise DomainError(f"vehicle {vehicle.id}: dropoff for request {stop.request_id} precedes its pickup")
    for onboard in occupancy_profile(vehicle, requests_by_id):
        if onboard > vehicle.capacity:
            raise DomainError(f"vehicle {vehicle.id}: schedule exceeds capacity {vehicle.capacity}")
        if onboard < 0:
            raise DomainError(f"vehicle {vehicle.id}: schedule drops below zero occupancy")


def apply_assignment(state: WorldState, request_id: int, vehicle_id: int,
                     pickup_pos: int, dropoff_pos: int, model: TravelModel) -> WorldState:
    """Insert the request's pickup/dropoff into the vehicle's route.

    pickup_pos indexes the current route; dropoff_pos indexes the route
    after the pickup was inserted, so dropoff_pos > pickup_pos always.
    Returns a new state; the input is untouched.
    """
    new_state = state.clone()
    _apply_assignment_mut(new_state, request_id, vehicle_id, pickup_pos, dropoff_pos, model)
    return new_state


def _apply_assignment_mut(state: WorldState, request_id: int, vehicle_id: int,
                          pickup_pos: int, dropoff_pos: int, model: TravelModel) -> None:
    vehicle = state.vehicle(vehicle_id)
    request = state.request(request_id)
    if not vehicle.operable:
        raise DomainError(f"vehicle {vehicle_id} is not operable")
    if request.status != PENDING:
        raise DomainError(f"request {request_id} is not pending (status {request.status})")
    if not 0 <= pickup_pos <= len(vehicle.route):
        raise DomainError(f"pickup position {pickup_pos} outside route of length {len(vehicle.route)}")
    if not pickup_pos < dropoff_pos <= len(vehicle.route) + 1:
        raise DomainError("dropoff must come after pickup and within the extended route")

    stops = list(vehicle.route)
    stops.insert(pickup_pos, Stop(PICKUP, request_id, request.origin, 0))
    stops.insert(dropoff_pos, Stop(DROPOFF, request_id, request.destination, 0))
    em = model.with_congestion(state.congestion_factor) if state.congestion_factor != 1.0 else model
    vehicle.route = _rebuild_etas(vehicle.location, state.time, stops, em)

    requests_by_id = {r.id: r for r in state.requests}
    _check_route(vehicle, requests_by_id)
    request.status = ASSIGNED
    state.assignments[request_id] = vehicle_id


def advance(state: WorldState, until: int) -> WorldState:
    """Simulate forward: serve every stop with eta <= until. Actual pickup
    and drop-off times are the stop etas (no waiting for early arrivals)."""
    new_state = state.clone()
    _advance_mut(new_state, until)
    return new_state


def _advance_mut(state: WorldState, until: int) -> None:
    if until < state.time:
        raise DomainError(f"cannot advance backwards from {state.time} to {until}")
    requests_by_id = {r.id: r for r in state.requests}
    for vehicle in state.vehicles:
        served = 0
        for stop in vehicle.route:
            if stop.eta > until:
                break
            req = requests_by_id[stop.request_id]
            if stop.kind == PICKUP:
                req.t_ap = stop.eta
                req.status = IN_TRANSIT
                vehicle.occupancy += req.passengers
            else:
                req.t_ad = stop.eta
                req.status = DROPPED_OFF
                vehicle.occupancy -= req.passengers
            vehicle.location = stop.location
            served += 1
        if served:
            del vehicle.route[:served]
    state.time = until


def completion_time(state: WorldState) -> int:
    """Last scheduled eta across the fleet, or the current time if idle."""
    etas = [stop.eta for v in state.vehicles for stop in v.route]
    return max(etas, default=state.time)


def generate_demand(seed: int, horizon: int, rate: float, model: TravelModel,
                    start_time: int = 0, first_id: int = 0) -> list[TripRequest]:
    """Poisson request arrivals over [start_time, start_time + horizon].

    Origins and destinations are uniform distinct grid cells; the drop-off
    window is the direct ride time plus a small uniform slack. Deterministic
    for a fixed seed.
    """
    if rate <= 0:
        raise DomainError("demand rate must be positive")
    rng = random.Random(seed)
    out: list[TripRequest] = []
    t = float(start_time)
    next_id = first_id
    while True:
        t += rng.expovariate(rate)
        if t > start_time + horizon:
            break
        t_p = math.ceil(t)
        origin = (rng.randrange(model.width), rng.randrange(model.height))
        while True:
            destination = (rng.randrange(model.width), rng.randrange(model.height))
            if destination != origin:
                break
        t_d = t_p + travel_time(origin, destination, model) + rng.randint(5, 20)
        out.append(TripRequest(next_id, origin, destination, t_p, t_d))
        next_id += 1
    return out


# --- scenario file format ---------------------------------------------------

def _request_to_doc(r: TripRequest) -> dict:
    return {"id": r.id, "origin": list(r.origin), "destination": list(r.destination),
            "t_p": r.t_p, "t_d": r.t_d, "passengers": r.passengers, "status": r.status,
            "t_ap": r.t_ap, "t_ad": r.t_ad}


def _request_from_doc(doc: dict) -> TripRequest:
    return TripRequest(doc["id"], tuple(doc["origin"]), tuple(doc["destination"]),
                       doc["t_p"], doc["t_d"], doc.get("passengers", 1),
                       doc.get("status", PENDING), doc.get("t_ap"), doc.get("t_ad"))


def _stop_to_doc(s: Stop) -> dict:
    return {"kind": s.kind, "request_id": s.request_id, "location": list(s.location), "eta": s.eta}


def _vehicle_to_doc(v: VehicleState) -> dict:
    return {"id": v.id, "capacity": v.capacity, "occupancy": v.occupancy,
            "location": list(v.location), "operable": v.operable,
            "route": [_stop_to_doc(s) for s in v.route]}


def _vehicle_from_doc(doc: dict) -> VehicleState:
    route = [Stop(s["kind"], s["request_id"], tuple(s["location"]), s["eta"])
             for s in doc.get("route", [])]
    return VehicleState(doc["id"], doc["capacity"], doc.get("occupancy", 0),
                        tuple(doc["location"]), route, doc.get("operable", True))


def world_to_doc(world: WorldState) -> dict:
    return {"time": world.time,
            "congestion_factor": world.congestion_factor,
            "vehicles": [_vehicle_to_doc(v) for v in world.vehicles],
            "requests": [_request_to_doc(r) for r in world.requests],
            "assignments": {str(k): v for k, v in sorted(world.assignments.items())}}


def world_from_doc(doc: dict) -> WorldState:
    world = WorldState(doc.get("time", 0),
                       [_vehicle_from_doc(v) for v in doc.get("vehicles", [])],
                       [_request_from_doc(r) for r in doc.get("requests", [])],
                       doc.get("congestion_factor", 1.0),
                       {int(k): v for k, v in doc.get("assignments", {}).items()})
    # recover assignments implied by scheduled stops when the file omits them
    for vehicle in world.vehicles:
        for stop in vehicle.route:
            world.assignments.setdefault(stop.request_id, vehicle.id)
    return world


def scenario_to_doc(scenario: Scenario) -> dict:
    return {"schema": SCENARIO_SCHEMA,
            "travel": {"width": scenario.travel.width, "height": scenario.travel.height,
                       "speed": scenario.travel.speed,
                       "congestion_factor": scenario.travel.congestion_factor},
            "world": world_to_doc(scenario.world)}


def scenario_from_doc(doc: dict) -> Scenario:
    schema = doc.get("schema")
    if schema != SCENARIO_SCHEMA:
        raise DomainError(f"unsupported scenario schema: {schema!r} (expected {SCENARIO_SCHEMA})")
    t = doc["travel"]
    travel = TravelModel(t["width"], t["height"], t.get("speed", 1.0), t.get("congestion_factor", 1.0))
    return Scenario(world_from_doc(doc["world"]), travel)


def load_scenario(path: str) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return scenario_from_doc(json.load(fh))


def dump_scenario(scenario: Scenario, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario_to_doc(scenario), fh, indent=2, sort_keys=True)
        fh.write("\n")
