"""UCT search over vehicle-assignment actions.

At each decision epoch the planner searches a tree whose root decides the
newly arrived request: one child per capacity-feasible vehicle (carrying
that vehicle's cheapest insertion) plus an explicit reject child so
rejection has a comparable value estimate. Deeper levels alternate sampled
demand arrivals with greedy-committed decisions; rollouts continue with
cheapest-insertion dispatch on one sampled demand trajectory. Every node
backs up the reward together with its fulfillment/timing decomposition, so
branch-level reward evidence is exact rather than re-derived.

Trees are immutable once returned and serialize to a versioned document
that round-trips losslessly; that document is the contract between the
planner, the evidence scorer, the CLI, and the UI.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field, replace

from .errors import DomainError
from .transit import (ASSIGNED, DROPOFF, IN_TRANSIT, PENDING, PICKUP, REJECTED,
                      RewardBreakdown, RewardWeights, Scenario, Stop, TravelModel,
                      TripRequest, VehicleState, WorldState, _advance_mut,
                      _apply_assignment_mut, completion_time, reward, travel_time)

ASSIGN = "assign"
REJECT = "reject"
DEMAND = "demand"

TREE_SCHEMA = "tree/v1"


@dataclass(frozen=True, slots=True)
class Action:
    kind: str
    vehicle_id: int | None = None
    pickup_pos: int | None = None
    dropoff_pos: int | None = None
    request_id: int | None = None

    def label(self) -> str:
        if self.kind == ASSIGN:
            return f"assign(vehicle {self.vehicle_id})"
        if self.kind == REJECT:
            return "reject"
        return f"demand(request {self.request_id})"


@dataclass(frozen=True, slots=True)
class MctsConfig:
    iterations: int = 200
    exploration: float = math.sqrt(2)
    rollout_horizon: int = 60
    max_children: int = 16
    seed: int = 0
    demand_rate: float = 0.02  # simulated future requests per minute

    def __post_init__(self):
        if self.iterations < 1:
            raise DomainError("iterations must be >= 1")
        if self.exploration <= 0:
            raise DomainError("exploration constant must be positive")
        if self.rollout_horizon < 1:
            raise DomainError("rollout horizon must be >= 1 minute")
        if self.max_children < 2:
            raise DomainError("max_children must allow at least one assignment plus reject")
        if self.demand_rate <= 0:
            raise DomainError("demand rate must be positive")


# --- per-node state summaries -------------------------------------------

@dataclass(frozen=True, slots=True)
class VehicleDigest:
    id: int
    capacity: int
    occupancy: int
    operable: bool
    location: tuple[int, int]
    route: tuple[Stop, ...]


@dataclass(frozen=True, slots=True)
class RequestDigest:
    id: int
    status: str
    t_p: int
    t_d: int
    t_ap: int | None
    t_ad: int | None
    passengers: int


@dataclass(frozen=True, slots=True)
class NodeState:
    time: int
    vehicles: tuple[VehicleDigest, ...]
    requests: tuple[RequestDigest, ...]
    assignments: tuple[tuple[int, int], ...]

    def vehicle(self, vehicle_id: int) -> VehicleDigest | None:
        for v in self.vehicles:
            if v.id == vehicle_id:
                return v
        return None

    def request(self, request_id: int) -> RequestDigest | None:
        for r in self.requests:
            if r.id == request_id:
                return r
        return None


def digest_state(world: WorldState) -> NodeState:
    return NodeState(
        world.time,
        tuple(VehicleDigest(v.id, v.capacity, v.occupancy, v.operable, v.location,
                            tuple(v.route)) for v in world.vehicles),
        tuple(RequestDigest(r.id, r.status, r.t_p, r.t_d, r.t_ap, r.t_ad, r.passengers)
              for r in world.requests),
        tuple(sorted(world.assignments.items())),
    )


def scheduled_times(state: NodeState, request_id: int) -> tuple[int, int] | None:
    """(pickup, dropoff) minutes for the request in this state: actual times
    once they happened, scheduled stop etas otherwise; None if unscheduled."""
    req = state.request(request_id)
    if req is None:
        return None
    pickup, dropoff = req.t_ap, req.t_ad
    if pickup is None or dropoff is None:
        for vehicle in state.vehicles:
            for stop in vehicle.route:
                if stop.request_id != request_id:
                    continue
                if stop.kind == PICKUP and pickup is None:
                    pickup = stop.eta
                elif stop.kind != PICKUP and dropoff is None:
                    dropoff = stop.eta
    if pickup is None or dropoff is None:
        return None
    return pickup, dropoff


@dataclass(slots=True)
class TreeNode:
    id: int
    parent: int | None
    action: Action
    state: NodeState
    depth: int
    visits: int = 0
    total_value: float = 0.0
    value_decomp: tuple[float, float] = (0.0, 0.0)
    children: list[int] = field(default_factory=list)

    def mean_value(self) -> float:
        return self.total_value / self.visits if self.visits else float("-inf")


@dataclass(slots=True)
class SearchTree:
    nodes: dict[int, TreeNode]
    root: int
    decision: Action
    config: MctsConfig
    seed: int

    def node(self, node_id: int) -> TreeNode:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise DomainError(f"no such tree node: {node_id}") from None

    def root_children(self) -> list[TreeNode]:
        return [self.nodes[c] for c in self.nodes[self.root].children]

    def assign_child(self, vehicle_id: int) -> TreeNode | None:
        for child in self.root_children():
            if child.action.kind == ASSIGN and child.action.vehicle_id == vehicle_id:
                return child
        return None

    def subtree_ids(self, node_id: int) -> list[int]:
        out: list[int] = []
        stack = [node_id]
        while stack:
            nid = stack.pop()
            out.append(nid)
            stack.extend(reversed(self.nodes[nid].children))
        return out


@dataclass(slots=True)
class PlanOutcome:
    decision: Action
    tree: SearchTree
    violation: str | None = None


# --- insertion feasibility -------------------------------------------------

def _insertion_feasible(vehicle: VehicleState, request: TripRequest,
                        requests_by_id: dict[int, TripRequest],
                        pickup_pos: int, dropoff_pos: int) -> bool:
    onboard = vehicle.occupancy
    candidate = list(vehicle.route)
    candidate.insert(pickup_pos, Stop(PICKUP, request.id, request.origin, 0))
    candidate.insert(dropoff_pos, Stop(DROPOFF, request.id, request.destination, 0))
    for stop in candidate:
        if stop.request_id == request.id:
            pax = request.passengers
        else:
            pax = requests_by_id[stop.request_id].passengers
        onboard += pax if stop.kind == PICKUP else -pax
        if onboard > vehicle.capacity:
            return False
    return True


def _route_duration(location: tuple[int, int], stops: list[Stop], model: TravelModel) -> int:
    total = 0
    here = location
    for stop in stops:
        total += travel_time(here, stop.location, model)
        here = stop.location
    return total


def best_insertion(vehicle: VehicleState, request: TripRequest,
                   requests_by_id: dict[int, TripRequest],
                   model: TravelModel) -> tuple[int, int, int] | None:
    """Cheapest capacity-feasible (detour_cost, pickup_pos, dropoff_pos), or
    None when no insertion fits. Ties break on the earliest positions."""
    if not vehicle.operable:
        return None
    base = _route_duration(vehicle.location, list(vehicle.route), model)
    best: tuple[int, int, int] | None = None
    n = len(vehicle.route)
    for i in range(n + 1):
        for j in range(i + 1, n + 2):
            if not _insertion_feasible(vehicle, request, requests_by_id, i, j):
                continue
            stops = list(vehicle.route)
            stops.insert(i, Stop(PICKUP, request.id, request.origin, 0))
            stops.insert(j, Stop(DROPOFF, request.id, request.destination, 0))
            cost = _route_duration(vehicle.location, stops, model) - base
            if best is None or (cost, i, j) < best:
                best = (cost, i, j)
    return best


def has_capacity_for(vehicle: VehicleState, request: TripRequest,
                     requests_by_id: dict[int, TripRequest]) -> bool:
    """True when at least one insertion keeps the onboard count within
    capacity at every route point. Reduces to an adjacent pickup/dropoff
    pair fitting somewhere along the occupancy profile."""
    if not vehicle.operable:
        return False
    onboard = vehicle.occupancy
    if onboard + request.passengers <= vehicle.capacity:
        return True
    for stop in vehicle.route:
        pax = requests_by_id[stop.request_id].passengers
        onboard += pax if stop.kind == PICKUP else -pax
        if onboard + request.passengers <= vehicle.capacity:
            return True
    return False


def feasible_vehicles(state: WorldState, request: TripRequest) -> list[int]:
    """Operable vehicles that admit at least one capacity-feasible insertion."""
    requests_by_id = {r.id: r for r in state.requests}
    requests_by_id.setdefault(request.id, request)
    return sorted(v.id for v in state.vehicles
                  if has_capacity_for(v, request, requests_by_id))


# --- the search -------------------------------------------------------------

class _Search:
    def __init__(self, world: WorldState, request_id: int, config: MctsConfig,
                 weights: RewardWeights, model: TravelModel,
                 allowed_vehicles: set[int] | None, restrict_root: bool):
        self.base_model = model
        self.model = (model.with_congestion(world.congestion_factor)
                      if world.congestion_factor != 1.0 else model)
        self.config = config
        self.weights = weights
        self.request_id = request_id
        self.allowed = allowed_vehicles
        self.restrict_root = restrict_root
        self.rng = random.Random(config.seed)
        self.horizon = world.time + config.rollout_horizon
        self.nodes: dict[int, TreeNode] = {}
        self.worlds: dict[int, WorldState] = {}
        self.expanded: set[int] = set()
        self.next_request_id = max((r.id for r in world.requests), default=-1) + 1
        self.root_world = world

    def run(self) -> SearchTree:
        root = self._new_node(None, Action(DEMAND, request_id=self.request_id),
                              self.root_world, 0)
        self._expand(root)
        for _ in range(self.config.iterations):
            node = root
            while node.children:
                node = self._select_child(node)
            if node.visits > 0 and node.id not in self.expanded:
                self._expand(node)
                if node.children:
                    node = self.nodes[node.children[0]]
            value = self._rollout(self.worlds[node.id])
            self._backprop(node, value)
        decision = self._decide(root)
        tree = SearchTree(self.nodes, root.id, decision, self.config, self.config.seed)
        return tree

    def _new_node(self, parent: TreeNode | None, action: Action,
                  world: WorldState, depth: int) -> TreeNode:
        node = TreeNode(len(self.nodes), parent.id if parent else None,
                        action, digest_state(world), depth)
        self.nodes[node.id] = node
        self.worlds[node.id] = world
        if parent is not None:
            parent.children.append(node.id)
        return node

    def _pending(self, world: WorldState, node: TreeNode) -> TripRequest | None:
        pending = [r for r in world.requests if r.status == PENDING]
        if not pending:
            return None
        if node.parent is None:
            for r in pending:
                if r.id == self.request_id:
                    return r
        return min(pending, key=lambda r: (r.t_p, r.id))

    def _expand(self, node: TreeNode) -> None:
        self.expanded.add(node.id)
        world = self.worlds[node.id]
        request = self._pending(world, node)
        if request is not None:
            self._expand_decision(node, world, request)
        else:
            self._expand_demand(node, world)

    def _expand_decision(self, node: TreeNode, world: WorldState, request: TripRequest) -> None:
        requests_by_id = {r.id: r for r in world.requests}
        restricted = self.restrict_root and node.parent is None
        assigns = 0
        for vehicle in sorted(world.vehicles, key=lambda v: v.id):
            if restricted and (self.allowed is None or vehicle.id not in self.allowed):
                continue
            if assigns >= self.config.max_children - 1:
                break
            found = best_insertion(vehicle, request, requests_by_id, self.model)
            if found is None:
                continue
            _, i, j = found
            child_world = world.clone()
            _apply_assignment_mut(child_world, request.id, vehicle.id, i, j, self.base_model)
            self._new_node(node, Action(ASSIGN, vehicle.id, i, j, request.id),
                           child_world, node.depth + 1)
            assigns += 1
        if not restricted:
            child_world = world.clone()
            child_world.request(request.id).status = REJECTED
            self._new_node(node, Action(REJECT, request_id=request.id),
                           child_world, node.depth + 1)

    def _expand_demand(self, node: TreeNode, world: WorldState) -> None:
        arrival = world.time + self.rng.expovariate(self.config.demand_rate)
        t_p = math.ceil(arrival)
        if t_p > self.horizon:
            return  # terminal: no further demand inside the rollout horizon
        request = self._sample_request(t_p)
        child_world = world.clone()
        _advance_mut(child_world, t_p)
        child_world.requests.append(request)
        self._new_node(node, Action(DEMAND, request_id=request.id),
                       child_world, node.depth + 1)

    def _sample_request(self, t_p: int) -> TripRequest:
        model = self.base_model
        origin = (self.rng.randrange(model.width), self.rng.randrange(model.height))
        while True:
            destination = (self.rng.randrange(model.width), self.rng.randrange(model.height))
            if destination != origin:
                break
        t_d = t_p + travel_time(origin, destination, self.model) + self.rng.randint(5, 20)
        request = TripRequest(self.next_request_id, origin, destination, t_p, t_d)
        self.next_request_id += 1
        return request

    def _select_child(self, node: TreeNode) -> TreeNode:
        for cid in node.children:
            if self.nodes[cid].visits == 0:
                return self.nodes[cid]
        log_n = math.log(node.visits)
        best: TreeNode | None = None
        best_score = float("-inf")
        for cid in node.children:
            child = self.nodes[cid]
            score = (child.total_value / child.visits
                     + self.config.exploration * math.sqrt(log_n / child.visits))
            if score > best_score:
                best, best_score = child, score
        return best

    def _greedy_commit(self, world: WorldState, request: TripRequest,
                       requests_by_id: dict[int, TripRequest]) -> None:
        best: tuple[int, int, int] | None = None
        best_vehicle = None
        for vehicle in world.vehicles:
            found = best_insertion(vehicle, request, requests_by_id, self.model)
            if found is not None and (best is None or found < best
                                      or (found == best and vehicle.id < best_vehicle)):
                best, best_vehicle = found, vehicle.id
        if best is None:
            request.status = REJECTED
        else:
            _, i, j = best
            _apply_assignment_mut(world, request.id, best_vehicle, i, j, self.base_model)

    def _rollout(self, world: WorldState) -> tuple[float, float]:
        w = world.clone()
        requests_by_id = {r.id: r for r in w.requests}
        for request in sorted((r for r in w.requests if r.status == PENDING),
                              key=lambda r: (r.t_p, r.id)):
            self._greedy_commit(w, request, requests_by_id)
        t = float(w.time)
        rollout_id = self.next_request_id
        while True:
            t += self.rng.expovariate(self.config.demand_rate)
            t_p = math.ceil(t)
            if t_p > self.horizon:
                break
            _advance_mut(w, t_p)
            model = self.base_model
            origin = (self.rng.randrange(model.width), self.rng.randrange(model.height))
            while True:
                destination = (self.rng.randrange(model.width), self.rng.randrange(model.height))
                if destination != origin:
                    break
            t_d = t_p + travel_time(origin, destination, self.model) + self.rng.randint(5, 20)
            request = TripRequest(rollout_id, origin, destination, t_p, t_d)
            rollout_id += 1
            w.requests.append(request)
            requests_by_id[request.id] = request
            self._greedy_commit(w, request, requests_by_id)
        _advance_mut(w, self.horizon)
        breakdown = reward(w.requests, self.weights)
        return breakdown.fulfillment_part, breakdown.timing_part

    def _backprop(self, node: TreeNode, value: tuple[float, float]) -> None:
        f_part, t_part = value
        current: TreeNode | None = node
        while current is not None:
            current.visits += 1
            current.total_value += f_part + t_part
            d0, d1 = current.value_decomp
            current.value_decomp = (d0 + f_part, d1 + t_part)
            current = self.nodes[current.parent] if current.parent is not None else None

    def _decide(self, root: TreeNode) -> Action:
        best: TreeNode | None = None
        for cid in root.children:
            child = self.nodes[cid]
            if child.action.kind != ASSIGN or child.visits == 0:
                continue
            if best is None:
                best = child
                continue
            q_best, q_child = best.mean_value(), child.mean_value()
            if q_child > q_best or (q_child == q_best
                                    and child.action.vehicle_id < best.action.vehicle_id):
                best = child
        if best is None:
            return Action(REJECT, request_id=self.request_id)
        return best.action


def _normalized_world(state: WorldState, request: TripRequest) -> WorldState:
    world = state.clone()
    if all(r.id != request.id for r in world.requests):
        world.requests.append(request.clone())
    return world


def plan(state: WorldState, request: TripRequest, config: MctsConfig,
         weights: RewardWeights, model: TravelModel,
         allowed_vehicles: set[int] | None = None,
         restrict_root: bool = False) -> PlanOutcome:
    """Search assignments for one pending request and pick the root action
    with the best mean value; reject only when no vehicle is feasible."""
    if not state.vehicles:
        raise DomainError("cannot plan with no vehicles in the state")
    if request.status != PENDING:
        raise DomainError(f"request {request.id} is not pending (status {request.status})")
    world = _normalized_world(state, request)
    search = _Search(world, request.id, config, weights, model,
                     allowed_vehicles, restrict_root)
    tree = search.run()
    return PlanOutcome(tree.decision, tree)


def _violation_outcome(state: WorldState, request: TripRequest, config: MctsConfig,
                       message: str) -> PlanOutcome:
    world = _normalized_world(state, request)
    root = TreeNode(0, None, Action(DEMAND, request_id=request.id), digest_state(world), 0)
    tree = SearchTree({0: root}, 0, Action(REJECT, request_id=request.id), config, config.seed)
    return PlanOutcome(tree.decision, tree, violation=message)


def whatif_search(state: WorldState, request: TripRequest, vehicle_id: int,
                  config: MctsConfig, weights: RewardWeights,
                  model: TravelModel) -> PlanOutcome:
    """Re-plan with the root locked to assigning the given vehicle."""
    vehicle = state.vehicle(vehicle_id)
    if not vehicle.operable:
        return _violation_outcome(state, request, config,
                                  f"vehicle {vehicle_id} is not operable")
    requests_by_id = {r.id: r for r in state.requests}
    requests_by_id.setdefault(request.id, request)
    if not has_capacity_for(vehicle, request, requests_by_id):
        return _violation_outcome(
            state, request, config,
            f"vehicle {vehicle_id} cannot fit {request.passengers} passenger(s) "
            f"anywhere along its route (capacity {vehicle.capacity})")
    return plan(state, request, config, weights, model,
                allowed_vehicles={vehicle_id}, restrict_root=True)


def whatif_congestion(state: WorldState, request: TripRequest, factor: float,
                      config: MctsConfig, weights: RewardWeights,
                      model: TravelModel) -> PlanOutcome:
    """Re-plan with every travel time scaled up by the given factor."""
    if factor < 1:
        raise DomainError(f"congestion factor must be >= 1, got {factor}")
    world = state.clone()
    world.congestion_factor *= factor
    return plan(world, world.request(request.id) if any(r.id == request.id for r in world.requests) else request,
                config, weights, model)


def whatif_exclude(state: WorldState, request: TripRequest, vehicle_id: int,
                   config: MctsConfig, weights: RewardWeights,
                   model: TravelModel) -> PlanOutcome:
    """Re-plan as if the given vehicle had broken down."""
    world = state.clone()
    world.vehicle(vehicle_id).operable = False
    target = world.request(request.id) if any(r.id == request.id for r in world.requests) else request
    return plan(world, target, config, weights, model)


def whatif_multi(state: WorldState, request: TripRequest, n: int,
                 config: MctsConfig, weights: RewardWeights,
                 model: TravelModel) -> PlanOutcome:
    """Re-plan with the request's passenger count set to n."""
    if n < 1:
        raise DomainError(f"passenger count must be >= 1, got {n}")
    world = _normalized_world(state, request)
    world.request(request.id).passengers = n
    return plan(world, world.request(request.id), config, weights, model)


def whatif_reassign(state: WorldState, vehicle_id: int, config: MctsConfig,
                    weights: RewardWeights,
                    model: TravelModel) -> dict[int, PlanOutcome]:
    """Break the vehicle down and re-plan everyone it was committed to,
    in requested-pickup order, against the reduced fleet."""
    world = state.clone()
    vehicle = world.vehicle(vehicle_id)
    vehicle.operable = False
    affected = [r for r in world.requests
                if world.assignments.get(r.id) == vehicle_id
                and r.status in (ASSIGNED, IN_TRANSIT)]
    for request in affected:
        if request.status == IN_TRANSIT:
            vehicle.occupancy -= request.passengers
            request.t_ap = None
        request.status = PENDING
        del world.assignments[request.id]
    vehicle.route = []

    results: dict[int, PlanOutcome] = {}
    for request in sorted(affected, key=lambda r: (r.t_p, r.id)):
        outcome = plan(world, request, config, weights, model)
        if outcome.decision.kind == ASSIGN:
            d = outcome.decision
            _apply_assignment_mut(world, request.id, d.vehicle_id,
                                  d.pickup_pos, d.dropoff_pos, model)
        else:
            request.status = REJECTED
        results[request.id] = outcome
    return results


# --- episodes ----------------------------------------------------------------

@dataclass(slots=True)
class EpisodeResult:
    reward: RewardBreakdown
    decisions: list[tuple[int, Action]]
    assigned: int
    rejected: int


def run_episode(scenario: Scenario, requests: list[TripRequest], config: MctsConfig,
                weights: RewardWeights, policy: str = "mcts",
                policy_seed: int = 0) -> EpisodeResult:
    """Feed requests through the fleet one decision epoch at a time.

    policy "mcts" plans each epoch with the tree search; "random" assigns a
    uniformly random feasible vehicle (its cheapest insertion) as a baseline.
    """
    if policy not in ("mcts", "random"):
        raise DomainError(f"unknown policy {policy!r}")
    world = scenario.world.clone()
    model = scenario.travel
    rng = random.Random(policy_seed)
    decisions: list[tuple[int, Action]] = []
    for incoming in sorted(requests, key=lambda r: (r.t_p, r.id)):
        _advance_mut(world, max(world.time, incoming.t_p))
        world.requests.append(incoming.clone())
        request = world.request(incoming.id)
        if policy == "mcts":
            outcome = plan(world, request, replace(config, seed=config.seed + request.id),
                           weights, model)
            decision = outcome.decision
        else:
            feasible = feasible_vehicles(world, request)
            if feasible:
                vid = rng.choice(feasible)
                requests_by_id = {r.id: r for r in world.requests}
                _, i, j = best_insertion(world.vehicle(vid), request, requests_by_id, model)
                decision = Action(ASSIGN, vid, i, j, request.id)
            else:
                decision = Action(REJECT, request_id=request.id)
        if decision.kind == ASSIGN:
            _apply_assignment_mut(world, request.id, decision.vehicle_id,
                                  decision.pickup_pos, decision.dropoff_pos, model)
        else:
            request.status = REJECTED
        decisions.append((request.id, decision))
    _advance_mut(world, completion_time(world))
    breakdown = reward(world.requests, weights)
    assigned = sum(1 for _, d in decisions if d.kind == ASSIGN)
    return EpisodeResult(breakdown, decisions, assigned, len(decisions) - assigned)


# --- serialization -----------------------------------------------------------

def action_to_doc(action: Action) -> dict:
    doc: dict = {"kind": action.kind}
    if action.vehicle_id is not None:
        doc["vehicle_id"] = action.vehicle_id
    if action.pickup_pos is not None:
        doc["pickup_pos"] = action.pickup_pos
        doc["dropoff_pos"] = action.dropoff_pos
    if action.request_id is not None:
        doc["request_id"] = action.request_id
    return doc


def action_from_doc(doc: dict) -> Action:
    return Action(doc["kind"], doc.get("vehicle_id"), doc.get("pickup_pos"),
                  doc.get("dropoff_pos"), doc.get("request_id"))


def _state_to_doc(state: NodeState) -> dict:
    return {
        "time": state.time,
        "vehicles": [{"id": v.id, "capacity": v.capacity, "occupancy": v.occupancy,
                      "operable": v.operable, "location": list(v.location),
                      "route": [{"kind": s.kind, "request_id": s.request_id,
                                 "location": list(s.location), "eta": s.eta}
                                for s in v.route]}
                     for v in state.vehicles],
        "requests": [{"id": r.id, "status": r.status, "t_p": r.t_p, "t_d": r.t_d,
                      "t_ap": r.t_ap, "t_ad": r.t_ad, "passengers": r.passengers}
                     for r in state.requests],
        "assignments": {str(rid): vid for rid, vid in state.assignments},
    }


def _state_from_doc(doc: dict) -> NodeState:
    return NodeState(
        doc["time"],
        tuple(VehicleDigest(v["id"], v["capacity"], v["occupancy"], v["operable"],
                            tuple(v["location"]),
                            tuple(Stop(s["kind"], s["request_id"], tuple(s["location"]), s["eta"])
                                  for s in v["route"]))
              for v in doc["vehicles"]),
        tuple(RequestDigest(r["id"], r["status"], r["t_p"], r["t_d"], r["t_ap"],
                            r["t_ad"], r["passengers"])
              for r in doc["requests"]),
        tuple(sorted((int(k), v) for k, v in doc["assignments"].items())),
    )


def config_to_doc(config: MctsConfig) -> dict:
    return {"iterations": config.iterations, "exploration": config.exploration,
            "rollout_horizon": config.rollout_horizon, "max_children": config.max_children,
            "seed": config.seed, "demand_rate": config.demand_rate}


def config_from_doc(doc: dict) -> MctsConfig:
    return MctsConfig(doc["iterations"], doc["exploration"], doc["rollout_horizon"],
                      doc["max_children"], doc["seed"], doc["demand_rate"])


def tree_to_doc(tree: SearchTree) -> dict:
    return {
        "schema": TREE_SCHEMA,
        "seed": tree.seed,
        "root": tree.root,
        "decision": action_to_doc(tree.decision),
        "config": config_to_doc(tree.config),
        "nodes": [{"id": n.id, "parent": n.parent, "action": action_to_doc(n.action),
                   "N": n.visits, "W": n.total_value,
                   "decomp": [n.value_decomp[0], n.value_decomp[1]],
                   "depth": n.depth, "state": _state_to_doc(n.state)}
                  for n in sorted(tree.nodes.values(), key=lambda n: n.id)],
    }


def tree_from_doc(doc: dict) -> SearchTree:
    schema = doc.get("schema")
    if schema != TREE_SCHEMA:
        raise DomainError(f"unsupported tree schema: {schema!r} (expected {TREE_SCHEMA})")
    nodes: dict[int, TreeNode] = {}
    for nd in doc["nodes"]:
        node = TreeNode(nd["id"], nd["parent"], action_from_doc(nd["action"]),
                        _state_from_doc(nd["state"]), nd["depth"], nd["N"], nd["W"],
                        (nd["decomp"][0], nd["decomp"][1]))
        nodes[node.id] = node
    for node in sorted(nodes.values(), key=lambda n: n.id):
        if node.parent is not None:
            nodes[node.parent].children.append(node.id)
    return SearchTree(nodes, doc["root"], action_from_doc(doc["decision"]),
                      config_from_doc(doc["config"]), doc["seed"])


def tree_to_json(tree: SearchTree) -> str:
    """Canonical serialization; byte-stable for fixtures and digests."""
    return json.dumps(tree_to_doc(tree), sort_keys=True, separators=(",", ":"))


def tree_from_json(text: str) -> SearchTree:
    return tree_from_doc(json.loads(text))
