"""Evidence scoring over a search tree.

Three passes mirror the formula hierarchy: base variables read one node
(the request's own fields, the root fleet snapshot, or the best-visited
node of a vehicle's assignment branch); derived variables aggregate a
branch with visit-weighted means; comparison templates relate two branch
scalars and record per-state implication outcomes for the provenance
trail. Repeated sub-variables are evaluated once through a shared cache,
and failures become error-valued results so one bad formula cannot poison
a batch.

What-if formulas (search/cong/exclude/multi/reassign) re-plan against the
context's scenario when one is attached; without a scenario they resolve
to an error value.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError
from .logic import (BaseVar, CompareVar, DerivedVar, EvidenceFormula, WhatIf,
                    print_node)
from .planner import (ASSIGN, MctsConfig, NodeState, PlanOutcome, SearchTree,
                      TreeNode, VehicleDigest, scheduled_times, whatif_congestion,
                      whatif_exclude, whatif_multi, whatif_reassign, whatif_search)
from .transit import PICKUP, RewardWeights, Scenario

MINUTES = "minutes"
COUNT = "count"
RATIO = "ratio"
BOOLEAN = "boolean"
REWARD = "reward"
VEHICLE = "vehicle_id"
PAIR = "pair"
ERROR = "error"

_NUMERIC_KINDS = (MINUTES, COUNT, RATIO, REWARD)


@dataclass(frozen=True, slots=True)
class EvidenceResult:
    formula: str
    kind: str
    value: object
    provenance: tuple[int, ...] = ()
    basis: int = 0
    detail: str | None = None

    def is_error(self) -> bool:
        return self.kind == ERROR

    def to_doc(self) -> dict:
        value = self.value
        if self.kind == PAIR:
            value = [self.value[0], self.value[1]]
        return {"formula": self.formula, "kind": self.kind, "value": value,
                "provenance": list(self.provenance), "basis": self.basis,
                "detail": self.detail}


@dataclass(slots=True)
class EvidenceQueryContext:
    tree: SearchTree
    request_id: int
    weights: RewardWeights
    scenario: Scenario | None = None
    config: MctsConfig | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    def root_state(self) -> NodeState:
        return self.tree.node(self.tree.root).state


# --- branch navigation -------------------------------------------------------

def branch_states(tree: SearchTree, vehicle_id: int) -> list[TreeNode] | None:
    """Visited nodes of the assign(vehicle) subtree, root child included."""
    child = tree.assign_child(vehicle_id)
    if child is None:
        return None
    return [tree.nodes[nid] for nid in sorted(tree.subtree_ids(child.id))
            if tree.nodes[nid].visits > 0]


def branch_leaves(tree: SearchTree, vehicle_id: int) -> list[TreeNode] | None:
    """Visited nodes of the branch with no visited children."""
    states = branch_states(tree, vehicle_id)
    if states is None:
        return None
    return [n for n in states
            if not any(tree.nodes[c].visits > 0 for c in n.children)]


def best_visited(states: list[TreeNode]) -> TreeNode:
    return max(states, key=lambda n: (n.visits, -n.id))


def _free_seat_profile(vehicle: VehicleDigest, state: NodeState) -> list[int]:
    requests = {r.id: r for r in state.requests}
    onboard = vehicle.occupancy
    profile = [vehicle.capacity - onboard]
    for stop in vehicle.route:
        pax = requests[stop.request_id].passengers if stop.request_id in requests else 1
        onboard += pax if stop.kind == PICKUP else -pax
        profile.append(vehicle.capacity - onboard)
    return profile


def _error(formula: EvidenceFormula, message: str) -> EvidenceResult:
    return EvidenceResult(print_node(formula), ERROR, message)


# --- base level ---------------------------------------------------------------

def score_base(var: BaseVar, ctx: EvidenceQueryContext) -> EvidenceResult:
    text = print_node(var)
    root = ctx.root_state()
    name = var.name

    if name in ("tp", "td"):
        req = root.request(ctx.request_id)
        if req is None:
            return _error(var, f"request {ctx.request_id} not in the tree's root state")
        value = req.t_p if name == "tp" else req.t_d
        return EvidenceResult(text, MINUTES, float(value), (ctx.tree.root,),
                              ctx.tree.node(ctx.tree.root).visits)

    if name in ("c", "o"):
        vehicle_id = var.args[-1]
        vehicle = root.vehicle(vehicle_id)
        if vehicle is None:
            return _error(var, f"no such vehicle: {vehicle_id}")
        value = vehicle.capacity if name == "c" else vehicle.occupancy
        return EvidenceResult(text, COUNT, value, (ctx.tree.root,),
                              ctx.tree.node(ctx.tree.root).visits)

    if name == "eta":
        vehicle_id = var.args[0]
        if root.vehicle(vehicle_id) is None:
            return _error(var, f"no such vehicle: {vehicle_id}")
        states = branch_states(ctx.tree, vehicle_id)
        if not states:
            return _error(var, f"assignment to vehicle {vehicle_id} was not explored")
        best = best_visited(states)
        times = scheduled_times(best.state, ctx.request_id)
        if times is None:
            return _error(var, f"request {ctx.request_id} has no schedule on that branch")
        return EvidenceResult(text, PAIR, (float(times[0]), float(times[1])),
                              (best.id,), best.visits)

    if name in ("sp", "sd"):
        req_index, vehicle_id = var.args
        request_id = ctx.request_id if req_index == 0 else req_index
        if root.vehicle(vehicle_id) is None:
            return _error(var, f"no such vehicle: {vehicle_id}")
        states = branch_states(ctx.tree, vehicle_id)
        if not states:
            return _error(var, f"assignment to vehicle {vehicle_id} was not explored")
        best = best_visited(states)
        vehicle = best.state.vehicle(vehicle_id)
        pickup_at = dropoff_at = None
        for idx, stop in enumerate(vehicle.route):
            if stop.request_id == request_id:
                if stop.kind == PICKUP:
                    pickup_at = idx
                else:
                    dropoff_at = idx
        if name == "sp":
            value = pickup_at if pickup_at is not None else 0
        else:
            start = pickup_at if pickup_at is not None else -1
            value = max(0, dropoff_at - start - 1) if dropoff_at is not None else 0
        return EvidenceResult(text, COUNT, value, (best.id,), best.visits)

    if name == "car":
        decision = ctx.tree.decision
        if decision.kind == ASSIGN:
            return EvidenceResult(text, VEHICLE, decision.vehicle_id, (ctx.tree.root,),
                                  ctx.tree.node(ctx.tree.root).visits)
        return EvidenceResult(text, VEHICLE, "rejected", (ctx.tree.root,),
                              ctx.tree.node(ctx.tree.root).visits)

    if name == "availablecar":
        req = root.request(ctx.request_id)
        if req is None:
            return _error(var, f"request {ctx.request_id} not in the tree's root state")
        count = sum(1 for v in root.vehicles
                    if v.operable and max(_free_seat_profile(v, root)) >= req.passengers)
        return EvidenceResult(text, COUNT, count, (ctx.tree.root,),
                              ctx.tree.node(ctx.tree.root).visits)

    return _error(var, f"unknown base variable {name!r}")


# --- derived level -------------------------------------------------------------

def _arg_vehicle(arg) -> int | None:
    if isinstance(arg, BaseVar) and arg.name in ("eta", "c"):
        return arg.args[0]
    if isinstance(arg, BaseVar) and arg.name in ("o", "sp", "sd"):
        return arg.args[1]
    return None


def _time_component(arg) -> str:
    """Which half of the eta pair a viod/vioa/pct* formula talks about."""
    if isinstance(arg, BaseVar) and arg.name == "td":
        return "dropoff"
    return "pickup"


def _target_scalar(arg, ctx: EvidenceQueryContext) -> float | None:
    if isinstance(arg, int):
        return float(arg)
    if isinstance(arg, BaseVar) and arg.name in ("tp", "td"):
        req = ctx.root_state().request(ctx.request_id)
        if req is None:
            return None
        return float(req.t_p if arg.name == "tp" else req.t_d)
    return None


def _component_value(state: NodeState, request_id: int, component: str) -> float | None:
    times = scheduled_times(state, request_id)
    if times is None:
        return None
    return float(times[0] if component == "pickup" else times[1])


def _weighted_component(states: list[TreeNode], request_id: int,
                        component: str) -> tuple[float, int, list[int]] | None:
    total = 0.0
    weight = 0
    ids: list[int] = []
    for node in states:
        value = _component_value(node.state, request_id, component)
        if value is None:
            continue
        total += node.visits * value
        weight += node.visits
        ids.append(node.id)
    if weight == 0:
        return None
    return total / weight, weight, ids


def score_derived(var: DerivedVar, ctx: EvidenceQueryContext) -> EvidenceResult:
    text = print_node(var)
    name = var.name
    tree = ctx.tree

    if name in ("viod", "vioa"):
        t_arg, eta_arg = var.args
        target = _target_scalar(t_arg, ctx)
        if target is None:
            return _error(var, "the first argument must be tp/td or a number")
        if isinstance(eta_arg, int):
            eta_value, basis, ids = float(eta_arg), 0, []
        else:
            if not (isinstance(eta_arg, BaseVar) and eta_arg.name == "eta"):
                return _error(var, "the second argument must be eta(v) or a number")
            vehicle_id = eta_arg.args[0]
            states = branch_states(tree, vehicle_id)
            if not states:
                return _error(var, f"assignment to vehicle {vehicle_id} was not explored")
            component = _time_component(t_arg)
            agg = _weighted_component(states, ctx.request_id, component)
            if agg is None:
                return _error(var, "no sampled schedules on that branch")
            eta_value, basis, ids = agg
        delta = eta_value - target if name == "viod" else target - eta_value
        return EvidenceResult(text, MINUTES, max(0.0, delta), tuple(ids), basis)

    if name in ("pctd", "pcta"):
        t_arg, eta_arg = var.args
        target = _target_scalar(t_arg, ctx)
        if target is None:
            return _error(var, "the first argument must be tp/td or a number")
        if not (isinstance(eta_arg, BaseVar) and eta_arg.name == "eta"):
            return _error(var, "the second argument must be eta(v)")
        vehicle_id = eta_arg.args[0]
        leaves = branch_leaves(tree, vehicle_id)
        if leaves is None:
            return _error(var, f"assignment to vehicle {vehicle_id} was not explored")
        component = _time_component(t_arg)
        hits = 0
        weight = 0
        ids = []
        for leaf in leaves:
            value = _component_value(leaf.state, ctx.request_id, component)
            if value is None:
                continue
            weight += leaf.visits
            ids.append(leaf.id)
            if (name == "pctd" and value > target) or (name == "pcta" and value < target):
                hits += leaf.visits
        if weight == 0:
            return _error(var, "no samples on that branch")
        return EvidenceResult(text, RATIO, hits / weight, tuple(ids), weight)

    if name in ("vcv", "vcvq"):
        c_arg, o_arg = var.args
        if isinstance(c_arg, int) and isinstance(o_arg, int):
            if name == "vcvq":
                return EvidenceResult(text, COUNT, c_arg - o_arg)
            req = ctx.root_state().request(ctx.request_id)
            pax = req.passengers if req is not None else 1
            return EvidenceResult(text, BOOLEAN, (c_arg - o_arg) < pax)
        vehicle_id = _arg_vehicle(c_arg)
        if vehicle_id is None:
            vehicle_id = _arg_vehicle(o_arg)
        if vehicle_id is None:
            return _error(var, "expected c(v)/o(i,v) arguments")
        root = ctx.root_state()
        vehicle = root.vehicle(vehicle_id)
        if vehicle is None:
            return _error(var, f"no such vehicle: {vehicle_id}")
        if name == "vcvq":
            return EvidenceResult(text, COUNT, vehicle.capacity - vehicle.occupancy,
                                  (tree.root,), tree.node(tree.root).visits)
        req = root.request(ctx.request_id)
        pax = req.passengers if req is not None else 1
        violated = any(free < pax for free in _free_seat_profile(vehicle, root))
        return EvidenceResult(text, BOOLEAN, violated, (tree.root,),
                              tree.node(tree.root).visits)

    if name in ("r", "rd1", "rd2"):
        vehicle_id = var.args[0]
        if not isinstance(vehicle_id, int):
            return _error(var, f"{name} takes a vehicle id")
        child = tree.assign_child(vehicle_id)
        if child is None:
            return _error(var, f"assignment to vehicle {vehicle_id} was not explored")
        if child.visits == 0:
            return _error(var, f"assignment to vehicle {vehicle_id} has no samples")
        if name == "r":
            value = child.total_value / child.visits
        elif name == "rd1":
            value = child.value_decomp[0] / child.visits
        else:
            value = child.value_decomp[1] / child.visits
        return EvidenceResult(text, REWARD, value, (child.id,), child.visits)

    return _error(var, f"unknown derived variable {name!r}")


# --- comparison level -----------------------------------------------------------

def _per_state_value(var, node: TreeNode, ctx: EvidenceQueryContext) -> float | None:
    """The operand's measure evaluated at a single state, where meaningful."""
    if isinstance(var, DerivedVar):
        if var.name in ("viod", "vioa"):
            target = _target_scalar(var.args[0], ctx)
            component = _time_component(var.args[0])
            value = _component_value(node.state, ctx.request_id, component)
            if target is None or value is None:
                return None
            delta = value - target if var.name == "viod" else target - value
            return max(0.0, delta)
        if var.name in ("pctd", "pcta"):
            target = _target_scalar(var.args[0], ctx)
            component = _time_component(var.args[0])
            value = _component_value(node.state, ctx.request_id, component)
            if target is None or value is None:
                return None
            if var.name == "pctd":
                return 1.0 if value > target else 0.0
            return 1.0 if value < target else 0.0
        if var.name == "r":
            return node.total_value / node.visits if node.visits else None
        if var.name == "rd1":
            return node.value_decomp[0] / node.visits if node.visits else None
        if var.name == "rd2":
            return node.value_decomp[1] / node.visits if node.visits else None
    return None


def _operand_vehicle(var) -> int | None:
    if isinstance(var, DerivedVar):
        if var.name in ("viod", "vioa", "pctd", "pcta"):
            return _arg_vehicle(var.args[1])
        if var.name in ("r", "rd1", "rd2") and isinstance(var.args[0], int):
            return var.args[0]
        if var.name in ("vcv", "vcvq"):
            return _arg_vehicle(var.args[0])
    if isinstance(var, BaseVar):
        return _arg_vehicle(var)
    return None


def _state_is_feasible(state: NodeState) -> bool:
    for vehicle in state.vehicles:
        if any(free < 0 for free in _free_seat_profile(vehicle, state)):
            return False
    return True


def score_compare(var: CompareVar, ctx: EvidenceQueryContext) -> EvidenceResult:
    text = print_node(var)
    left_res = _eval(var.operands[0], ctx)
    right_res = _eval(var.operands[1], ctx)
    if left_res.is_error():
        return _error(var, f"left operand failed: {left_res.value}")
    if right_res.is_error():
        return _error(var, f"right operand failed: {right_res.value}")
    if left_res.kind not in _NUMERIC_KINDS or right_res.kind not in _NUMERIC_KINDS:
        return _error(var, f"operands must be numeric scalars, got {left_res.kind}/{right_res.kind}")
    if left_res.kind != right_res.kind:
        return _error(var, f"operand type mismatch: {left_res.kind} vs {right_res.kind}")
    if var.name == "phi4" and left_res.kind != COUNT:
        return _error(var, f"phi4 compares counts, got {left_res.kind}")

    x = float(left_res.value)
    y = float(right_res.value)
    if var.name == "phi1":
        kind, value = BOOLEAN, x < y
    elif var.name == "phi2":
        kind, value = BOOLEAN, x > y
    elif var.name == "phi3":
        kind, value = left_res.kind, x - y
    else:
        kind, value = BOOLEAN, x < y

    provenance, detail = _implication_trail(var, ctx, x, y)
    if x == y and var.name in ("phi1", "phi2", "phi4"):
        detail = (detail + "; " if detail else "") + "tie"
    return EvidenceResult(text, kind, value, provenance,
                          left_res.basis + right_res.basis, detail or None)


def _implication_trail(var: CompareVar, ctx: EvidenceQueryContext,
                       left_agg: float, right_agg: float) -> tuple[tuple[int, ...], str]:
    """Per-state check on both operand branches: a state may contribute when
    it lies on the operand's branch and is feasible (no capacity breach)."""
    provenance: set[int] = set()
    holds = 0
    total = 0
    for operand, own_agg, other_agg, flip in (
            (var.operands[0], left_agg, right_agg, False),
            (var.operands[1], right_agg, left_agg, True)):
        vehicle_id = _operand_vehicle(operand)
        if vehicle_id is None:
            continue
        states = branch_states(ctx.tree, vehicle_id)
        if not states:
            continue
        for node in states:
            if not _state_is_feasible(node.state):
                continue  # P(s) false: implication holds vacuously, not recorded
            provenance.add(node.id)
            total += 1
            value = _per_state_value(operand, node, ctx)
            if value is None:
                continue
            x, y = (other_agg, value) if flip else (value, other_agg)
            if var.name == "phi1" or var.name == "phi4":
                outcome = x < y
            elif var.name == "phi2":
                outcome = x > y
            else:
                outcome = True  # phi3 measures a difference; no per-state predicate
            if outcome:
                holds += 1
    detail = f"per-state comparison holds at {holds} of {total} feasible branch states" if total else ""
    return tuple(sorted(provenance)), detail


# --- what-if level ----------------------------------------------------------------

def _decision_result(text: str, outcome: PlanOutcome) -> EvidenceResult:
    decision = outcome.decision
    if decision.kind == ASSIGN:
        value = decision.vehicle_id
        detail = f"re-plan decision: {decision.label()}"
    else:
        value = "rejected"
        detail = outcome.violation or "re-plan decision: reject"
    basis = outcome.tree.node(outcome.tree.root).visits
    return EvidenceResult(text, VEHICLE, value, (), basis, detail)


def score_whatif(var: WhatIf, ctx: EvidenceQueryContext) -> EvidenceResult:
    text = print_node(var)
    if ctx.scenario is None or ctx.config is None:
        return _error(var, "what-if formulas need a scenario and planner config")
    world = ctx.scenario.world
    model = ctx.scenario.travel
    try:
        request = world.request(ctx.request_id)
    except DomainError as exc:
        return _error(var, str(exc))

    try:
        if var.name == "search":
            return _decision_result(text, whatif_search(world, request, var.arg,
                                                        ctx.config, ctx.weights, model))
        if var.name == "cong":
            factor = float(var.arg) if var.arg >= 1 else 2.0
            outcome = whatif_congestion(world, request, factor, ctx.config, ctx.weights, model)
            result = _decision_result(text, outcome)
            return EvidenceResult(text, result.kind, result.value, result.provenance,
                                  result.basis, f"travel times scaled by {factor:g}; {result.detail}")
        if var.name == "exclude":
            return _decision_result(text, whatif_exclude(world, request, var.arg,
                                                         ctx.config, ctx.weights, model))
        if var.name == "multi":
            return _decision_result(text, whatif_multi(world, request, var.arg,
                                                       ctx.config, ctx.weights, model))
        if var.name == "reassign":
            results = whatif_reassign(world, var.arg, ctx.config, ctx.weights, model)
            moves = []
            for rid in sorted(results):
                d = results[rid].decision
                target = f"vehicle {d.vehicle_id}" if d.kind == ASSIGN else "rejected"
                moves.append(f"request {rid} -> {target}")
            detail = "; ".join(moves) if moves else f"vehicle {var.arg} had no passengers to move"
            return EvidenceResult(text, COUNT, len(results), (), 0, detail)
    except DomainError as exc:
        return _error(var, str(exc))
    return _error(var, f"unknown what-if operator {var.name!r}")


# --- batch entry point ---------------------------------------------------------------

def _eval(formula: EvidenceFormula, ctx: EvidenceQueryContext) -> EvidenceResult:
    key = print_node(formula)
    cached = ctx._cache.get(key)
    if cached is not None:
        return cached
    try:
        if isinstance(formula, BaseVar):
            result = score_base(formula, ctx)
        elif isinstance(formula, DerivedVar):
            result = score_derived(formula, ctx)
        elif isinstance(formula, CompareVar):
            result = score_compare(formula, ctx)
        elif isinstance(formula, WhatIf):
            result = score_whatif(formula, ctx)
        else:
            result = _error(formula, f"unsupported formula node {formula!r}")
    except DomainError as exc:
        result = _error(formula, str(exc))
    ctx._cache[key] = result
    return result


def _collect(formula: EvidenceFormula, kind) -> list:
    found = []
    if isinstance(formula, kind):
        found.append(formula)
    if isinstance(formula, DerivedVar):
        for arg in formula.args:
            if not isinstance(arg, int):
                found.extend(_collect(arg, kind))
    elif isinstance(formula, CompareVar):
        for operand in formula.operands:
            found.extend(_collect(operand, kind))
    return found


def score_all(formulas: list, ctx: EvidenceQueryContext) -> list[EvidenceResult]:
    """Score a formula list in hierarchy order (base, derived, comparison),
    reusing repeated sub-variables; one result per top-level formula."""
    for formula in formulas:
        for base in _collect(formula, BaseVar):
            _eval(base, ctx)
    for formula in formulas:
        for derived in _collect(formula, DerivedVar):
            _eval(derived, ctx)
    return [_eval(formula, ctx) for formula in formulas]
