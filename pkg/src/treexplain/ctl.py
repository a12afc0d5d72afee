"""CTL model checking over a search tree.

The tree is viewed as a Kripke structure: transitions are parent-to-child
edges plus a self-loop on every leaf (CTL needs a total relation), and each
state is labeled with propositions computed from the node's state summary
alone. Checking is the standard bottom-up labeling algorithm: EX by
successor lookup, EU/AU/EG by fixpoint iteration, the rest via dualities.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .logic import Atom, Binary, Bool, CtlFormula, Unary
from .planner import NodeState, SearchTree, scheduled_times

# proposition names; assigned/on_branch additionally take a vehicle argument
VOCABULARY = ("assigned", "rejected", "overcap", "delayed_pickup", "delayed_dropoff",
              "early_pickup", "early_dropoff", "fulfilled", "on_branch", "dropped_off")


@dataclass(slots=True)
class KripkeView:
    states: list[int]
    transitions: dict[int, list[int]]
    labeling: dict[int, frozenset[str]]
    root: int


def node_labels(state: NodeState, request_id: int) -> frozenset[str]:
    """Propositions that hold in one node's state summary."""
    labels: set[str] = set()
    requests = {r.id: r for r in state.requests}
    req = requests.get(request_id)

    for vehicle in state.vehicles:
        onboard = vehicle.occupancy
        if onboard > vehicle.capacity:
            labels.add("overcap")
        for stop in vehicle.route:
            r = requests.get(stop.request_id)
            pax = r.passengers if r is not None else 1
            onboard += pax if stop.kind == "pickup" else -pax
            if onboard > vehicle.capacity:
                labels.add("overcap")

    if req is not None:
        if req.status == "rejected":
            labels.add("rejected")
        if req.status in ("in-transit", "dropped-off"):
            labels.add("fulfilled")
        if req.status == "dropped-off":
            labels.add("dropped_off")
        vehicle_id = dict(state.assignments).get(request_id)
        if vehicle_id is not None and req.status != "rejected":
            labels.add("assigned")
            labels.add(f"assigned({vehicle_id})")
            labels.add(f"on_branch({vehicle_id})")
        times = scheduled_times(state, request_id)
        if times is not None:
            pickup, dropoff = times
            if pickup > req.t_p:
                labels.add("delayed_pickup")
            if pickup < req.t_p:
                labels.add("early_pickup")
            if dropoff > req.t_d:
                labels.add("delayed_dropoff")
            if dropoff < req.t_d:
                labels.add("early_dropoff")
    return frozenset(labels)


def build_kripke(tree: SearchTree, request_id: int) -> KripkeView:
    """Label every tree node and totalize the relation with leaf self-loops."""
    states = sorted(tree.nodes)
    transitions: dict[int, list[int]] = {}
    labeling: dict[int, frozenset[str]] = {}
    for nid in states:
        node = tree.nodes[nid]
        transitions[nid] = list(node.children) if node.children else [nid]
        labeling[nid] = node_labels(node.state, request_id)
    return KripkeView(states, transitions, labeling, tree.root)


def _atoms(formula: CtlFormula):
    if isinstance(formula, Atom):
        yield formula
    elif isinstance(formula, Unary):
        yield from _atoms(formula.sub)
    elif isinstance(formula, Binary):
        yield from _atoms(formula.left)
        yield from _atoms(formula.right)


def check(kripke: KripkeView, formula: CtlFormula) -> set[int]:
    """States satisfying the formula, by bottom-up labeling."""
    for atom in _atoms(formula):
        if atom.name not in VOCABULARY:
            raise DomainError(f"unknown proposition {atom.key()!r}")

    return _sat(kripke, formula)


def _sat(k: KripkeView, f: CtlFormula) -> set[int]:
    all_states = set(k.states)
    if isinstance(f, Bool):
        return set(all_states) if f.value else set()
    if isinstance(f, Atom):
        key = f.key()
        return {s for s in k.states if key in k.labeling[s]}
    if isinstance(f, Unary):
        if f.op == "!":
            return all_states - _sat(k, f.sub)
        if f.op == "EX":
            sub = _sat(k, f.sub)
            return {s for s in k.states if any(t in sub for t in k.transitions[s])}
        if f.op == "AX":
            sub = _sat(k, f.sub)
            return {s for s in k.states if all(t in sub for t in k.transitions[s])}
        if f.op == "EF":
            return _sat_eu(k, all_states, _sat(k, f.sub))
        if f.op == "AF":
            return _sat_au(k, all_states, _sat(k, f.sub))
        if f.op == "EG":
            return _sat_eg(k, _sat(k, f.sub))
        if f.op == "AG":
            return all_states - _sat_eu(k, all_states, all_states - _sat(k, f.sub))
    if isinstance(f, Binary):
        if f.op == "&":
            return _sat(k, f.left) & _sat(k, f.right)
        if f.op == "|":
            return _sat(k, f.left) | _sat(k, f.right)
        if f.op == "->":
            return (set(k.states) - _sat(k, f.left)) | _sat(k, f.right)
        if f.op == "EU":
            return _sat_eu(k, _sat(k, f.left), _sat(k, f.right))
        if f.op == "AU":
            return _sat_au(k, _sat(k, f.left), _sat(k, f.right))
    raise DomainError(f"unsupported CTL node: {f!r}")


def _sat_eu(k: KripkeView, left: set[int], right: set[int]) -> set[int]:
    sat = set(right)
    changed = True
    while changed:
        changed = False
        for s in k.states:
            if s not in sat and s in left and any(t in sat for t in k.transitions[s]):
                sat.add(s)
                changed = True
    return sat


def _sat_au(k: KripkeView, left: set[int], right: set[int]) -> set[int]:
    sat = set(right)
    changed = True
    while changed:
        changed = False
        for s in k.states:
            if s not in sat and s in left and all(t in sat for t in k.transitions[s]):
                sat.add(s)
                changed = True
    return sat


def _sat_eg(k: KripkeView, sub: set[int]) -> set[int]:
    sat = set(sub)
    changed = True
    while changed:
        changed = False
        for s in list(sat):
            if not any(t in sat for t in k.transitions[s]):
                sat.discard(s)
                changed = True
    return sat


def holds_at_root(kripke: KripkeView, formula: CtlFormula) -> bool:
    return kripke.root in check(kripke, formula)


def holds_at(kripke: KripkeView, formula: CtlFormula, state_id: int) -> bool:
    if state_id not in kripke.transitions:
        raise DomainError(f"no such state: {state_id}")
    return state_id in check(kripke, formula)
