"""Dispatcher query-type catalog.

31 pre-defined query types: 26 post-hoc types answered by scoring evidence
formulas against the current search tree, and 5 what-if types answered by
re-planning. Each entry carries the canonical query text, the gold formula
list, few-shot examples for LLM logic generation, and a keyword signature
for the offline fallback classifier.

Entry 10's gold formula duplicates entry 7 even though the query asks about
drop-off advancement; it ships verbatim with a `suspected_typo` note giving
the formula the wording implies, rather than being silently corrected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .logic import parse_formula

POST_HOC = "post_hoc"
BACKGROUND = "background"

LEVEL_BASE = "base"
LEVEL_DERIVED = "derived"
LEVEL_COMPARISON = "comparison"
LEVEL_WHATIF = "whatif"


@dataclass(frozen=True)
class QueryType:
    id: int
    category: str
    level: str
    text: str                                  # canonical query
    gold: str                                  # canonical formula list
    signature: tuple[tuple[str, float], ...]   # (regex, weight)
    fewshot: tuple[tuple[str, str], ...]       # (example query, formula)
    suspected_typo: str | None = None


CATALOG: tuple[QueryType, ...] = (
    QueryType(
        1, POST_HOC, LEVEL_BASE,
        "Can you tell me the scheduled pick-up time for the passenger?",
        "tp(0)",
        ((r"pick[- ]?up|picked up|pick up", 2), (r"scheduled|requested|supposed|expect", 2),
         (r"\btime\b|when", 2)),
        (("When is the passenger supposed to be picked up?", "tp(0)"),
         ("At what time was the pickup requested?", "tp(0)")),
    ),
    QueryType(
        2, POST_HOC, LEVEL_BASE,
        "Could you tell me when the passenger is scheduled to be dropped off?",
        "td(0)",
        ((r"drop[- ]?off|dropped off|drop off", 2), (r"scheduled|requested|supposed", 2),
         (r"\btime\b|when", 2)),
        (("When is the passenger supposed to be dropped off?", "td(0)"),
         ("At what time is the drop-off scheduled?", "td(0)")),
    ),
    QueryType(
        3, POST_HOC, LEVEL_BASE,
        "Can you provide the current passenger count for vehicle 1?",
        "o(0, 1)",
        ((r"passenger count|how many (passengers|riders|people)", 4),
         (r"on ?board|occupancy|carrying|riding|\bon vehicle\b", 2), (r"current", 1)),
        (("How many passengers are currently on vehicle 2?", "o(0, 2)"),
         ("What is vehicle 0's occupancy at the moment?", "o(0, 0)")),
    ),
    QueryType(
        4, POST_HOC, LEVEL_DERIVED,
        "What is the remaining passenger capacity of vehicle 2?",
        "vcvq(c(2), o(1, 2))",
        ((r"remain|left|spare|free seats?|seats? (free|available)|room for", 3),
         (r"capacity|seats?", 3), (r"can .{0,30}(take|fit|hold)", 3)),
        (("How much capacity does vehicle 1 have left?", "vcvq(c(1), o(1, 1))"),
         ("How many free seats are there on vehicle 3?", "vcvq(c(3), o(1, 3))")),
    ),
    QueryType(
        5, POST_HOC, LEVEL_BASE,
        "What is the number of stops a passenger will face when traveling in vehicle 1?",
        "sp(0, 1); sd(0, 1)",
        ((r"stop count|(number|count|how many) (of )?stops|how many stops|count the stops", 4),
         (r"stops?", 2), (r"face|traveling|intermediate|experience", 1)),
        (("How many stops will the rider make on vehicle 2?", "sp(0, 2); sd(0, 2)"),
         ("What's the stop count for the passenger if they ride vehicle 3?", "sp(0, 3); sd(0, 3)")),
    ),
    QueryType(
        6, POST_HOC, LEVEL_BASE,
        "Could you indicate the expected arrival time for the passenger if they're assigned to vehicle 1?",
        "eta(1)",
        ((r"arrival time|\beta\b|expected arrival|estimated time|when .{0,30}arrive|arrive", 4),
         (r"expected|estimated|would", 1), (r"assigned|takes them|gets the assignment", 1)),
        (("What's the ETA for the passenger if vehicle 2 takes them?", "eta(2)"),
         ("When would the passenger arrive if assigned to vehicle 0?", "eta(0)")),
    ),
    QueryType(
        7, POST_HOC, LEVEL_DERIVED,
        "Could you let me know the likely delay duration in the pick-up time for a passenger assigned to vehicle 3?",
        "viod(tp(3), eta(3))",
        ((r"delay|wait|later than|late", 3), (r"duration|how long|how much later|length", 3),
         (r"pick", 2)),
        (("How long of a pickup delay should we expect with vehicle 1?", "viod(tp(1), eta(1))"),
         ("What delay duration is likely for the pick-up if vehicle 2 is assigned?", "viod(tp(2), eta(2))")),
    ),
    QueryType(
        8, POST_HOC, LEVEL_DERIVED,
        "Could you let me know the likely delay duration in the drop-off time for a passenger assigned to vehicle 3?",
        "viod(td(3), eta(3))",
        ((r"delay|wait|later than|late", 3), (r"duration|how long|how much later|length", 3),
         (r"drop|destination|arriv", 2)),
        (("How long of a drop-off delay should we expect with vehicle 1?", "viod(td(1), eta(1))"),
         ("Estimate the drop-off delay for a passenger on vehicle 2.", "viod(td(2), eta(2))")),
    ),
    QueryType(
        9, POST_HOC, LEVEL_DERIVED,
        "Could you clarify the expected time of advancement in the pick-up time for a passenger when they are assigned to vehicle 3?",
        "vioa(tp(3), eta(3))",
        ((r"advancement|advance|how early|ahead of (the )?(request|schedule)|earlier than (the )?(request|planned)|move.{0,15}(up|ahead)", 4),
         (r"pick", 3), (r"how (much|far)|by how much|expected time", 2)),
        (("How early could the pickup happen if vehicle 2 takes the trip?", "vioa(tp(2), eta(2))"),
         ("What's the expected pickup time advancement with vehicle 1?", "vioa(tp(1), eta(1))")),
    ),
    QueryType(
        10, POST_HOC, LEVEL_DERIVED,
        "Could you clarify the expected time of advancement in the drop-off time for a passenger when they are assigned to vehicle 3?",
        "viod(tp(3), eta(3))",
        ((r"advancement|advance|how early|ahead of (the )?(request|schedule)|earlier than (the )?(request|planned)|move.{0,15}(up|ahead)", 4),
         (r"drop|destination", 3), (r"how (much|far)|by how much|expected time", 2)),
        (("How early could the drop-off happen if vehicle 2 takes the trip?", "viod(tp(2), eta(2))"),
         ("What's the expected drop-off time advancement with vehicle 1?", "viod(tp(1), eta(1))")),
        suspected_typo="vioa(td(3), eta(3))",
    ),
    QueryType(
        11, POST_HOC, LEVEL_DERIVED,
        "What is the expected rate of delay for picking up the passenger when traveling in vehicle 1?",
        "pctd(tp(1), eta(1))",
        ((r"rate|percent|how often|how frequently|frequen", 4), (r"chances?|odds", 2),
         (r"delay|late|miss", 2), (r"pick", 2)),
        (("What's the rate of pickup delays on vehicle 2?", "pctd(tp(2), eta(2))"),
         ("How often would the passenger be picked up late by vehicle 0?", "pctd(tp(0), eta(0))")),
    ),
    QueryType(
        12, POST_HOC, LEVEL_DERIVED,
        "What is the expected rate of delay for dropping off the passenger when traveling in vehicle 1?",
        "pctd(td(1), eta(1))",
        ((r"rate|percent|how often|how frequently|frequen", 4), (r"chances?|odds", 2),
         (r"delay|late|miss", 2), (r"drop|destination", 2)),
        (("What's the rate of drop-off delays on vehicle 2?", "pctd(td(2), eta(2))"),
         ("How often would the passenger be dropped off late by vehicle 0?", "pctd(td(0), eta(0))")),
    ),
    QueryType(
        13, POST_HOC, LEVEL_DERIVED,
        "How likely is it that the passenger will be picked up ahead of schedule in vehicle 1?",
        "pcta(tp(1), eta(1))",
        ((r"how likely|likelihood|probability|chance|odds", 4),
         (r"ahead|early|earlier|sooner|before the requested", 2), (r"pick", 2)),
        (("How likely is an early pickup on vehicle 2?", "pcta(tp(2), eta(2))"),
         ("What's the probability of an early pick-up with vehicle 3?", "pcta(tp(3), eta(3))")),
    ),
    QueryType(
        14, POST_HOC, LEVEL_DERIVED,
        "How likely is it that the passenger will reach their destination ahead of schedule in vehicle 1?",
        "pcta(td(1), eta(1))",
        ((r"how likely|likelihood|probability|chance|odds", 4),
         (r"ahead|early|earlier|sooner|before the requested", 2),
         (r"destination|drop|arriv|reach", 2)),
        (("How likely is an early arrival at the destination on vehicle 2?", "pcta(td(2), eta(2))"),
         ("What's the probability of an early drop-off with vehicle 3?", "pcta(td(3), eta(3))")),
    ),
    QueryType(
        15, POST_HOC, LEVEL_BASE,
        "What factors lead to delays when a passenger is assigned to vehicle 1?",
        "sp(0, 1); sd(0, 1)",
        ((r"factors?|causes?|contribut|leads? to|why|behind|explain what", 3),
         (r"delay", 3), (r"rides?|assigned|takes", 1)),
        (("What causes delays when the passenger rides vehicle 2?", "sp(0, 2); sd(0, 2)"),
         ("What factors contribute to delays for a passenger on vehicle 3?", "sp(0, 3); sd(0, 3)")),
    ),
    QueryType(
        16, POST_HOC, LEVEL_COMPARISON,
        "What were the reasons for choosing vehicle 2 over vehicle 3 for this assignment?",
        "vcv(c(3), o(1, 3)); phi3(r(2), r(3)); phi3(rd1(2), rd1(3)); phi3(rd2(2), rd2(3))",
        ((r"over vehicle|instead of|rather than|better choice", 4),
         (r"choos|chose|chosen|select|prefer|choice|pick", 2),
         (r"why|reasons?|made|justif", 2)),
        (("Why did the algorithm prefer vehicle 1 over vehicle 3?",
          "vcv(c(3), o(1, 3)); phi3(r(1), r(3)); phi3(rd1(1), rd1(3)); phi3(rd2(1), rd2(3))"),
         ("Explain the reasons for selecting vehicle 2 instead of vehicle 0.",
          "vcv(c(0), o(1, 0)); phi3(r(2), r(0)); phi3(rd1(2), rd1(0)); phi3(rd2(2), rd2(0))")),
    ),
    QueryType(
        17, POST_HOC, LEVEL_DERIVED,
        "What led to the algorithm's decision to overlook vehicle 1?",
        "vcv(c(1), o(1, 1))",
        ((r"overlook|skip|ignore|ruled? .{0,10}out|passed over|wasn't .{0,25}(considered|chosen|used)|not consider|kept .{0,30}from", 5),
         (r"why|what led|what kept", 1)),
        (("Why did the planner skip vehicle 2?", "vcv(c(2), o(1, 2))"),
         ("What ruled vehicle 0 out for this assignment?", "vcv(c(0), o(1, 0))")),
    ),
    QueryType(
        18, POST_HOC, LEVEL_COMPARISON,
        "How does vehicle 1 outperform vehicle 2 when capacity constraints are not a factor?",
        "phi1(vioa(tp(1), eta(1)), vioa(tp(2), eta(2))); "
        "phi1(vioa(td(1), eta(1)), vioa(td(2), eta(2))); "
        "phi1(viod(tp(1), eta(1)), viod(tp(2), eta(2))); "
        "phi1(viod(td(1), eta(1)), viod(td(2), eta(2))); "
        "phi4(sp(0, 1), sp(0, 2)); phi4(sd(0, 1), sd(0, 2))",
        ((r"outperform|better than|superior|beat|stronger", 4),
         (r"capacity (aside|isn't|is not)|aside from capacity|ignor|not (an issue|a factor|a concern)|seat limits", 3),
         (r"how does|in what ways|what makes", 1)),
        (("How does vehicle 2 outperform vehicle 3 if capacity isn't an issue?",
          "phi1(vioa(tp(2), eta(2)), vioa(tp(3), eta(3))); "
          "phi1(vioa(td(2), eta(2)), vioa(td(3), eta(3))); "
          "phi1(viod(tp(2), eta(2)), viod(tp(3), eta(3))); "
          "phi1(viod(td(2), eta(2)), viod(td(3), eta(3))); "
          "phi4(sp(0, 2), sp(0, 3)); phi4(sd(0, 2), sd(0, 3))"),
         ("Setting capacity aside, why is vehicle 0 superior to vehicle 1?",
          "phi1(vioa(tp(0), eta(0)), vioa(tp(1), eta(1))); "
          "phi1(vioa(td(0), eta(0)), vioa(td(1), eta(1))); "
          "phi1(viod(tp(0), eta(0)), viod(tp(1), eta(1))); "
          "phi1(viod(td(0), eta(0)), viod(td(1), eta(1))); "
          "phi4(sp(0, 0), sp(0, 1)); phi4(sd(0, 0), sd(0, 1))")),
    ),
    QueryType(
        19, POST_HOC, LEVEL_COMPARISON,
        "Is vehicle 1 more successful at minimizing time violations compared to vehicle 2?",
        "phi1(vioa(tp(1), eta(1)), vioa(tp(2), eta(2))); "
        "phi1(vioa(td(1), eta(1)), vioa(td(2), eta(2))); "
        "phi1(viod(tp(1), eta(1)), viod(tp(2), eta(2))); "
        "phi1(viod(td(1), eta(1)), viod(td(2), eta(2)))",
        ((r"violations?", 4), (r"minimiz|lower|fewer|avoid|cutting|less", 2),
         (r"compared|than|versus", 1)),
        (("Does vehicle 2 keep time violations lower than vehicle 3?",
          "phi1(vioa(tp(2), eta(2)), vioa(tp(3), eta(3))); "
          "phi1(vioa(td(2), eta(2)), vioa(td(3), eta(3))); "
          "phi1(viod(tp(2), eta(2)), viod(tp(3), eta(3))); "
          "phi1(viod(td(2), eta(2)), viod(td(3), eta(3)))"),
         ("Is vehicle 0 better at avoiding schedule violations than vehicle 1?",
          "phi1(vioa(tp(0), eta(0)), vioa(tp(1), eta(1))); "
          "phi1(vioa(td(0), eta(0)), vioa(td(1), eta(1))); "
          "phi1(viod(tp(0), eta(0)), viod(tp(1), eta(1))); "
          "phi1(viod(td(0), eta(0)), viod(td(1), eta(1)))")),
    ),
    QueryType(
        20, POST_HOC, LEVEL_COMPARISON,
        "Does vehicle 1 offer a route with fewer stops than vehicle 2?",
        "phi4(sp(0, 1), sp(0, 2)); phi4(sd(0, 1), sd(0, 2))",
        ((r"fewer stops|less stops|stop count lower|stops than", 4), (r"stops?", 2),
         (r"fewer|less|lower|than", 2), (r"route", 1)),
        (("Does vehicle 1 involve fewer stops than vehicle 3?",
          "phi4(sp(0, 1), sp(0, 3)); phi4(sd(0, 1), sd(0, 3))"),
         ("Is the stop count lower on vehicle 2 than on vehicle 0?",
          "phi4(sp(0, 2), sp(0, 0)); phi4(sd(0, 2), sd(0, 0))")),
    ),
    QueryType(
        21, POST_HOC, LEVEL_DERIVED,
        "Is there a possibility of a delay for the passenger if they are assigned to vehicle 3?",
        "viod(tp(3), eta(3)); viod(td(3), eta(3))",
        ((r"possibility|possible|risk|is there (a|any)", 4), (r"could|might", 2),
         (r"delay|late", 3)),
        (("Is there any risk of delay with vehicle 0?", "viod(tp(0), eta(0)); viod(td(0), eta(0))"),
         ("Is a delay possible when the rider is assigned to vehicle 2?",
          "viod(tp(2), eta(2)); viod(td(2), eta(2))")),
    ),
    QueryType(
        22, POST_HOC, LEVEL_DERIVED,
        "Is it possible that the passenger will arrive earlier than expected if assigned to vehicle 3?",
        "vioa(tp(3), eta(3)); vioa(td(3), eta(3))",
        ((r"is it possible|possible|possibility|any chance", 4), (r"could|might", 2),
         (r"earlier|early|ahead|sooner", 3), (r"arriv|reach|gets? there|show up", 1)),
        (("Could the rider arrive ahead of schedule on vehicle 0?",
          "vioa(tp(0), eta(0)); vioa(td(0), eta(0))"),
         ("Is an early arrival possible if vehicle 2 takes the assignment?",
          "vioa(tp(2), eta(2)); vioa(td(2), eta(2))")),
    ),
    QueryType(
        23, POST_HOC, LEVEL_COMPARISON,
        "What is the difference in reward when the passenger is assigned to vehicle 1 versus vehicle 2?",
        "phi3(r(1), r(2)); phi3(rd1(1), rd1(2)); phi3(rd2(1), rd2(2))",
        ((r"rewards?", 5), (r"differ|gap|delta|between|compare|versus", 2)),
        (("Compare the reward for vehicle 1 against vehicle 3.",
          "phi3(r(1), r(3)); phi3(rd1(1), rd1(3)); phi3(rd2(1), rd2(3))"),
         ("How do the rewards differ between vehicle 3 and vehicle 0?",
          "phi3(r(3), r(0)); phi3(rd1(3), rd1(0)); phi3(rd2(3), rd2(0))")),
    ),
    QueryType(
        24, POST_HOC, LEVEL_DERIVED,
        "Why was vehicle 1 chosen for the passenger's assignment?",
        "vcv(c(1), o(1, 1)); r(1); rd1(1); rd2(1)",
        ((r"why (was|did)|reason|what made|explain why", 3),
         (r"choos|chose|selected|select|picked|went with|go(es)? with|get th", 3),
         (r"assign|trip|rider|passenger", 1)),
        (("Why did vehicle 2 get this assignment?", "vcv(c(2), o(1, 2)); r(2); rd1(2); rd2(2)"),
         ("What made the planner choose vehicle 0 for this rider?",
          "vcv(c(0), o(1, 0)); r(0); rd1(0); rd2(0)")),
    ),
    QueryType(
        25, POST_HOC, LEVEL_BASE,
        "Which vehicle is scheduled to pick up the passenger?",
        "car(1)",
        ((r"which (vehicle|car|bus|one)", 5), (r"pick|assign|serve|handle|taking", 1)),
        (("Which vehicle got assigned to this rider?", "car(1)"),
         ("Which bus will serve this request?", "car(1)")),
    ),
    QueryType(
        26, POST_HOC, LEVEL_BASE,
        "How many vehicles are available right now to pick up the passenger?",
        "availablecar(1)",
        ((r"how many (vehicles|cars|buses)|count of available vehicles|available vehicles", 5),
         (r"available|free|right now|currently|can take|could serve", 2)),
        (("How many vehicles can take the passenger right now?", "availablecar(1)"),
         ("How many cars are currently available for this pickup?", "availablecar(1)")),
    ),
    QueryType(
        27, BACKGROUND, LEVEL_WHATIF,
        "What are the potential consequences of placing the passenger in alternative vehicle 1?",
        "search(1)",
        ((r"consequences?|what would happen|what then|outcome|result", 3),
         (r"instead|alternativ|placed?|placing|moved?|suppose|goes to|assign", 3),
         (r"what if|if we", 1)),
        (("What would happen if we placed the passenger in vehicle 2 instead?", "search(2)"),
         ("What are the consequences of assigning this rider to vehicle 0?", "search(0)")),
    ),
    QueryType(
        28, BACKGROUND, LEVEL_WHATIF,
        "What does occur when traffic becomes congested?",
        "cong(0)",
        ((r"traffic|congest|rush hour|jam", 5), (r"what (happens|changes|does)|how do", 1)),
        (("What changes when there's heavy traffic?", "cong(0)"),
         ("What happens during rush hour congestion?", "cong(0)")),
    ),
    QueryType(
        29, BACKGROUND, LEVEL_WHATIF,
        "What happens if vehicle 1 breaks down?",
        "exclude(1)",
        ((r"breaks? down|broke|breakdown|out of (service|commission)|inoperable|stops working|fail|malfunction|mechanical", 5),
         (r"what (happens|if|would)", 1)),
        (("What happens if vehicle 2 stops working?", "exclude(2)"),
         ("What would we do if vehicle 0 became inoperable?", "exclude(0)")),
    ),
    QueryType(
        30, BACKGROUND, LEVEL_WHATIF,
        "What should we do if this trip includes 2 passengers?",
        "multi(2)",
        ((r"\d+ (passengers?|riders?|people)|party|group", 4), (r"includes?|has|involves|with", 1),
         (r"trip|request", 1)),
        (("What if this trip has 3 passengers?", "multi(3)"),
         ("How should we handle a request with 2 riders?", "multi(2)")),
    ),
    QueryType(
        31, BACKGROUND, LEVEL_WHATIF,
        "What is the reassignment plan for passengers currently on vehicle 2 if it breaks down?",
        "reassign(2)",
        ((r"reassign|takes? over|re-?route|already on|currently on|its passengers|'s passengers", 5),
         (r"breaks? down|broke|breakdown|fails?|stops (working|running)", 2),
         (r"who|where|which vehicles", 1)),
        (("If vehicle 1 breaks down, who takes over its passengers?", "reassign(1)"),
         ("What's the reassignment plan for the riders on vehicle 0 if it fails?", "reassign(0)")),
    ),
)

# knowledge queries answered from the corpus rather than the tree
BACKGROUND_SIGNATURE: tuple[tuple[str, float], ...] = (
    (r"bad thing|why is .{0,40}(bad|a problem|an issue)", 5),
    (r"paratransit|\bada\b", 4),
    (r"fare|cost|price", 4),
    (r"dispatcher|human|override|oversee", 3),
    (r"authority|final say|who decides|in charge", 3),
    (r"error|mistake|wrong", 3),
    (r"safety|\bsafe\b", 3),
    (r"rules?|policy|policies", 3),
    (r"what is|who|explain|tell me about|how does .{0,20}(service|system|algorithm) work", 1),
)


def by_id(type_id: int) -> QueryType:
    for entry in CATALOG:
        if entry.id == type_id:
            return entry
    raise KeyError(f"no query type {type_id}")


def signature_score(query: str, signature) -> tuple[float, float]:
    """(matched weight, total weight) for a keyword signature."""
    text = query.lower()
    matched = 0.0
    total = 0.0
    for pattern, weight in signature:
        total += weight
        if re.search(pattern, text):
            matched += weight
    return matched, total


_VEHICLE_WORD = re.compile(r"(?:vehicle|car|bus)s?\s*#?\s*(\d+)", re.IGNORECASE)
_PASSENGER_COUNT = re.compile(r"(\d+)\s*(?:passengers?|riders?|people)", re.IGNORECASE)


def extract_vehicles(query: str) -> list[int]:
    """Vehicle ids mentioned in the query, in order, deduplicated."""
    seen: list[int] = []
    for match in _VEHICLE_WORD.finditer(query):
        value = int(match.group(1))
        if value not in seen:
            seen.append(value)
    return seen


def extract_passenger_count(query: str) -> int | None:
    match = _PASSENGER_COUNT.search(query)
    return int(match.group(1)) if match else None


# vehicle-slot argument positions per variable name; tp/td echo the vehicle
# under discussion unless they point at the current request (argument 0)
_VEHICLE_SLOT_POSITIONS = {"eta": (0,), "c": (0,), "r": (0,), "rd1": (0,), "rd2": (0,),
                           "o": (1,), "sp": (1,), "sd": (1,),
                           "search": (0,), "exclude": (0,), "reassign": (0,)}


def _rewrite(node, mapping: dict[int, int]):
    from .logic import BaseVar, CompareVar, DerivedVar, WhatIf

    if isinstance(node, BaseVar):
        args = list(node.args)
        for pos in _VEHICLE_SLOT_POSITIONS.get(node.name, ()):
            args[pos] = mapping.get(args[pos], args[pos])
        if node.name in ("tp", "td") and args[0] != 0:
            args[0] = mapping.get(args[0], args[0])
        return BaseVar(node.name, tuple(args))
    if isinstance(node, WhatIf):
        if node.name in ("search", "exclude", "reassign"):
            return WhatIf(node.name, mapping.get(node.arg, node.arg))
        return node
    if isinstance(node, DerivedVar):
        args = []
        for arg in node.args:
            if isinstance(arg, int):
                if node.name in ("r", "rd1", "rd2"):
                    args.append(mapping.get(arg, arg))
                else:
                    args.append(arg)
            else:
                args.append(_rewrite(arg, mapping))
        return DerivedVar(node.name, tuple(args))
    if isinstance(node, CompareVar):
        return CompareVar(node.name, tuple(_rewrite(op, mapping) for op in node.operands))
    return node


def reparameterize(entry: QueryType, query: str, default_vehicle: int | None = None) -> list:
    """Instantiate the entry's gold formulas with the vehicles (and passenger
    count) the query actually mentions; unmentioned slots keep the canonical
    values, or the tree's decision vehicle when a single slot has a default."""
    formulas = parse_formula(entry.gold)
    canon_vehicles = extract_vehicles(entry.text)
    query_vehicles = extract_vehicles(query)

    mapping: dict[int, int] = {}
    if query_vehicles:
        for canon, actual in zip(canon_vehicles, query_vehicles):
            mapping[canon] = actual
    elif default_vehicle is not None and len(canon_vehicles) == 1:
        mapping[canon_vehicles[0]] = default_vehicle

    rewritten = [_rewrite(f, mapping) for f in formulas]

    if entry.id == 30:
        count = extract_passenger_count(query)
        if count is not None and count >= 1:
            from .logic import WhatIf
            rewritten = [WhatIf("multi", count)]
    return rewritten
