#!/usr/bin/env python3
"""Emit the bundled paraphrase corpus (5 rephrasings per query type).

Each item carries its gold category, type id, and formula text with the
vehicle/passenger numbers the paraphrase actually mentions. Regenerate with:

    python3 scripts/build_paraphrase_corpus.py
"""

import json
from pathlib import Path

# type_id -> list of (query, formulas)
PARAPHRASES: dict[int, list[tuple[str, str]]] = {
    1: [
        ("What's the requested pickup time for this rider?", "tp(0)"),
        ("When is the passenger supposed to be picked up?", "tp(0)"),
        ("Tell me the scheduled pick-up time, please.", "tp(0)"),
        ("At what time was the pickup requested?", "tp(0)"),
        ("When does the passenger expect to be picked up?", "tp(0)"),
    ],
    2: [
        ("What's the requested drop-off time for this rider?", "td(0)"),
        ("When is the passenger supposed to be dropped off?", "td(0)"),
        ("Tell me the scheduled drop-off time, please.", "td(0)"),
        ("At what time is the drop-off scheduled?", "td(0)"),
        ("When is the requested drop-off for this trip?", "td(0)"),
    ],
    3: [
        ("How many passengers are currently on vehicle 2?", "o(0, 2)"),
        ("What's the current passenger count on vehicle 0?", "o(0, 0)"),
        ("How many riders is vehicle 3 carrying right now?", "o(0, 3)"),
        ("What is vehicle 1's occupancy at the moment?", "o(0, 1)"),
        ("How many people are on board vehicle 2?", "o(0, 2)"),
    ],
    4: [
        ("How much capacity does vehicle 1 have left?", "vcvq(c(1), o(1, 1))"),
        ("How many free seats are there on vehicle 3?", "vcvq(c(3), o(1, 3))"),
        ("What's the remaining capacity of vehicle 0?", "vcvq(c(0), o(1, 0))"),
        ("How many more riders can vehicle 2 take?", "vcvq(c(2), o(1, 2))"),
        ("How many seats remain available on vehicle 1?", "vcvq(c(1), o(1, 1))"),
    ],
    5: [
        ("How many stops will the rider make on vehicle 2?", "sp(0, 2); sd(0, 2)"),
        ("What's the stop count for the passenger if they ride vehicle 1?", "sp(0, 1); sd(0, 1)"),
        ("How many stops does the passenger face before reaching their destination on vehicle 3?",
         "sp(0, 3); sd(0, 3)"),
        ("Count the stops the passenger will experience in vehicle 0.", "sp(0, 0); sd(0, 0)"),
        ("How many intermediate stops are on the passenger's trip with vehicle 1?", "sp(0, 1); sd(0, 1)"),
    ],
    6: [
        ("What's the ETA for the passenger if vehicle 2 takes them?", "eta(2)"),
        ("When would the passenger arrive if assigned to vehicle 0?", "eta(0)"),
        ("Give me the expected arrival time with vehicle 3.", "eta(3)"),
        ("What is the estimated time of arrival for this rider on vehicle 1?", "eta(1)"),
        ("If vehicle 2 gets the assignment, when does the passenger arrive?", "eta(2)"),
    ],
    7: [
        ("How long of a pickup delay should we expect with vehicle 1?", "viod(tp(1), eta(1))"),
        ("What delay duration is likely for the pick-up if vehicle 2 is assigned?", "viod(tp(2), eta(2))"),
        ("How much later than requested would vehicle 0 pick the passenger up?", "viod(tp(0), eta(0))"),
        ("Estimate the pickup delay duration for a passenger on vehicle 3.", "viod(tp(3), eta(3))"),
        ("How long will the passenger wait past the scheduled pickup with vehicle 1?", "viod(tp(1), eta(1))"),
    ],
    8: [
        ("How long of a drop-off delay should we expect with vehicle 1?", "viod(td(1), eta(1))"),
        ("What delay duration is likely for the drop-off if vehicle 2 is assigned?", "viod(td(2), eta(2))"),
        ("How much later than requested would vehicle 0 drop the passenger off?", "viod(td(0), eta(0))"),
        ("Estimate the drop-off delay duration for a passenger on vehicle 3.", "viod(td(3), eta(3))"),
        ("How late will the passenger arrive at their destination with vehicle 1?", "viod(td(1), eta(1))"),
    ],
    9: [
        ("How early could the pickup happen if vehicle 2 takes the trip?", "vioa(tp(2), eta(2))"),
        ("By how much might vehicle 0 move the pick-up ahead of the requested time?", "vioa(tp(0), eta(0))"),
        ("What's the expected pickup time advancement with vehicle 1?", "vioa(tp(1), eta(1))"),
        ("How far ahead of schedule would the pick-up be on vehicle 3?", "vioa(tp(3), eta(3))"),
        ("How much earlier than the requested time would vehicle 1 pick the passenger up?",
         "vioa(tp(1), eta(1))"),
    ],
    10: [
        ("How early could the drop-off happen if vehicle 2 takes the trip?", "viod(tp(2), eta(2))"),
        ("By how much might vehicle 0 move the drop-off ahead of the requested time?", "viod(tp(0), eta(0))"),
        ("What's the expected drop-off time advancement with vehicle 1?", "viod(tp(1), eta(1))"),
        ("How far ahead of schedule would the drop-off be on vehicle 3?", "viod(tp(3), eta(3))"),
        ("How much earlier than the planned time would vehicle 1 drop the passenger off?",
         "viod(tp(1), eta(1))"),
    ],
    11: [
        ("What's the rate of pickup delays on vehicle 2?", "pctd(tp(2), eta(2))"),
        ("How often would the passenger be picked up late by vehicle 0?", "pctd(tp(0), eta(0))"),
        ("What percentage of the time does vehicle 1 run late on pickups?", "pctd(tp(1), eta(1))"),
        ("What are the chances the pick-up is delayed with vehicle 3?", "pctd(tp(3), eta(3))"),
        ("How frequently would vehicle 1 miss the requested pickup time?", "pctd(tp(1), eta(1))"),
    ],
    12: [
        ("What's the rate of drop-off delays on vehicle 2?", "pctd(td(2), eta(2))"),
        ("How often would the passenger be dropped off late by vehicle 0?", "pctd(td(0), eta(0))"),
        ("What percentage of the time does vehicle 1 run late on drop-offs?", "pctd(td(1), eta(1))"),
        ("What are the chances the drop-off is delayed with vehicle 3?", "pctd(td(3), eta(3))"),
        ("How frequently would vehicle 1 miss the requested drop-off time?", "pctd(td(1), eta(1))"),
    ],
    13: [
        ("How likely is an early pickup on vehicle 2?", "pcta(tp(2), eta(2))"),
        ("What's the likelihood the passenger gets picked up ahead of schedule by vehicle 0?",
         "pcta(tp(0), eta(0))"),
        ("What's the probability of an early pick-up with vehicle 3?", "pcta(tp(3), eta(3))"),
        ("How likely is it that vehicle 1 arrives before the requested pickup time?", "pcta(tp(1), eta(1))"),
        ("What are the odds the rider is picked up earlier than planned on vehicle 1?", "pcta(tp(1), eta(1))"),
    ],
    14: [
        ("How likely is an early arrival at the destination on vehicle 2?", "pcta(td(2), eta(2))"),
        ("What's the likelihood the passenger reaches their destination ahead of schedule with vehicle 0?",
         "pcta(td(0), eta(0))"),
        ("What's the probability of an early drop-off with vehicle 3?", "pcta(td(3), eta(3))"),
        ("How likely is it that vehicle 1 gets the rider to their destination before the requested time?",
         "pcta(td(1), eta(1))"),
        ("What are the odds the passenger arrives at the destination early on vehicle 1?",
         "pcta(td(1), eta(1))"),
    ],
    15: [
        ("What causes delays when the passenger rides vehicle 2?", "sp(0, 2); sd(0, 2)"),
        ("Why would the trip be delayed if vehicle 0 is assigned?", "sp(0, 0); sd(0, 0)"),
        ("What factors contribute to delays for a passenger on vehicle 3?", "sp(0, 3); sd(0, 3)"),
        ("Explain what leads to delays with vehicle 1.", "sp(0, 1); sd(0, 1)"),
        ("What's behind the delays when vehicle 1 takes this trip?", "sp(0, 1); sd(0, 1)"),
    ],
    16: [
        ("Why did the algorithm prefer vehicle 1 over vehicle 3?",
         "vcv(c(3), o(1, 3)); phi3(r(1), r(3)); phi3(rd1(1), rd1(3)); phi3(rd2(1), rd2(3))"),
        ("What made vehicle 0 a better choice than vehicle 2 here?",
         "vcv(c(2), o(1, 2)); phi3(r(0), r(2)); phi3(rd1(0), rd1(2)); phi3(rd2(0), rd2(2))"),
        ("Explain the reasons for selecting vehicle 2 instead of vehicle 1.",
         "vcv(c(1), o(1, 1)); phi3(r(2), r(1)); phi3(rd1(2), rd1(1)); phi3(rd2(2), rd2(1))"),
        ("Why choose vehicle 3 rather than vehicle 0 for this trip?",
         "vcv(c(0), o(1, 0)); phi3(r(3), r(0)); phi3(rd1(3), rd1(0)); phi3(rd2(3), rd2(0))"),
        ("What justified choosing vehicle 1 over vehicle 2?",
         "vcv(c(2), o(1, 2)); phi3(r(1), r(2)); phi3(rd1(1), rd1(2)); phi3(rd2(1), rd2(2))"),
    ],
    17: [
        ("Why did the planner skip vehicle 2?", "vcv(c(2), o(1, 2))"),
        ("What ruled vehicle 0 out for this assignment?", "vcv(c(0), o(1, 0))"),
        ("Why wasn't vehicle 3 considered?", "vcv(c(3), o(1, 3))"),
        ("What kept the algorithm from using vehicle 1?", "vcv(c(1), o(1, 1))"),
        ("Why was vehicle 2 passed over for this request?", "vcv(c(2), o(1, 2))"),
    ],
    18: [
        ("In what ways is vehicle 0 better than vehicle 2, capacity aside?",
         "phi1(vioa(tp(0), eta(0)), vioa(tp(2), eta(2))); phi1(vioa(td(0), eta(0)), vioa(td(2), eta(2))); "
         "phi1(viod(tp(0), eta(0)), viod(tp(2), eta(2))); phi1(viod(td(0), eta(0)), viod(td(2), eta(2))); "
         "phi4(sp(0, 0), sp(0, 2)); phi4(sd(0, 0), sd(0, 2))"),
        ("How does vehicle 2 outperform vehicle 3 if capacity isn't an issue?",
         "phi1(vioa(tp(2), eta(2)), vioa(tp(3), eta(3))); phi1(vioa(td(2), eta(2)), vioa(td(3), eta(3))); "
         "phi1(viod(tp(2), eta(2)), viod(tp(3), eta(3))); phi1(viod(td(2), eta(2)), viod(td(3), eta(3))); "
         "phi4(sp(0, 2), sp(0, 3)); phi4(sd(0, 2), sd(0, 3))"),
        ("Setting capacity aside, why is vehicle 1 superior to vehicle 2?",
         "phi1(vioa(tp(1), eta(1)), vioa(tp(2), eta(2))); phi1(vioa(td(1), eta(1)), vioa(td(2), eta(2))); "
         "phi1(viod(tp(1), eta(1)), viod(tp(2), eta(2))); phi1(viod(td(1), eta(1)), viod(td(2), eta(2))); "
         "phi4(sp(0, 1), sp(0, 2)); phi4(sd(0, 1), sd(0, 2))"),
        ("Ignoring seat limits, how does vehicle 3 beat vehicle 0?",
         "phi1(vioa(tp(3), eta(3)), vioa(tp(0), eta(0))); phi1(vioa(td(3), eta(3)), vioa(td(0), eta(0))); "
         "phi1(viod(tp(3), eta(3)), viod(tp(0), eta(0))); phi1(viod(td(3), eta(3)), viod(td(0), eta(0))); "
         "phi4(sp(0, 3), sp(0, 0)); phi4(sd(0, 3), sd(0, 0))"),
        ("When capacity isn't a concern, what makes vehicle 1 stronger than vehicle 2?",
         "phi1(vioa(tp(1), eta(1)), vioa(tp(2), eta(2))); phi1(vioa(td(1), eta(1)), vioa(td(2), eta(2))); "
         "phi1(viod(tp(1), eta(1)), viod(tp(2), eta(2))); phi1(viod(td(1), eta(1)), viod(td(2), eta(2))); "
         "phi4(sp(0, 1), sp(0, 2)); phi4(sd(0, 1), sd(0, 2))"),
    ],
    19: [
        ("Does vehicle 2 keep time violations lower than vehicle 3?",
         "phi1(vioa(tp(2), eta(2)), vioa(tp(3), eta(3))); phi1(vioa(td(2), eta(2)), vioa(td(3), eta(3))); "
         "phi1(viod(tp(2), eta(2)), viod(tp(3), eta(3))); phi1(viod(td(2), eta(2)), viod(td(3), eta(3)))"),
        ("Is vehicle 0 better at avoiding schedule violations than vehicle 1?",
         "phi1(vioa(tp(0), eta(0)), vioa(tp(1), eta(1))); phi1(vioa(td(0), eta(0)), vioa(td(1), eta(1))); "
         "phi1(viod(tp(0), eta(0)), viod(tp(1), eta(1))); phi1(viod(td(0), eta(0)), viod(td(1), eta(1)))"),
        ("Which of vehicles 1 and 2 minimizes timing violations?",
         "phi1(vioa(tp(1), eta(1)), vioa(tp(2), eta(2))); phi1(vioa(td(1), eta(1)), vioa(td(2), eta(2))); "
         "phi1(viod(tp(1), eta(1)), viod(tp(2), eta(2))); phi1(viod(td(1), eta(1)), viod(td(2), eta(2)))"),
        ("Compared with vehicle 2, does vehicle 1 produce fewer time violations?",
         "phi1(vioa(tp(2), eta(2)), vioa(tp(1), eta(1))); phi1(vioa(td(2), eta(2)), vioa(td(1), eta(1))); "
         "phi1(viod(tp(2), eta(2)), viod(tp(1), eta(1))); phi1(viod(td(2), eta(2)), viod(td(1), eta(1)))"),
        ("Is vehicle 3 more effective than vehicle 0 at cutting timing violations?",
         "phi1(vioa(tp(3), eta(3)), vioa(tp(0), eta(0))); phi1(vioa(td(3), eta(3)), vioa(td(0), eta(0))); "
         "phi1(viod(tp(3), eta(3)), viod(tp(0), eta(0))); phi1(viod(td(3), eta(3)), viod(td(0), eta(0)))"),
    ],
    20: [
        ("Does vehicle 1 involve fewer stops than vehicle 3?", "phi4(sp(0, 1), sp(0, 3)); phi4(sd(0, 1), sd(0, 3))"),
        ("Which route has fewer stops: vehicle 0's or vehicle 2's?", "phi4(sp(0, 0), sp(0, 2)); phi4(sd(0, 0), sd(0, 2))"),
        ("Is the stop count lower on vehicle 2 than on vehicle 1?", "phi4(sp(0, 2), sp(0, 1)); phi4(sd(0, 2), sd(0, 1))"),
        ("Would the passenger make fewer stops riding vehicle 3 compared to vehicle 0?",
         "phi4(sp(0, 3), sp(0, 0)); phi4(sd(0, 3), sd(0, 0))"),
        ("Does vehicle 1's route include fewer stops than vehicle 2's?",
         "phi4(sp(0, 1), sp(0, 2)); phi4(sd(0, 1), sd(0, 2))"),
    ],
    21: [
        ("Could the passenger be delayed if vehicle 2 takes the trip?", "viod(tp(2), eta(2)); viod(td(2), eta(2))"),
        ("Is there any risk of delay with vehicle 0?", "viod(tp(0), eta(0)); viod(td(0), eta(0))"),
        ("Is a delay possible when the rider is assigned to vehicle 3?", "viod(tp(3), eta(3)); viod(td(3), eta(3))"),
        ("Might the passenger run late on vehicle 1?", "viod(tp(1), eta(1)); viod(td(1), eta(1))"),
        ("Is there a chance of delays if vehicle 1 handles this request?", "viod(tp(1), eta(1)); viod(td(1), eta(1))"),
    ],
    22: [
        ("Any chance the passenger gets there earlier than planned with vehicle 2?",
         "vioa(tp(2), eta(2)); vioa(td(2), eta(2))"),
        ("Could the rider arrive ahead of schedule on vehicle 0?", "vioa(tp(0), eta(0)); vioa(td(0), eta(0))"),
        ("Is an early arrival possible if vehicle 3 takes the assignment?", "vioa(tp(3), eta(3)); vioa(td(3), eta(3))"),
        ("Might the passenger show up early with vehicle 1?", "vioa(tp(1), eta(1)); vioa(td(1), eta(1))"),
        ("Is it possible vehicle 1 gets the passenger there sooner than expected?",
         "vioa(tp(1), eta(1)); vioa(td(1), eta(1))"),
    ],
    23: [
        ("How much reward difference is there between assigning vehicle 0 and vehicle 2?",
         "phi3(r(0), r(2)); phi3(rd1(0), rd1(2)); phi3(rd2(0), rd2(2))"),
        ("Compare the reward for vehicle 1 against vehicle 3.",
         "phi3(r(1), r(3)); phi3(rd1(1), rd1(3)); phi3(rd2(1), rd2(3))"),
        ("What reward gap separates vehicle 2 from vehicle 1?",
         "phi3(r(2), r(1)); phi3(rd1(2), rd1(1)); phi3(rd2(2), rd2(1))"),
        ("How do the rewards differ between vehicle 3 and vehicle 0?",
         "phi3(r(3), r(0)); phi3(rd1(3), rd1(0)); phi3(rd2(3), rd2(0))"),
        ("What's the reward delta between vehicle 1 and vehicle 2?",
         "phi3(r(1), r(2)); phi3(rd1(1), rd1(2)); phi3(rd2(1), rd2(2))"),
    ],
    24: [
        ("Why did vehicle 2 get this assignment?", "vcv(c(2), o(1, 2)); r(2); rd1(2); rd2(2)"),
        ("What's the reason vehicle 0 was selected for the passenger?", "vcv(c(0), o(1, 0)); r(0); rd1(0); rd2(0)"),
        ("Why was vehicle 3 picked for this trip?", "vcv(c(3), o(1, 3)); r(3); rd1(3); rd2(3)"),
        ("Explain why the algorithm went with vehicle 1.", "vcv(c(1), o(1, 1)); r(1); rd1(1); rd2(1)"),
        ("What made the planner choose vehicle 2 for this rider?", "vcv(c(2), o(1, 2)); r(2); rd1(2); rd2(2)"),
    ],
    25: [
        ("Which vehicle will pick the passenger up?", "car(1)"),
        ("Which car is handling this pickup?", "car(1)"),
        ("Which vehicle got assigned to this rider?", "car(1)"),
        ("Tell me which vehicle is taking this trip.", "car(1)"),
        ("Which bus will serve this request?", "car(1)"),
    ],
    26: [
        ("How many vehicles can take the passenger right now?", "availablecar(1)"),
        ("How many cars are currently available for this pickup?", "availablecar(1)"),
        ("What's the count of available vehicles for this rider?", "availablecar(1)"),
        ("How many buses could serve this request at the moment?", "availablecar(1)"),
        ("How many vehicles are free to pick up the passenger?", "availablecar(1)"),
    ],
    27: [
        ("What would happen if we placed the passenger in vehicle 2 instead?", "search(2)"),
        ("What are the consequences of assigning this rider to vehicle 0?", "search(0)"),
        ("Suppose vehicle 3 takes the passenger - what then?", "search(3)"),
        ("What's the outcome if the trip goes to vehicle 1 as an alternative?", "search(1)"),
        ("If we moved the passenger to vehicle 2, what would the result be?", "search(2)"),
    ],
    28: [
        ("What changes when there's heavy traffic?", "cong(0)"),
        ("How do congested roads affect the plan?", "cong(0)"),
        ("What happens during rush hour congestion?", "cong(0)"),
        ("If traffic gets bad, what does that do to the schedule?", "cong(0)"),
        ("How does the system cope with traffic jams?", "cong(0)"),
    ],
    29: [
        ("What happens if vehicle 2 stops working?", "exclude(2)"),
        ("Suppose vehicle 0 breaks down - what's the plan?", "exclude(0)"),
        ("What would we do if vehicle 3 became inoperable?", "exclude(3)"),
        ("If vehicle 1 has a mechanical failure, what happens?", "exclude(1)"),
        ("What if vehicle 2 goes out of service?", "exclude(2)"),
    ],
    30: [
        ("What if this trip has 2 passengers?", "multi(2)"),
        ("How should we handle a request with 3 riders?", "multi(3)"),
        ("What's the plan if the party includes 2 people?", "multi(2)"),
        ("Suppose there are 4 passengers on this request - what do we do?", "multi(4)"),
        ("Can we serve this trip if it involves 2 passengers?", "multi(2)"),
    ],
    31: [
        ("If vehicle 2 breaks down, who takes over its passengers?", "reassign(2)"),
        ("What's the reassignment plan for the riders on vehicle 0 if it fails?", "reassign(0)"),
        ("Where would the passengers currently on vehicle 3 go if it broke down?", "reassign(3)"),
        ("Which vehicles would take over vehicle 1's passengers in a breakdown?", "reassign(1)"),
        ("How do we re-route the people already on vehicle 2 if it stops running?", "reassign(2)"),
    ],
}


def main() -> None:
    import sys
    sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))
    from treexplain.catalog import by_id
    from treexplain.logic import parse_formula, print_formula

    items = []
    for type_id, rows in sorted(PARAPHRASES.items()):
        entry = by_id(type_id)
        assert len(rows) == 5, f"type {type_id} needs 5 paraphrases"
        for query, formulas in rows:
            assert print_formula(parse_formula(formulas)) == formulas, (type_id, formulas)
            items.append({"query": query, "category": entry.category,
                          "type_id": type_id, "formulas": formulas})
    out = Path(__file__).resolve().parents[1] / "src" / "treexplain" / "data" / "paraphrase_corpus.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(items, indent=1) + "\n", encoding="utf-8")
    print(f"wrote {len(items)} items to {out}")


if __name__ == "__main__":
    main()
