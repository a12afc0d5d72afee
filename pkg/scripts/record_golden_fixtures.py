#!/usr/bin/env python3
"""Record the golden regression fixtures:

  tests/fixtures/golden_tree.json        canonical tree serialization
  tests/fixtures/golden_transcript.json  31-query mock-backend session
  tests/fixtures/golden_digests.json     sha256 digests of derived artifacts

Run after any intentional change to the planner, scorer, or templates:

    python3 scripts/record_golden_fixtures.py
"""

import hashlib
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from treexplain.catalog import CATALOG
from treexplain.config import golden_scenario_path
from treexplain.ctl import build_kripke
from treexplain.pipeline import (LlmBackend, MockLlmClient, answer, make_session,
                                 session_to_json)
from treexplain.planner import (MctsConfig, plan, tree_to_json, whatif_congestion,
                                whatif_multi)
from treexplain.rag import bundled_store
from treexplain.transit import PENDING, RewardWeights, load_scenario

CONFIG = MctsConfig(iterations=240, seed=7)
WEIGHTS = RewardWeights()


def sha(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def main() -> None:
    fixtures_dir = Path(__file__).resolve().parents[1] / "tests" / "fixtures"
    fixtures_dir.mkdir(parents=True, exist_ok=True)

    scenario = load_scenario(str(golden_scenario_path()))
    request = min((r for r in scenario.world.requests if r.status == PENDING),
                  key=lambda r: (r.t_p, r.id))
    outcome = plan(scenario.world, request, CONFIG, WEIGHTS, scenario.travel)
    tree_text = tree_to_json(outcome.tree)
    (fixtures_dir / "golden_tree.json").write_text(tree_text + "\n", encoding="utf-8")

    kripke = build_kripke(outcome.tree, request.id)
    labeling_text = json.dumps({str(k): sorted(v) for k, v in kripke.labeling.items()},
                               sort_keys=True, separators=(",", ":"))

    congested = whatif_congestion(scenario.world, request, 1.5, CONFIG, WEIGHTS,
                                  scenario.travel)
    doubled = whatif_multi(scenario.world, request, 2, CONFIG, WEIGHTS, scenario.travel)

    session = make_session("golden", scenario, CONFIG, WEIGHTS, bundled_store(),
                           outcome=outcome)
    backend = LlmBackend(MockLlmClient.bundled())
    for entry in CATALOG:
        answer(entry.text, session, backend)
    transcript = session_to_json(session)
    (fixtures_dir / "golden_transcript.json").write_text(transcript + "\n",
                                                         encoding="utf-8")

    digests = {
        "tree": sha(tree_text),
        "labeling": sha(labeling_text),
        "congestion_1_5_tree": sha(tree_to_json(congested.tree)),
        "congestion_1_5_decision": congested.decision.label(),
        "multi_2_tree": sha(tree_to_json(doubled.tree)),
        "multi_2_decision": doubled.decision.label(),
        "transcript": sha(transcript),
        "decision": outcome.decision.label(),
    }
    (fixtures_dir / "golden_digests.json").write_text(
        json.dumps(digests, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(json.dumps(digests, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
