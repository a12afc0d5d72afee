"""Golden-digest regression tests: derived artifacts of the bundled
scenario must match the recorded fixtures bit for bit."""

import hashlib
import json

from tests.conftest import DEFAULT_WEIGHTS, FIXTURES, GOLDEN_CONFIG
from treexplain.ctl import build_kripke
from treexplain.planner import tree_to_json, whatif_congestion, whatif_multi


def sha(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def load_digests() -> dict:
    return json.loads((FIXTURES / "golden_digests.json").read_text(encoding="utf-8"))


class TestGoldenDigests:
    def test_tree_bytes_and_digest(self, golden_tree):
        recorded = (FIXTURES / "golden_tree.json").read_text(encoding="utf-8").rstrip("\n")
        text = tree_to_json(golden_tree)
        assert text == recorded
        assert sha(text) == load_digests()["tree"]

    def test_decision_label(self, golden_outcome):
        assert golden_outcome.decision.label() == load_digests()["decision"]

    def test_labeling_digest(self, golden_tree):
        kripke = build_kripke(golden_tree, 0)
        text = json.dumps({str(k): sorted(v) for k, v in kripke.labeling.items()},
                          sort_keys=True, separators=(",", ":"))
        assert sha(text) == load_digests()["labeling"]

    def test_congestion_1_5_replan_digest(self, golden_scenario):
        world = golden_scenario.world
        outcome = whatif_congestion(world, world.request(0), 1.5, GOLDEN_CONFIG,
                                    DEFAULT_WEIGHTS, golden_scenario.travel)
        digests = load_digests()
        assert sha(tree_to_json(outcome.tree)) == digests["congestion_1_5_tree"]
        assert outcome.decision.label() == digests["congestion_1_5_decision"]

    def test_multi_2_replan_digest(self, golden_scenario):
        world = golden_scenario.world
        outcome = whatif_multi(world, world.request(0), 2, GOLDEN_CONFIG,
                               DEFAULT_WEIGHTS, golden_scenario.travel)
        digests = load_digests()
        assert sha(tree_to_json(outcome.tree)) == digests["multi_2_tree"]
        assert outcome.decision.label() == digests["multi_2_decision"]
