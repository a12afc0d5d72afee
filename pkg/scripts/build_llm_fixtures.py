#!/usr/bin/env python3
"""Record mock-LLM fixtures: prompt digest -> completion.

Covers classification and logic generation for every canonical catalog
query and every bundled paraphrase, at the temperatures the pipeline uses
(0.0 for first attempts, 0.7 for retries). Regenerate with:

    python3 scripts/build_llm_fixtures.py
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from treexplain.catalog import CATALOG, by_id
from treexplain.pipeline import (CLASSIFY_SYSTEM, GENERATE_SYSTEM,
                                 classification_messages, generation_messages,
                                 load_paraphrase_corpus, prompt_digest)


def record(fixtures: dict, query: str, type_id: int, formulas: str) -> None:
    entry = by_id(type_id)
    digest = prompt_digest(CLASSIFY_SYSTEM, classification_messages(query), 0.0)
    fixtures[digest] = f"type: {type_id}"
    for temperature in (0.0, 0.7):
        digest = prompt_digest(GENERATE_SYSTEM, generation_messages(query, entry), temperature)
        fixtures[digest] = formulas


# knowledge-base questions the mock should route to retrieval
KNOWLEDGE_QUERIES = (
    "Why is getting dropped off early a bad thing?",
    "What is the maximum fare for ADA paratransit?",
    "Who has final authority over vehicle assignments?",
    "How would we know there is an error if it's only computer processing?",
    "What is paratransit?",
    "What information must passengers provide when requesting a trip?",
)


def main() -> None:
    fixtures: dict[str, str] = {}
    for entry in CATALOG:
        record(fixtures, entry.text, entry.id, entry.gold)
    for item in load_paraphrase_corpus():
        record(fixtures, item["query"], item["type_id"], item["formulas"])
    for query in KNOWLEDGE_QUERIES:
        digest = prompt_digest(CLASSIFY_SYSTEM, classification_messages(query), 0.0)
        fixtures[digest] = "type: none"
    out = Path(__file__).resolve().parents[1] / "src" / "treexplain" / "data" / "llm_fixtures.json"
    out.write_text(json.dumps(fixtures, indent=0, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {len(fixtures)} fixtures to {out}")


if __name__ == "__main__":
    main()
