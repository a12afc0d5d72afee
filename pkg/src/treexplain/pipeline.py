"""Query handling end to end.

A dispatcher query is classified against the type catalog, compiled to
evidence formulas (few-shot LLM generation with parser-validated retries,
or the rule-based fallback), scored against the session's search tree
(what-if formulas re-plan first), optionally grounded in retrieved
knowledge, and rendered as a natural-language explanation. Deterministic
backends (the fallback and the fixture-replay mock) render explanations
from a fixed template so whole transcripts are byte-reproducible.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
from dataclasses import dataclass, field
from pathlib import Path

import httpx

from .catalog import (BACKGROUND, BACKGROUND_SIGNATURE, CATALOG, QueryType,
                      by_id, reparameterize, signature_score)
from .errors import DomainError, LlmError, ParseError
from .logic import parse_formula, print_formula
from .planner import ASSIGN, MctsConfig, PlanOutcome, SearchTree, plan
from .rag import ChunkStore, RetrievalHit
from .scoring import ERROR, EvidenceQueryContext, EvidenceResult, score_all
from .transit import PENDING, RewardWeights, Scenario

SESSION_SCHEMA = "session/v1"


@dataclass(frozen=True, slots=True)
class Classification:
    category: str                # post_hoc | background
    type_id: int | None = None   # None: answer from the knowledge base
    confidence: float = 0.0

    def to_doc(self) -> dict:
        return {"category": self.category, "type_id": self.type_id,
                "confidence": round(self.confidence, 6)}


# --- LLM clients ------------------------------------------------------------

def prompt_digest(system: str, messages: list[dict], temperature: float) -> str:
    payload = json.dumps({"system": system, "messages": messages,
                          "temperature": temperature}, sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


class RemoteLlmClient:
    """Client for a chat-completions HTTP endpoint. The credential
    is read from the environment at call time."""

    deterministic = False

    def __init__(self, endpoint: str, model: str, api_key_env: str = "LLM_API_KEY",
                 timeout: float = 60.0):
        self.endpoint = endpoint
        self.model = model
        self.api_key_env = api_key_env
        self.timeout = timeout

    def complete(self, system: str, messages: list[dict], temperature: float = 0.0) -> str:
        key = os.environ.get(self.api_key_env)
        if not key:
            raise LlmError(f"missing credential: set ${self.api_key_env}")
        body = {"model": self.model, "temperature": temperature,
                "messages": [{"role": "system", "content": system}, *messages]}
        try:
            response = httpx.post(self.endpoint, json=body, timeout=self.timeout,
                                  headers={"Authorization": f"Bearer {key}"})
            response.raise_for_status()
            return response.json()["choices"][0]["message"]["content"]
        except httpx.HTTPError as exc:
            raise LlmError(f"remote LLM call failed: {exc}",
                           {"endpoint": self.endpoint, "model": self.model}) from exc


class MockLlmClient:
    """Replays recorded completions keyed by prompt digest."""

    deterministic = True

    def __init__(self, fixtures: dict[str, str]):
        self.fixtures = dict(fixtures)
        self.calls: list[str] = []

    def complete(self, system: str, messages: list[dict], temperature: float = 0.0) -> str:
        digest = prompt_digest(system, messages, temperature)
        self.calls.append(digest)
        if digest not in self.fixtures:
            raise LlmError(f"no recorded completion for prompt digest {digest}",
                           {"digest": digest})
        return self.fixtures[digest]

    @classmethod
    def bundled(cls) -> "MockLlmClient":
        path = Path(__file__).parent / "data" / "llm_fixtures.json"
        with open(path, encoding="utf-8") as fh:
            return cls(json.load(fh))


# --- prompts ------------------------------------------------------------------

CLASSIFY_SYSTEM = (
    "You route dispatcher questions about an automated paratransit vehicle-assignment "
    "planner. There are two categories: post_hoc questions about the plan the search "
    "just produced (types 1-26), and background questions (what-if re-planning types "
    "27-31, or general service knowledge with no type). Reply with exactly one line, "
    "'type: N' for the matching type number, or 'type: none' for general knowledge.\n"
    "Types:\n"
    + "\n".join(f"{e.id}. {e.text}" for e in CATALOG)
)

GENERATE_SYSTEM = (
    "You translate a dispatcher question into the planner's evidence formula "
    "language. Answer with the formula text only, on a single line. Multiple "
    "formulas are joined by '; '. Follow the examples exactly, adjusting vehicle "
    "numbers to the ones mentioned in the question."
)

EXPLAIN_SYSTEM = (
    "You are the explainer for an automated paratransit dispatch planner. Using the "
    "question, the evidence formulas and their scored results, and any retrieved "
    "service knowledge, write a short factual answer for the dispatcher. Do not "
    "invent numbers that are not in the evidence."
)


def classification_messages(query: str) -> list[dict]:
    return [{"role": "user", "content": f"Question: {query}"}]


def generation_messages(query: str, entry: QueryType) -> list[dict]:
    lines = [f"Question: {entry.text}\nLogic: {entry.gold}"]
    for example_query, example_formula in entry.fewshot:
        lines.append(f"Question: {example_query}\nLogic: {example_formula}")
    lines.append(f"Question: {query}\nLogic:")
    return [{"role": "user", "content": "\n\n".join(lines)}]


_TYPE_RE = re.compile(r"type:\s*(\d+|none)", re.IGNORECASE)


# --- backends ------------------------------------------------------------------

class FallbackBackend:
    """Rule-based backend: keyword-signature classification and gold-formula
    re-parameterization. Needs no network; every acceptance check runs on it."""

    name = "fallback"
    deterministic = True

    def classify_query(self, query: str) -> Classification:
        best: QueryType | None = None
        best_matched = 0.0
        best_total = 1.0
        for entry in CATALOG:
            matched, total = signature_score(query, entry.signature)
            if matched > best_matched:
                best, best_matched, best_total = entry, matched, total
        bg_matched, bg_total = signature_score(query, BACKGROUND_SIGNATURE)
        if best is None or best_matched < 2.0 or bg_matched > best_matched:
            return Classification(BACKGROUND, None, bg_matched / bg_total)
        return Classification(best.category, best.id, best_matched / best_total)

    def generate_text(self, query: str, entry: QueryType, attempt: int,
                      default_vehicle: int | None = None) -> str:
        return print_formula(reparameterize(entry, query, default_vehicle))

    def explain(self, bundle: "ExplanationBundle") -> str:
        return render_explanation(bundle)


class LlmBackend:
    """LLM-driven backend; classification and logic generation are separate
    calls. A deterministic client (the mock) gets template explanations so
    transcripts stay reproducible."""

    def __init__(self, client, temperature: float = 0.0):
        self.client = client
        self.temperature = temperature

    @property
    def name(self) -> str:
        return "mock" if self.deterministic else "remote"

    @property
    def deterministic(self) -> bool:
        return getattr(self.client, "deterministic", False)

    def classify_query(self, query: str) -> Classification:
        text = self.client.complete(CLASSIFY_SYSTEM, classification_messages(query),
                                    self.temperature)
        match = _TYPE_RE.search(text)
        if not match:
            raise LlmError(f"unparseable classification reply: {text!r}", {"query": query})
        if match.group(1).lower() == "none":
            return Classification(BACKGROUND, None, 1.0)
        type_id = int(match.group(1))
        try:
            entry = by_id(type_id)
        except KeyError:
            raise LlmError(f"classification named unknown type {type_id}",
                           {"query": query}) from None
        return Classification(entry.category, entry.id, 1.0)

    def generate_text(self, query: str, entry: QueryType, attempt: int,
                      default_vehicle: int | None = None) -> str:
        # bump the temperature after a failed attempt so retries can differ
        temperature = self.temperature if attempt == 0 else max(self.temperature, 0.7)
        return self.client.complete(GENERATE_SYSTEM, generation_messages(query, entry),
                                    temperature).strip()

    def explain(self, bundle: "ExplanationBundle") -> str:
        if self.deterministic:
            return render_explanation(bundle)
        return self.client.complete(EXPLAIN_SYSTEM, bundle.to_messages(), self.temperature)


def classify(query: str, backend) -> Classification:
    """Classify a free-form query into (category, type)."""
    if not query or not query.strip():
        raise DomainError("empty query")
    return backend.classify_query(query)


def generate_logic(query: str, classification: Classification, backend,
                   attempts: int = 3, default_vehicle: int | None = None) -> list:
    """Produce the formula list for a classified query; completions that do
    not parse are retried up to `attempts` times."""
    if classification.type_id is None:
        raise DomainError("knowledge-base queries have no logic form")
    entry = by_id(classification.type_id)
    raw_attempts: list[str] = []
    last_error: Exception | None = None
    for attempt in range(attempts):
        text = backend.generate_text(query, entry, attempt, default_vehicle)
        raw_attempts.append(text)
        try:
            return parse_formula(text)
        except ParseError as exc:
            last_error = exc
    raise LlmError(
        f"no parseable formula after {attempts} attempt(s): {last_error}",
        {"query": query, "completions": raw_attempts})


# --- explanation rendering ---------------------------------------------------------

def format_value(result: EvidenceResult) -> str:
    kind, value = result.kind, result.value
    if kind == "minutes":
        return f"{value:g} minutes"
    if kind == "count":
        return str(int(value))
    if kind == "ratio":
        return f"{value * 100:g}%"
    if kind == "boolean":
        return "yes" if value else "no"
    if kind == "reward":
        return f"{value:.4f}"
    if kind == "vehicle_id":
        return "rejected" if value == "rejected" else f"vehicle {value}"
    if kind == "pair":
        return f"pickup at minute {value[0]:g}, drop-off at minute {value[1]:g}"
    if kind == ERROR:
        return f"unavailable ({value})"
    return str(value)


@dataclass(slots=True)
class ExplanationBundle:
    query: str
    classification: Classification
    formulas: str | None
    results: list[EvidenceResult]
    chunks: list[tuple[RetrievalHit, str]]  # (hit, chunk text)
    decision_label: str | None
    history: list[tuple[str, str]]          # (query, explanation) of prior turns

    def to_messages(self) -> list[dict]:
        parts = [f"Question: {self.query}"]
        if self.formulas:
            parts.append(f"Evidence formulas: {self.formulas}")
        for result in self.results:
            parts.append(f"Result: {result.formula} = {format_value(result)}"
                         + (f" [{result.detail}]" if result.detail else ""))
        for hit, text in self.chunks:
            parts.append(f"Knowledge (relatedness {hit.relatedness:.2f}): {text}")
        if self.decision_label:
            parts.append(f"Current plan decision: {self.decision_label}")
        messages = []
        for prior_query, prior_answer in self.history[-8:]:
            messages.append({"role": "user", "content": prior_query})
            messages.append({"role": "assistant", "content": prior_answer})
        messages.append({"role": "user", "content": "\n".join(parts)})
        return messages


def render_explanation(bundle: ExplanationBundle) -> str:
    """Deterministic explanation used by offline backends."""
    lines: list[str] = []
    c = bundle.classification
    if c.type_id is None:
        lines.append("This is a service-knowledge question. From the knowledge base:")
        if not bundle.chunks:
            lines.append("- no sufficiently related knowledge was found.")
        for hit, text in bundle.chunks:
            lines.append(f"- ({hit.relatedness:.2f}) {text}")
    else:
        entry = by_id(c.type_id)
        if entry.level == "whatif":
            lines.append("Re-planning under the requested scenario gives:")
        else:
            lines.append("The planner's evidence for this question:")
        for result in bundle.results:
            line = f"- {result.formula} = {format_value(result)}"
            if result.detail:
                line += f" ({result.detail})"
            lines.append(line)
        if bundle.decision_label:
            lines.append(f"The committed plan for the current request is: {bundle.decision_label}.")
    return "\n".join(lines)


# --- sessions ------------------------------------------------------------------------

@dataclass(slots=True)
class Turn:
    index: int
    query: str
    classification: Classification
    formulas: str | None
    evidence: list[dict]
    knowledge: list[dict]
    explanation: str
    error: str | None = None
    rating: int | None = None

    def to_doc(self) -> dict:
        return {"index": self.index, "query": self.query,
                "classification": self.classification.to_doc(),
                "formulas": self.formulas, "evidence": self.evidence,
                "knowledge": self.knowledge, "explanation": self.explanation,
                "error": self.error, "rating": self.rating}


@dataclass(slots=True)
class ExplanationSession:
    id: str
    scenario: Scenario
    tree: SearchTree
    config: MctsConfig
    weights: RewardWeights
    store: ChunkStore
    rag_k: int = 3
    rag_threshold: float = 0.2
    turns: list[Turn] = field(default_factory=list)

    def request_id(self) -> int:
        return self.tree.node(self.tree.root).action.request_id

    def decision_label(self) -> str:
        return self.tree.decision.label()

    def rate(self, turn_index: int, stars: int) -> None:
        if not 1 <= stars <= 5:
            raise DomainError(f"rating must be 1..5, got {stars}")
        for turn in self.turns:
            if turn.index == turn_index:
                turn.rating = stars
                return
        raise DomainError(f"no such turn: {turn_index}")

    def to_doc(self) -> dict:
        return {"schema": SESSION_SCHEMA, "id": self.id,
                "decision": self.decision_label(),
                "turns": [t.to_doc() for t in self.turns]}


def answer(query: str, session: ExplanationSession, backend) -> Turn:
    """Run the full pipeline for one query and append the turn."""
    index = len(session.turns)
    classification = Classification(BACKGROUND, None, 0.0)
    formulas_text: str | None = None
    results: list[EvidenceResult] = []
    chunks: list[tuple[RetrievalHit, str]] = []
    error: str | None = None

    try:
        classification = classify(query, backend)
        if classification.type_id is not None:
            decision = session.tree.decision
            default_vehicle = decision.vehicle_id if decision.kind == ASSIGN else None
            formulas = generate_logic(query, classification, backend,
                                      default_vehicle=default_vehicle)
            formulas_text = print_formula(formulas)
            ctx = EvidenceQueryContext(session.tree, session.request_id(),
                                       session.weights, session.scenario, session.config)
            results = score_all(formulas, ctx)
        else:
            hits = session.store.retrieve(query, session.rag_k, session.rag_threshold)
            chunks = [(hit, session.store.chunk(hit.chunk_id).text) for hit in hits]
    except (DomainError, LlmError) as exc:
        error = str(exc)

    history = [(t.query, t.explanation) for t in session.turns]
    bundle = ExplanationBundle(query, classification, formulas_text, results,
                               chunks, session.decision_label(), history)
    if error is not None:
        explanation = (f"Sorry - I could not fully answer that. {error} "
                       f"Please rephrase or ask about the current plan.")
    else:
        try:
            explanation = backend.explain(bundle)
        except LlmError as exc:
            error = str(exc)
            explanation = (f"Sorry - I could not fully answer that. {error} "
                           f"Please rephrase or ask about the current plan.")

    turn = Turn(index, query, classification, formulas_text,
                [r.to_doc() for r in results],
                [{"chunk_id": hit.chunk_id, "relatedness": round(hit.relatedness, 6),
                  "text": text} for hit, text in chunks],
                explanation, error)
    session.turns.append(turn)
    return turn


def make_session(session_id: str, scenario: Scenario, config: MctsConfig,
                 weights: RewardWeights, store: ChunkStore,
                 rag_k: int = 3, rag_threshold: float = 0.2,
                 outcome: PlanOutcome | None = None) -> ExplanationSession:
    """Plan the scenario's pending request (unless a plan is supplied) and
    open a session around the resulting tree."""
    if outcome is None:
        pending = [r for r in scenario.world.requests if r.status == PENDING]
        if not pending:
            raise DomainError("scenario has no pending request to plan")
        request = min(pending, key=lambda r: (r.t_p, r.id))
        outcome = plan(scenario.world, request, config, weights, scenario.travel)
    return ExplanationSession(session_id, scenario, outcome.tree, config,
                              weights, store, rag_k, rag_threshold)


def session_to_json(session: ExplanationSession) -> str:
    return json.dumps(session.to_doc(), sort_keys=True, separators=(",", ":"))


# --- accuracy harness ------------------------------------------------------------------

@dataclass(slots=True)
class LevelReport:
    n: int = 0
    classification_acc1: float = 0.0
    classification_acc3: float = 0.0
    logic_acc1: float = 0.0
    logic_acc3: float = 0.0

    def to_doc(self) -> dict:
        return {"n": self.n,
                "classification_acc1": round(self.classification_acc1, 6),
                "classification_acc3": round(self.classification_acc3, 6),
                "logic_acc1": round(self.logic_acc1, 6),
                "logic_acc3": round(self.logic_acc3, 6)}


@dataclass(slots=True)
class AccuracyReport:
    levels: dict[str, LevelReport]
    overall: LevelReport
    skipped: int

    def to_doc(self) -> dict:
        return {"levels": {k: v.to_doc() for k, v in sorted(self.levels.items())},
                "overall": self.overall.to_doc(), "skipped": self.skipped}


def evaluate_corpus(items: list[dict], backend, attempts: int = 3) -> AccuracyReport:
    """Classification and logic accuracy against a labeled corpus.

    Acc@k counts an item correct when any of k independent attempts matches
    the gold label (structural AST equality for logic). Malformed rows are
    skipped and counted.
    """
    counters: dict[str, list[int]] = {}
    skipped = 0
    for item in items:
        try:
            query = item["query"]
            gold_type = item["type_id"]
            gold_category = item["category"]
            gold_ast = parse_formula(item["formulas"])
            entry = by_id(gold_type)
        except (KeyError, TypeError, ParseError):
            skipped += 1
            continue

        cls_hits = []
        logic_hits = []
        for attempt in range(attempts):
            try:
                c = backend.classify_query(query)
                cls_hits.append(c.category == gold_category and c.type_id == gold_type)
            except LlmError:
                cls_hits.append(False)
            try:
                text = backend.generate_text(query, entry, attempt)
                logic_hits.append(parse_formula(text) == gold_ast)
            except (LlmError, ParseError):
                logic_hits.append(False)

        bucket = counters.setdefault(entry.level, [0, 0, 0, 0, 0])
        bucket[0] += 1
        bucket[1] += 1 if cls_hits[0] else 0
        bucket[2] += 1 if any(cls_hits) else 0
        bucket[3] += 1 if logic_hits[0] else 0
        bucket[4] += 1 if any(logic_hits) else 0

    levels: dict[str, LevelReport] = {}
    total = [0, 0, 0, 0, 0]
    for level, (n, c1, c3, l1, l3) in counters.items():
        levels[level] = LevelReport(n, c1 / n, c3 / n, l1 / n, l3 / n)
        for i, v in enumerate((n, c1, c3, l1, l3)):
            total[i] += v
    n = total[0]
    overall = LevelReport(n, total[1] / n, total[2] / n, total[3] / n, total[4] / n) \
        if n else LevelReport()
    return AccuracyReport(levels, overall, skipped)


def load_paraphrase_corpus() -> list[dict]:
    path = Path(__file__).parent / "data" / "paraphrase_corpus.json"
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
