"""HTTP service: scenarios, planning, evidence, CTL checks, chat sessions.

Search trees are kept in a bounded LRU keyed by a digest of their canonical
serialization (optionally spilled to a persistence directory); GET /tree
returns planner bytes unmodified, so clients round-trip losslessly. One
scenario is loaded per process and planned one epoch at a time; sessions
share its current tree unless they name another.
"""

from __future__ import annotations

import hashlib
import threading
import uuid
from collections import OrderedDict
from dataclasses import replace
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel

from . import ctl as ctl_mod
from .catalog import CATALOG
from .config import ServiceConfig, build_backend, build_embedder, resolve_scenario_path
from .errors import DomainError, LlmError, ParseError
from .logic import parse_formula, parse_ctl
from .pipeline import ExplanationSession, answer, make_session
from .planner import PlanOutcome, SearchTree, action_to_doc, plan, tree_from_json, tree_to_json
from .rag import index as rag_index, load_corpus
from .scoring import EvidenceQueryContext, score_all
from .transit import PENDING, load_scenario, scenario_to_doc


class PlanBody(BaseModel):
    seed: int | None = None


class EvidenceBody(BaseModel):
    tree_id: str | None = None
    formula: str


class CtlBody(BaseModel):
    tree_id: str | None = None
    formula: str


class SessionBody(BaseModel):
    tree_id: str | None = None


class QueryBody(BaseModel):
    text: str


class RatingBody(BaseModel):
    stars: int


def _error_response(status: int, code: str, message: str, **extra) -> JSONResponse:
    return JSONResponse({"error": {"code": code, "message": message, **extra}},
                        status_code=status)


class TreeStore:
    """Bounded LRU of (tree, canonical bytes), optionally persisted."""

    def __init__(self, capacity: int, persist_dir: str | None = None):
        self.capacity = capacity
        self.persist_dir = Path(persist_dir) if persist_dir else None
        self._trees: OrderedDict[str, tuple[SearchTree, str]] = OrderedDict()
        self._lock = threading.Lock()

    def put(self, tree: SearchTree) -> str:
        text = tree_to_json(tree)
        tree_id = hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]
        with self._lock:
            self._trees[tree_id] = (tree, text)
            self._trees.move_to_end(tree_id)
            while len(self._trees) > self.capacity:
                self._trees.popitem(last=False)
        if self.persist_dir:
            self.persist_dir.mkdir(parents=True, exist_ok=True)
            (self.persist_dir / f"{tree_id}.json").write_text(text, encoding="utf-8")
        return tree_id

    def get(self, tree_id: str) -> tuple[SearchTree, str] | None:
        with self._lock:
            found = self._trees.get(tree_id)
            if found:
                self._trees.move_to_end(tree_id)
                return found
        if self.persist_dir:
            path = self.persist_dir / f"{tree_id}.json"
            if path.is_file():
                text = path.read_text(encoding="utf-8")
                tree = tree_from_json(text)
                with self._lock:
                    self._trees[tree_id] = (tree, text)
                return tree, text
        return None


def create_app(config: ServiceConfig) -> FastAPI:
    app = FastAPI(title="treexplain", docs_url=None, redoc_url=None)

    scenario = load_scenario(str(resolve_scenario_path(config.scenario)))
    embedder = build_embedder(config)
    store = rag_index(load_corpus(config.corpus_dir), embedder)
    backend = build_backend(config)
    trees = TreeStore(config.tree_cache, config.persist_dir)
    sessions: dict[str, ExplanationSession] = {}
    session_locks: dict[str, threading.Lock] = {}
    state = {"current_tree_id": None}

    app.state.scenario = scenario
    app.state.config = config
    app.state.trees = trees
    app.state.sessions = sessions

    @app.exception_handler(LlmError)
    async def _llm_error(_request: Request, exc: LlmError):
        return _error_response(502, "backend_failure", str(exc))

    def _run_plan(seed: int | None) -> tuple[str, dict]:
        pending = [r for r in scenario.world.requests if r.status == PENDING]
        if not pending:
            raise DomainError("scenario has no pending request")
        request = min(pending, key=lambda r: (r.t_p, r.id))
        mcts = config.mcts if seed is None else replace(config.mcts, seed=seed)
        outcome = plan(scenario.world, request, mcts, config.weights, scenario.travel)
        tree_id = trees.put(outcome.tree)
        state["current_tree_id"] = tree_id
        return tree_id, {"decision": action_to_doc(outcome.decision),
                         "tree_id": tree_id, "violation": outcome.violation}

    def _lookup_tree(tree_id: str | None):
        resolved = tree_id or state["current_tree_id"]
        if resolved is None:
            tid, _ = _run_plan(None)
            resolved = tid
        found = trees.get(resolved)
        if found is None:
            return None, _error_response(404, "unknown_tree", f"no tree {resolved!r}")
        return (resolved, *found), None

    @app.get("/scenario")
    def get_scenario():
        return scenario_to_doc(scenario)

    @app.post("/plan")
    def post_plan(body: PlanBody):
        try:
            _, doc = _run_plan(body.seed)
        except DomainError as exc:
            return _error_response(400, "invalid_plan_request", str(exc))
        return doc

    @app.get("/tree/{tree_id}")
    def get_tree(tree_id: str):
        found = trees.get(tree_id)
        if found is None:
            return _error_response(404, "unknown_tree", f"no tree {tree_id!r}")
        return Response(content=found[1], media_type="application/json")

    @app.post("/evidence")
    def post_evidence(body: EvidenceBody):
        looked, err = _lookup_tree(body.tree_id)
        if err:
            return err
        _, tree, _ = looked
        try:
            formulas = parse_formula(body.formula)
        except ParseError as exc:
            return _error_response(400, "malformed_formula", str(exc), position=exc.position)
        request_id = tree.node(tree.root).action.request_id
        ctx = EvidenceQueryContext(tree, request_id, config.weights, scenario, config.mcts)
        return {"results": [r.to_doc() for r in score_all(formulas, ctx)]}

    @app.post("/ctl")
    def post_ctl(body: CtlBody):
        looked, err = _lookup_tree(body.tree_id)
        if err:
            return err
        _, tree, _ = looked
        try:
            formula = parse_ctl(body.formula)
        except ParseError as exc:
            return _error_response(400, "malformed_formula", str(exc), position=exc.position)
        request_id = tree.node(tree.root).action.request_id
        kripke = ctl_mod.build_kripke(tree, request_id)
        try:
            satisfying = ctl_mod.check(kripke, formula)
        except DomainError as exc:
            return _error_response(400, "unknown_proposition", str(exc))
        return {"satisfying": sorted(satisfying), "holds_at_root": kripke.root in satisfying}

    @app.post("/session")
    def post_session(body: SessionBody):
        looked, err = _lookup_tree(body.tree_id)
        if err:
            return err
        _, tree, _ = looked
        session_id = uuid.uuid4().hex[:12]
        outcome = PlanOutcome(tree.decision, tree)
        sessions[session_id] = make_session(session_id, scenario, config.mcts,
                                            config.weights, store, config.rag_k,
                                            config.rag_threshold, outcome)
        session_locks[session_id] = threading.Lock()
        return {"session_id": session_id}

    @app.get("/session/{session_id}")
    def get_session(session_id: str):
        session = sessions.get(session_id)
        if session is None:
            return _error_response(404, "unknown_session", f"no session {session_id!r}")
        return session.to_doc()

    @app.post("/session/{session_id}/query")
    def post_query(session_id: str, body: QueryBody):
        session = sessions.get(session_id)
        if session is None:
            return _error_response(404, "unknown_session", f"no session {session_id!r}")
        if not body.text or not body.text.strip():
            return _error_response(400, "empty_query", "query text is empty")
        with session_locks[session_id]:
            turn = answer(body.text, session, backend)
        return turn.to_doc()

    @app.post("/session/{session_id}/turns/{turn_index}/rating")
    def post_rating(session_id: str, turn_index: int, body: RatingBody):
        session = sessions.get(session_id)
        if session is None:
            return _error_response(404, "unknown_session", f"no session {session_id!r}")
        try:
            session.rate(turn_index, body.stars)
        except DomainError as exc:
            return _error_response(400, "invalid_rating", str(exc))
        return {"ok": True, "turn": turn_index, "rating": body.stars}

    @app.get("/suggestions")
    def get_suggestions():
        return {"suggestions": [{"type_id": e.id, "category": e.category, "text": e.text}
                                for e in CATALOG]}

    if config.ui_dir:
        ui = Path(config.ui_dir)
        if ui.is_dir():
            from fastapi.staticfiles import StaticFiles
            app.mount("/ui", StaticFiles(directory=str(ui), html=True), name="ui")

    return app


def serve(config: ServiceConfig) -> None:
    import uvicorn

    uvicorn.run(create_app(config), host=config.host, port=config.port, log_level="info")
