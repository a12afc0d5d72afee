"""Service configuration: a JSON file validated at startup.

Unknown keys are rejected so typos fail loudly instead of silently running
with defaults. Credentials never live in the file; only environment
variable NAMES do.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DomainError
from .planner import MctsConfig
from .transit import RewardWeights

GOLDEN_SCENARIO = "golden"


def golden_scenario_path() -> Path:
    return Path(__file__).parent / "data" / "golden_scenario.json"


def resolve_scenario_path(name: str) -> Path:
    if name == GOLDEN_SCENARIO:
        return golden_scenario_path()
    path = Path(name)
    if not path.is_file():
        raise DomainError(f"scenario file not found: {name}")
    return path


@dataclass(slots=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    scenario: str = GOLDEN_SCENARIO
    weights: RewardWeights = field(default_factory=RewardWeights)
    mcts: MctsConfig = field(default_factory=lambda: MctsConfig(iterations=240, seed=7))
    rag_k: int = 3
    rag_threshold: float = 0.2
    corpus_dir: str | None = None          # None: bundled corpus
    backend: str = "fallback"              # fallback | mock | remote
    llm_endpoint: str | None = None
    llm_model: str | None = None
    llm_api_key_env: str = "LLM_API_KEY"
    embed_endpoint: str | None = None
    embed_model: str | None = None
    embed_api_key_env: str = "EMBEDDING_API_KEY"
    tree_cache: int = 64
    persist_dir: str | None = None
    ui_dir: str | None = None

    def __post_init__(self):
        if self.backend not in ("fallback", "mock", "remote"):
            raise DomainError(f"unknown backend {self.backend!r}")
        if self.backend == "remote" and not (self.llm_endpoint and self.llm_model):
            raise DomainError("remote backend needs llm_endpoint and llm_model")
        if self.rag_k < 1:
            raise DomainError("rag_k must be >= 1")
        if not -1.0 <= self.rag_threshold <= 1.0 or math.isnan(self.rag_threshold):
            raise DomainError("rag_threshold must lie in [-1, 1]")
        if self.tree_cache < 1:
            raise DomainError("tree_cache must be >= 1")


def _take(doc: dict, allowed: set[str], where: str) -> None:
    unknown = set(doc) - allowed
    if unknown:
        raise DomainError(f"unknown config key(s) in {where}: {', '.join(sorted(unknown))}")


def config_from_doc(doc: dict) -> ServiceConfig:
    _take(doc, {"host", "port", "scenario", "weights", "mcts", "rag", "backend",
                "tree_cache", "persist_dir", "ui_dir"}, "config")
    kwargs: dict = {}
    for key in ("host", "port", "scenario", "tree_cache", "persist_dir", "ui_dir"):
        if key in doc:
            kwargs[key] = doc[key]
    if "weights" in doc:
        _take(doc["weights"], {"a", "b"}, "weights")
        kwargs["weights"] = RewardWeights(**doc["weights"])
    if "mcts" in doc:
        _take(doc["mcts"], {"iterations", "exploration", "rollout_horizon",
                            "max_children", "seed", "demand_rate"}, "mcts")
        kwargs["mcts"] = MctsConfig(**doc["mcts"])
    if "rag" in doc:
        _take(doc["rag"], {"k", "threshold", "corpus_dir"}, "rag")
        rag = doc["rag"]
        if "k" in rag:
            kwargs["rag_k"] = rag["k"]
        if "threshold" in rag:
            kwargs["rag_threshold"] = rag["threshold"]
        if "corpus_dir" in rag:
            kwargs["corpus_dir"] = rag["corpus_dir"]
    if "backend" in doc:
        _take(doc["backend"], {"kind", "endpoint", "model", "api_key_env",
                               "embed_endpoint", "embed_model", "embed_api_key_env"}, "backend")
        b = doc["backend"]
        kwargs["backend"] = b.get("kind", "fallback")
        kwargs["llm_endpoint"] = b.get("endpoint")
        kwargs["llm_model"] = b.get("model")
        if "api_key_env" in b:
            kwargs["llm_api_key_env"] = b["api_key_env"]
        kwargs["embed_endpoint"] = b.get("embed_endpoint")
        kwargs["embed_model"] = b.get("embed_model")
        if "embed_api_key_env" in b:
            kwargs["embed_api_key_env"] = b["embed_api_key_env"]
    return ServiceConfig(**kwargs)


def load_config(path: str) -> ServiceConfig:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DomainError(f"config {path} is not valid JSON: {exc}") from exc
    return config_from_doc(doc)


def build_backend(config: ServiceConfig):
    from .pipeline import FallbackBackend, LlmBackend, MockLlmClient, RemoteLlmClient

    if config.backend == "fallback":
        return FallbackBackend()
    if config.backend == "mock":
        return LlmBackend(MockLlmClient.bundled())
    return LlmBackend(RemoteLlmClient(config.llm_endpoint, config.llm_model,
                                      config.llm_api_key_env))


def build_embedder(config: ServiceConfig):
    from .rag import HashEmbedder, RemoteEmbedder

    if config.embed_endpoint and config.embed_model:
        return RemoteEmbedder(config.embed_endpoint, config.embed_model,
                              config.embed_api_key_env)
    return HashEmbedder()
