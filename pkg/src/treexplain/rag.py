"""Knowledge retrieval for background queries.

Plain-text documents are chunked at paragraph boundaries (long paragraphs
split at a word cap), embedded, and ranked against the query by cosine
relatedness; only chunks at or above the threshold are returned. The
default embedder is a deterministic token-hash bag (no network, stable
across runs and platforms); a remote embedding-service client can be
selected through configuration.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

import httpx

from .errors import DomainError

STORE_SCHEMA = "chunks/v1"
DEFAULT_K = 3
DEFAULT_THRESHOLD = 0.2
DEFAULT_MAX_WORDS = 120
HASH_DIM = 256

_TOKEN = re.compile(r"[a-z0-9']+")


@dataclass(frozen=True, slots=True)
class Chunk:
    id: int
    section: str
    text: str
    embedding: tuple[float, ...]


@dataclass(frozen=True, slots=True)
class RetrievalHit:
    chunk_id: int
    relatedness: float


class Embedder(Protocol):
    def embed(self, text: str) -> tuple[float, ...]: ...


class HashEmbedder:
    """Counted bag of token hashes, L2-normalized. Same text, same vector."""

    def __init__(self, dim: int = HASH_DIM):
        self.dim = dim

    def embed(self, text: str) -> tuple[float, ...]:
        if not text.strip():
            raise DomainError("cannot embed empty text")
        counts = [0.0] * self.dim
        for token in _TOKEN.findall(text.lower()):
            digest = hashlib.md5(token.encode("utf-8")).digest()
            counts[int.from_bytes(digest[:4], "big") % self.dim] += 1.0
        norm = math.sqrt(sum(c * c for c in counts))
        if norm == 0.0:
            # text with no word characters still gets a stable nonzero vector
            counts[0] = 1.0
            norm = 1.0
        return tuple(c / norm for c in counts)


class RemoteEmbedder:
    """Client for an embedding service; the credential comes from the
    environment so it never lands in config files."""

    def __init__(self, endpoint: str, model: str, api_key_env: str = "EMBEDDING_API_KEY",
                 timeout: float = 30.0):
        self.endpoint = endpoint
        self.model = model
        self.api_key_env = api_key_env
        self.timeout = timeout

    def embed(self, text: str) -> tuple[float, ...]:
        if not text.strip():
            raise DomainError("cannot embed empty text")
        key = os.environ.get(self.api_key_env)
        if not key:
            raise DomainError(f"missing credential: set ${self.api_key_env}")
        response = httpx.post(self.endpoint,
                              headers={"Authorization": f"Bearer {key}"},
                              json={"model": self.model, "input": text},
                              timeout=self.timeout)
        response.raise_for_status()
        return tuple(response.json()["data"][0]["embedding"])


def cosine(u: tuple[float, ...], v: tuple[float, ...]) -> float:
    """dot(u, v) / (|u| |v|), clamped into [-1, 1]."""
    if len(u) != len(v):
        raise DomainError(f"dimension mismatch: {len(u)} vs {len(v)}")
    if u == v:
        if not any(u):
            raise DomainError("cosine of a zero vector is undefined")
        return 1.0
    nu = math.sqrt(sum(x * x for x in u))
    nv = math.sqrt(sum(y * y for y in v))
    if nu == 0.0 or nv == 0.0:
        raise DomainError("cosine of a zero vector is undefined")
    value = sum(x * y for x, y in zip(u, v)) / (nu * nv)
    return max(-1.0, min(1.0, value))


def split_paragraphs(text: str, max_words: int = DEFAULT_MAX_WORDS) -> list[str]:
    """Paragraph-boundary chunking with a word cap on each piece."""
    if max_words < 1:
        raise DomainError("max_words must be >= 1")
    pieces: list[str] = []
    for paragraph in re.split(r"\n\s*\n", text):
        words = paragraph.split()
        if not words:
            continue
        for start in range(0, len(words), max_words):
            pieces.append(" ".join(words[start:start + max_words]))
    return pieces


class ChunkStore:
    """Immutable after construction; retrieval is safe to share."""

    def __init__(self, chunks: list[Chunk], embedder: Embedder):
        if not chunks:
            raise DomainError("cannot build a store with no chunks")
        dims = {len(c.embedding) for c in chunks}
        if len(dims) != 1:
            raise DomainError(f"inconsistent embedding dimensions: {sorted(dims)}")
        self.chunks = list(chunks)
        self.embedder = embedder

    def __len__(self) -> int:
        return len(self.chunks)

    def chunk(self, chunk_id: int) -> Chunk:
        for c in self.chunks:
            if c.id == chunk_id:
                return c
        raise DomainError(f"no such chunk: {chunk_id}")

    def retrieve(self, query: str, k: int = DEFAULT_K,
                 threshold: float = DEFAULT_THRESHOLD) -> list[RetrievalHit]:
        """Top-k chunks with relatedness >= threshold, best first; ties break
        on the lower chunk id."""
        if not query or not query.strip():
            raise DomainError("empty query")
        if k < 1:
            raise DomainError("k must be >= 1")
        vector = self.embedder.embed(query)
        scored = [RetrievalHit(c.id, cosine(vector, c.embedding)) for c in self.chunks]
        scored.sort(key=lambda h: (-h.relatedness, h.chunk_id))
        return [h for h in scored[:k] if h.relatedness >= threshold]

    def to_doc(self) -> dict:
        return {"schema": STORE_SCHEMA,
                "chunks": [{"id": c.id, "section": c.section, "text": c.text,
                            "vector": list(c.embedding)} for c in self.chunks]}

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_doc(), fh, sort_keys=True)
            fh.write("\n")

    @classmethod
    def from_doc(cls, doc: dict, embedder: Embedder) -> "ChunkStore":
        if doc.get("schema") != STORE_SCHEMA:
            raise DomainError(f"unsupported chunk store schema: {doc.get('schema')!r}")
        chunks = [Chunk(c["id"], c["section"], c["text"], tuple(c["vector"]))
                  for c in doc["chunks"]]
        return cls(chunks, embedder)

    @classmethod
    def load(cls, path: str, embedder: Embedder) -> "ChunkStore":
        with open(path, encoding="utf-8") as fh:
            return cls.from_doc(json.load(fh), embedder)


def index(documents: list[tuple[str, str]], embedder: Embedder,
          max_words: int = DEFAULT_MAX_WORDS) -> ChunkStore:
    """Chunk and embed (section, text) documents. Ids follow document order,
    so re-indexing the same corpus reproduces the same store."""
    if not documents:
        raise DomainError("empty corpus")
    chunks: list[Chunk] = []
    next_id = 0
    for section, text in documents:
        for piece in split_paragraphs(text, max_words):
            chunks.append(Chunk(next_id, section, piece, embedder.embed(piece)))
            next_id += 1
    if not chunks:
        raise DomainError("corpus contained no text")
    return ChunkStore(chunks, embedder)


def bundled_corpus_dir() -> Path:
    return Path(__file__).parent / "corpus"


def load_corpus(directory: str | Path | None = None) -> list[tuple[str, str]]:
    """Read every .txt file of a corpus directory, sorted by name."""
    root = Path(directory) if directory else bundled_corpus_dir()
    if not root.is_dir():
        raise DomainError(f"corpus directory not found: {root}")
    documents = []
    for path in sorted(root.glob("*.txt")):
        documents.append((path.stem, path.read_text(encoding="utf-8")))
    if not documents:
        raise DomainError(f"no .txt documents in {root}")
    return documents


def bundled_store(embedder: Embedder | None = None,
                  max_words: int = DEFAULT_MAX_WORDS) -> ChunkStore:
    return index(load_corpus(), embedder or HashEmbedder(), max_words)
