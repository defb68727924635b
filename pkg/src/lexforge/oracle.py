"""Mask-fill oracles: the source of target-language candidate words.

A query carries a token sequence with one position masked; an oracle
answers with candidate words for that slot, scored descending.  Two
implementations are provided:

* MockOracle: table-driven, for tests and offline runs.  The table maps
  context signatures (the token sequence with the mask placeholder,
  joined by single spaces) to candidate lists; unknown signatures fall
  back to a configurable list, empty by default.
* HttpOracle: a client for the mask-fill wire protocol, with bounded
  retries and exponential backoff.

Wire protocol (JSON over HTTP):

    POST /v1/mask-fill
    request   {"tokens": [...], "mask_index": <int>, "top_k": <int>}
    response  {"candidates": [{"word": <str>, "score": <float>}, ...]}

Status 200 on success, 400 on malformed requests, 503 while the serving
side is still loading.  The mask placeholder token is "[MASK]".

Mock table file format (JSON):

    {"top_k": 30,
     "fallback": ["word", ...] or [["word", score], ...],
     "signatures": {"<context signature>": ["word", ...] or [["word", score], ...]}}

Bare words in a list are scored 1/rank.
"""

from __future__ import annotations

import json
import time
import unicodedata
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Protocol, Sequence

import requests

MASK_TOKEN = "[MASK]"
ENDPOINT_PATH = "/v1/mask-fill"

DEFAULT_TOP_K = 30
DEFAULT_RETRIES = 3
DEFAULT_BACKOFF = 0.5
DEFAULT_TIMEOUT = 30.0


class OracleError(Exception):
    """Base class for oracle failures."""


class OracleUnavailableError(OracleError):
    """Transport-level failure that persisted through all retries."""


class OracleProtocolError(OracleError):
    """The other side violated the wire protocol; retrying cannot help."""


@dataclass(frozen=True)
class MaskQuery:
    """One masked slot to fill.

    tokens holds the full sentence with the placeholder at mask_index;
    top_k bounds the candidate list length.
    """

    tokens: tuple[str, ...]
    mask_index: int
    top_k: int = DEFAULT_TOP_K

    def __post_init__(self) -> None:
        if not self.tokens:
            raise ValueError("queries need at least one token")
        if not 0 <= self.mask_index < len(self.tokens):
            raise ValueError(
                f"mask_index {self.mask_index} out of range for {len(self.tokens)} tokens"
            )
        if self.top_k < 1:
            raise ValueError(f"top_k must be at least 1, got {self.top_k}")

    def signature(self) -> str:
        return " ".join(self.tokens)


@dataclass(frozen=True)
class Candidate:
    word: str
    score: float


class CandidateSet:
    """Scored candidate words, ordered by score descending.

    Construction sorts stably by score descending (server order breaks
    ties), validates that words are single whole tokens, and optionally
    truncates.  Iterating yields (word, score) pairs.
    """

    def __init__(self, pairs: Iterable[tuple[str, float]], top_k: int | None = None) -> None:
        items = []
        for word, score in pairs:
            if not word or any(ch.isspace() for ch in word):
                raise ValueError(f"candidate words must be single whole words, got {word!r}")
            items.append(Candidate(word, float(score)))
        items.sort(key=lambda c: -c.score)
        if top_k is not None:
            items = items[:top_k]
        self.candidates: tuple[Candidate, ...] = tuple(items)

    def __iter__(self) -> Iterator[tuple[str, float]]:
        return ((c.word, c.score) for c in self.candidates)

    def __len__(self) -> int:
        return len(self.candidates)

    def __bool__(self) -> bool:
        return bool(self.candidates)

    def words(self) -> list[str]:
        return [c.word for c in self.candidates]


class Oracle(Protocol):
    def mask_fill(self, query: MaskQuery) -> CandidateSet: ...


def _as_pairs(entries: Sequence) -> list[tuple[str, float]]:
    """Normalize a table candidate list: bare words score 1/rank."""
    pairs: list[tuple[str, float]] = []
    for rank, entry in enumerate(entries, start=1):
        if isinstance(entry, str):
            pairs.append((entry, 1.0 / rank))
        else:
            word, score = entry
            pairs.append((str(word), float(score)))
    return pairs


class MockOracle:
    """Deterministic table-driven oracle for tests and offline runs."""

    def __init__(
        self,
        table: Mapping[str, Sequence] | None = None,
        fallback: Sequence = (),
    ) -> None:
        self.table = {sig: _as_pairs(entries) for sig, entries in (table or {}).items()}
        self.fallback = _as_pairs(fallback)

    def mask_fill(self, query: MaskQuery) -> CandidateSet:
        pairs = self.table.get(query.signature(), self.fallback)
        return CandidateSet(pairs, top_k=query.top_k)


def load_mock_table(path: str) -> MockOracle:
    """Build a MockOracle from a JSON table file (NFC-normalized)."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise ValueError(f"mock table must be a JSON object: {path}")

    def norm(s: str) -> str:
        return unicodedata.normalize("NFC", s)

    def norm_entries(entries: Sequence) -> list:
        out = []
        for entry in entries:
            if isinstance(entry, str):
                out.append(norm(entry))
            else:
                out.append([norm(str(entry[0])), float(entry[1])])
        return out

    signatures = {
        norm(sig): norm_entries(entries)
        for sig, entries in raw.get("signatures", {}).items()
    }
    fallback = norm_entries(raw.get("fallback", []))
    return MockOracle(signatures, fallback)


def write_mock_table(
    path: str,
    signatures: Mapping[str, Sequence] | None = None,
    fallback: Sequence = (),
    top_k: int = DEFAULT_TOP_K,
) -> None:
    """Write a mock table file with stable key order."""
    payload = {
        "top_k": top_k,
        "fallback": list(fallback),
        "signatures": {sig: list(entries) for sig, entries in sorted((signatures or {}).items())},
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, ensure_ascii=False, indent=2, sort_keys=True)
        fh.write("\n")


def unigram_fallback(word_frequencies: Mapping[str, int], top_k: int = DEFAULT_TOP_K) -> list[str]:
    """Most frequent words, frequency descending then word ascending."""
    ranked = sorted(word_frequencies.items(), key=lambda kv: (-kv[1], kv[0]))
    return [word for word, _freq in ranked[:top_k]]


class HttpOracle:
    """Client for a mask-fill server speaking the wire protocol.

    Transport failures and 5xx responses are retried up to `retries`
    total attempts with exponential backoff; protocol violations (4xx,
    malformed response bodies) are raised immediately as
    OracleProtocolError.  After the retry budget is spent the query fails
    with OracleUnavailableError and the caller keeps the work item queued.
    """

    def __init__(
        self,
        url: str,
        retries: int = DEFAULT_RETRIES,
        backoff: float = DEFAULT_BACKOFF,
        timeout: float = DEFAULT_TIMEOUT,
        session: requests.Session | None = None,
    ) -> None:
        if retries < 1:
            raise ValueError(f"retries must be at least 1, got {retries}")
        base = url.rstrip("/")
        self.endpoint = base if base.endswith(ENDPOINT_PATH) else base + ENDPOINT_PATH
        self.retries = retries
        self.backoff = backoff
        self.timeout = timeout
        self.session = session or requests.Session()

    def mask_fill(self, query: MaskQuery) -> CandidateSet:
        payload = {
            "tokens": list(query.tokens),
            "mask_index": query.mask_index,
            "top_k": query.top_k,
        }
        last_failure: Exception | None = None
        for attempt in range(self.retries):
            if attempt:
                time.sleep(self.backoff * (2 ** (attempt - 1)))
            try:
                response = self.session.post(self.endpoint, json=payload, timeout=self.timeout)
            except requests.RequestException as exc:
                last_failure = exc
                continue
            if response.status_code >= 500 or response.status_code == 503:
                last_failure = OracleError(f"server answered {response.status_code}")
                continue
            if response.status_code != 200:
                raise OracleProtocolError(
                    f"server rejected the request with {response.status_code}: {response.text[:200]}"
                )
            return _parse_response(response)
        raise OracleUnavailableError(
            f"oracle at {self.endpoint} unavailable after {self.retries} attempts"
        ) from last_failure


def _parse_response(response: requests.Response) -> CandidateSet:
    try:
        body = response.json()
        raw = body["candidates"]
        pairs = [
            (unicodedata.normalize("NFC", str(entry["word"])), float(entry["score"]))
            for entry in raw
        ]
    except (ValueError, KeyError, TypeError) as exc:
        raise OracleProtocolError(f"malformed mask-fill response: {exc}") from exc
    try:
        return CandidateSet(pairs)
    except ValueError as exc:
        raise OracleProtocolError(str(exc)) from exc


def mask_fill(oracle: Oracle, query: MaskQuery) -> CandidateSet:
    return oracle.mask_fill(query)
