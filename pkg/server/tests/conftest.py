"""Shared fixtures: a scripted backend and a client over it."""

from __future__ import annotations

import time

import pytest
from fastapi.testclient import TestClient

from mlm_server import ServerConfig, create_app

SPECIALS = {"[PAD]", "[UNK]", "[CLS]", "[SEP]", "<extra_mask>"}


class StubBackend:
    """Deterministic in-memory backend with a WordPiece-shaped vocabulary."""

    model_id = "stub-model"
    mask_symbol = "<extra_mask>"

    def __init__(self, raw: list[tuple[str, float]] | None = None) -> None:
        self.raw = raw if raw is not None else self.default_raw()
        self.queries: list[tuple[tuple[str, ...], int]] = []

    @staticmethod
    def default_raw() -> list[tuple[str, float]]:
        words = [f"word{i:02d}" for i in range(40)]
        scored = [(w, 0.9 / (rank + 1)) for rank, w in enumerate(words)]
        # salt the stream with pieces the filter must remove
        scored.insert(1, ("[SEP]", 0.89))
        scored.insert(3, ("##ing", 0.72))
        scored.insert(5, ("[CLS]", 0.55))
        scored.insert(7, ("##्र", 0.41))
        return scored

    def fill(self, tokens: list[str], n_raw: int) -> list[tuple[str, float]]:
        self.queries.append((tuple(tokens), n_raw))
        return self.raw[:n_raw]

    def is_word(self, piece: str) -> bool:
        return (
            bool(piece)
            and piece not in SPECIALS
            and not piece.startswith("##")
            and not any(ch.isspace() for ch in piece)
        )


@pytest.fixture()
def stub() -> StubBackend:
    return StubBackend()


@pytest.fixture()
def client(stub):
    config = ServerConfig(model="stub-model", oversample=4)
    app = create_app(config, backend_factory=lambda: stub)
    with TestClient(app) as test_client:
        # the backend loads in a worker thread; wait for readiness
        for _ in range(200):
            if test_client.get("/healthz").status_code == 200:
                break
            time.sleep(0.01)
        yield test_client
