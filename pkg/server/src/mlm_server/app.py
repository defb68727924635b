"""The HTTP service: one mask-fill endpoint plus a readiness probe.

POST /v1/mask-fill
    {"tokens": [...], "mask_index": int, "top_k": int}
    -> {"candidates": [{"word": str, "score": float}, ...]}
    400 on malformed bodies or an out-of-range mask_index,
    503 while the model is still loading.

GET /healthz
    {"ready": bool, "model": str} — 503 until the model is ready.

The slot at mask_index (sent as "[MASK]" on the wire) is replaced with
whatever mask symbol the served model uses.  Raw candidates are
oversampled, filtered down to single whole-word pieces, deduplicated,
and truncated to top_k with their raw probabilities (non-increasing,
unnormalized).
"""

from __future__ import annotations

import contextlib
import logging
import threading
from typing import Callable

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .backend import FillBackend, TransformersBackend
from .config import ServerConfig

log = logging.getLogger("mlm_server")


def _bad_request(detail: str) -> JSONResponse:
    return JSONResponse({"error": detail}, status_code=400)


def _validate(payload: object) -> tuple[list[str], int, int] | str:
    """Parse a mask-fill request body; return an error string if invalid."""
    if not isinstance(payload, dict):
        return "body must be a JSON object"
    extra = set(payload) - {"tokens", "mask_index", "top_k"}
    if extra:
        return f"unexpected fields: {sorted(extra)}"
    tokens = payload.get("tokens")
    mask_index = payload.get("mask_index")
    top_k = payload.get("top_k")
    if not isinstance(tokens, list) or not tokens:
        return "tokens must be a non-empty list"
    for token in tokens:
        if not isinstance(token, str) or not token or any(ch.isspace() for ch in token):
            return f"tokens must be non-empty whitespace-free strings, got {token!r}"
    if isinstance(mask_index, bool) or not isinstance(mask_index, int):
        return "mask_index must be an integer"
    if not 0 <= mask_index < len(tokens):
        return f"mask_index {mask_index} out of range for {len(tokens)} tokens"
    if isinstance(top_k, bool) or not isinstance(top_k, int) or top_k < 1:
        return "top_k must be a positive integer"
    return tokens, mask_index, top_k


def create_app(
    config: ServerConfig,
    backend_factory: Callable[[], FillBackend] | None = None,
) -> FastAPI:
    """Build the service; the backend loads on startup in a worker thread."""
    if backend_factory is None:
        backend_factory = lambda: TransformersBackend(config.model, config.max_length)

    state: dict[str, FillBackend | None] = {"backend": None}
    lock = threading.Lock()  # model inference is serialized

    @contextlib.asynccontextmanager
    async def lifespan(app: FastAPI):
        def load() -> None:
            log.info("loading model %s", config.model)
            backend = backend_factory()
            state["backend"] = backend
            log.info("model ready (mask symbol %r)", backend.mask_symbol)

        thread = threading.Thread(target=load, daemon=True)
        thread.start()
        yield

    app = FastAPI(lifespan=lifespan)

    @app.get("/healthz")
    def healthz() -> JSONResponse:
        backend = state["backend"]
        if backend is None:
            return JSONResponse({"ready": False, "model": config.model}, status_code=503)
        return JSONResponse({"ready": True, "model": backend.model_id})

    @app.post("/v1/mask-fill")
    async def mask_fill(request: Request) -> JSONResponse:
        try:
            payload = await request.json()
        except Exception:
            return _bad_request("body is not valid JSON")
        parsed = _validate(payload)
        if isinstance(parsed, str):
            return _bad_request(parsed)
        tokens, mask_index, top_k = parsed

        backend = state["backend"]
        if backend is None:
            return JSONResponse({"error": "model is still loading"}, status_code=503)

        masked = list(tokens)
        masked[mask_index] = backend.mask_symbol
        with lock:
            raw = backend.fill(masked, config.oversample * top_k)

        candidates = []
        seen: set[str] = set()
        for piece, score in raw:
            if not backend.is_word(piece) or piece in seen:
                continue
            seen.add(piece)
            candidates.append({"word": piece, "score": score})
            if len(candidates) == top_k:
                break
        return JSONResponse({"candidates": candidates})

    return app
