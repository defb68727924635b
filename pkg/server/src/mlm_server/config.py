"""Server configuration."""

from __future__ import annotations

from dataclasses import dataclass

CLIENT_MASK = "[MASK]"  # the mask symbol on the wire, whatever the model uses


@dataclass(frozen=True)
class ServerConfig:
    """Settings for one server process.

    model       name or path of the masked language model to serve
    host, port  bind address
    oversample  raw candidates fetched per request, as a multiple of the
                requested top_k; the single-word filter then thins them out
    max_length  encoder sequence-length cap; over-long inputs are truncated
    """

    model: str
    host: str = "127.0.0.1"
    port: int = 8000
    oversample: int = 4
    max_length: int = 128

    def __post_init__(self) -> None:
        if not self.model:
            raise ValueError("model must be set")
        if not 1 <= self.port <= 65535:
            raise ValueError(f"port out of range: {self.port}")
        if self.oversample < 1:
            raise ValueError(f"oversample must be at least 1, got {self.oversample}")
        if self.max_length < 8:
            raise ValueError(f"max_length must be at least 8, got {self.max_length}")
