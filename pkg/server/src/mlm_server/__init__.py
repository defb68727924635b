"""Reference mask-fill inference server.

Wraps a masked language model behind the HTTP protocol the lexicon
induction engine queries: POST /v1/mask-fill plus a /healthz readiness
probe.  See app.create_app for the endpoint contract.
"""

from .app import create_app
from .backend import FillBackend, TransformersBackend
from .config import CLIENT_MASK, ServerConfig

__all__ = [
    "CLIENT_MASK",
    "FillBackend",
    "ServerConfig",
    "TransformersBackend",
    "create_app",
]
__version__ = "0.1.0"
