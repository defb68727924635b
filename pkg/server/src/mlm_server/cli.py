"""Entry point: lexforge-mlm-server --model <name-or-path> [--port N]."""

from __future__ import annotations

import argparse
import logging
import sys

from .app import create_app
from .config import ServerConfig


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lexforge-mlm-server",
        description="Serve a masked language model behind the mask-fill protocol.",
    )
    parser.add_argument("--model", required=True, help="model name or local path")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    parser.add_argument(
        "--oversample",
        type=int,
        default=4,
        help="raw candidates per request as a multiple of top_k",
    )
    parser.add_argument("--max-length", type=int, default=128, help="sequence-length cap")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )
    try:
        config = ServerConfig(
            model=args.model,
            host=args.host,
            port=args.port,
            oversample=args.oversample,
            max_length=args.max_length,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    import uvicorn

    uvicorn.run(create_app(config), host=config.host, port=config.port)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
