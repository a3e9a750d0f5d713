"""Logging configuration for the Hash Chain matcher."""
import logging
import sys

import config

logger = logging.getLogger("hashchain")
logger.setLevel(getattr(logging, config.LOG_LEVEL))

FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

_stderr_handler: logging.StreamHandler | None = None
_betterstack_initialized = False


def setup_logging():
    """Attach a stderr handler to the project logger (CLI entry points)."""
    global _stderr_handler
    if _stderr_handler is None:
        _stderr_handler = logging.StreamHandler(sys.stderr)
        _stderr_handler.setFormatter(logging.Formatter(FORMAT))
        logger.addHandler(_stderr_handler)
    elif _stderr_handler.stream is not sys.stderr:
        # sys.stderr was swapped since the last call (e.g. captured output)
        _stderr_handler.setStream(sys.stderr)


def setup_betterstack():
    """Call this AFTER FastMCP is created."""
    global _betterstack_initialized
    if _betterstack_initialized or not config.BETTERSTACK_SOURCE_TOKEN:
        return

    from logtail import LogtailHandler
    handler_kwargs = {"source_token": config.BETTERSTACK_SOURCE_TOKEN}
    if config.BETTERSTACK_INGEST_HOST:
        handler_kwargs["host"] = config.BETTERSTACK_INGEST_HOST

    handler = LogtailHandler(**handler_kwargs)
    handler.setLevel(logging.DEBUG)
    handler.setFormatter(logging.Formatter(FORMAT))

    for name in ['FastMCP', 'uvicorn', 'uvicorn.error', 'hashchain', 'mcp']:
        logging.getLogger(name).addHandler(handler)

    _betterstack_initialized = True
    logger.info("Betterstack logging enabled")
