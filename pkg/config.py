"""
Configuration and constants for the Hash Chain matcher.
"""

import os
from dotenv import load_dotenv

load_dotenv()


def _int_env(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


def _int_list_env(name: str, default: tuple[int, ...]) -> tuple[int, ...]:
    raw = os.environ.get(name)
    if not raw:
        return default
    try:
        return tuple(int(part) for part in raw.split(",") if part.strip())
    except ValueError:
        raise ValueError(f"{name} must be a comma-separated list of integers, got {raw!r}") from None


# =============================================================================
# Algorithm Defaults
# =============================================================================
HC_DEFAULT_Q = _int_env("HC_DEFAULT_Q", 4)
HC_DEFAULT_ALPHA = _int_env("HC_DEFAULT_ALPHA", 12)
MAX_ALPHA = 30

# Filter word width w; Python ints are unbounded, so this is the simulated machine word
HC_WORD_BITS = _int_env("HC_WORD_BITS", 64)

# =============================================================================
# Benchmark / Selftest Defaults
# =============================================================================
BENCH_DEFAULT_RUNS = _int_env("BENCH_DEFAULT_RUNS", 50)
BENCH_MAX_RUNS = 500
BENCH_DEFAULT_LENGTHS = _int_list_env("BENCH_DEFAULT_LENGTHS", (8, 16, 32, 64, 128, 256, 512, 1024))
BENCH_DEFAULT_SEED = _int_env("BENCH_DEFAULT_SEED", 1)
BENCH_ALPHA_RANGE = (8, 16)

SELFTEST_MAX_TEXT = _int_env("SELFTEST_MAX_TEXT", 4096)
SELFTEST_SIGMAS = (2, 4, 20, 64, 256)

# =============================================================================
# Logging
# =============================================================================
LOG_LEVEL = os.environ.get("LOG_LEVEL", "INFO").upper()
BETTERSTACK_SOURCE_TOKEN = os.environ.get("BETTERSTACK_SOURCE_TOKEN")
BETTERSTACK_INGEST_HOST = os.environ.get("BETTERSTACK_INGEST_HOST")

# =============================================================================
# MCP Server
# =============================================================================
HOST = os.environ.get("HOST", "0.0.0.0")
PORT = _int_env("PORT", 8080)
MAX_POSITIONS_IN_RESPONSE = _int_env("MAX_POSITIONS_IN_RESPONSE", 2000)  # Above this, list is truncated
POSITIONS_PREVIEW = _int_env("POSITIONS_PREVIEW", 50)                    # Shown from each end when truncating

# Validate
if HC_DEFAULT_Q < 1:
    raise ValueError(f"HC_DEFAULT_Q must be >= 1, got {HC_DEFAULT_Q}")
if not 1 <= HC_DEFAULT_ALPHA <= MAX_ALPHA:
    raise ValueError(f"HC_DEFAULT_ALPHA must be in [1, {MAX_ALPHA}], got {HC_DEFAULT_ALPHA}")
if HC_WORD_BITS < 32 or HC_WORD_BITS & (HC_WORD_BITS - 1):
    raise ValueError(f"HC_WORD_BITS must be a power of two >= 32, got {HC_WORD_BITS}")
if not 1 <= BENCH_DEFAULT_RUNS <= BENCH_MAX_RUNS:
    raise ValueError(f"BENCH_DEFAULT_RUNS must be in [1, {BENCH_MAX_RUNS}], got {BENCH_DEFAULT_RUNS}")
if LOG_LEVEL not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
    raise ValueError(f"LOG_LEVEL must be a logging level name, got {LOG_LEVEL!r}")
