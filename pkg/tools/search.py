"""
Search tool: exact matching of a pattern in a text or a text file.
"""

import asyncio
import logging
import time
from pathlib import Path
from typing import Literal

from pydantic import Field

import config
import core
from baselines import SEARCHERS, BaselineAlgo

logger = logging.getLogger("hashchain.tools")

HELPFUL_ERRORS = {
    "shorter than q": "Lower q (q-gram length) to at most the pattern length.",
    "alpha must be": f"alpha sets a table of 2^alpha words; use 1..{config.MAX_ALPHA} (8-12 is typical).",
    "q must be": "q is the q-gram length; use a value >= 1 (4 is a good default).",
    "empty": "Give a non-empty pattern.",
    "no such file": "Check the text_path; it is resolved on the server.",
}


def enhance_error(error_msg: str) -> str:
    """Add helpful hints to error messages."""
    error_lower = error_msg.lower()
    for key, hint in HELPFUL_ERRORS.items():
        if key in error_lower:
            return f"❌ {error_msg}\n\n💡 Hint: {hint}"
    return f"❌ {error_msg}"


def truncate_positions(positions: list[int], max_items: int = config.MAX_POSITIONS_IN_RESPONSE,
                       preview: int = config.POSITIONS_PREVIEW) -> tuple[list[int], dict]:
    """Keep the first and last `preview` positions of a long occurrence list.

    Returns: (possibly_truncated_positions, metadata)
    """
    total = len(positions)
    if total <= max_items or total <= preview * 2:
        return positions, {"truncated": False, "total": total, "shown": total}
    return positions[:preview] + positions[-preview:], {
        "truncated": True,
        "total": total,
        "shown": preview * 2,
        "omitted": total - preview * 2,
        "preview": f"first {preview} + last {preview} of {total}",
    }


def _search_internal(pattern: str, text: str | None = None, text_path: str | None = None,
                     algo: str = "hc", q: int = config.HC_DEFAULT_Q, alpha: int = config.HC_DEFAULT_ALPHA,
                     count_only: bool = False) -> dict:
    """Search and format the result; errors come back as {"error": ...}."""
    if (text is None) == (text_path is None):
        return {"error": "❌ Give exactly one of text or text_path.\n\n💡 Hint: text is searched as UTF-8 bytes."}
    needle = pattern.encode("utf-8")
    try:
        haystack = Path(text_path).read_bytes() if text_path is not None else text.encode("utf-8")
    except OSError as e:
        logger.warning(f"Cannot read {text_path}: {e}")
        return {"error": enhance_error(f"cannot read {text_path}: {e.strerror}")}

    meta = {"algorithm": algo, "m": len(needle), "n": len(haystack)}
    start_time = time.perf_counter()
    try:
        if algo in ("hc", "shc"):
            if q > len(needle) > 0:
                meta["warning"] = f"q={q} exceeds pattern length {len(needle)}, using q={len(needle)}"
                q = len(needle)
            cp = core.compile(needle, q, alpha)
            found, metrics = core.search(cp, haystack, algo)
            meta.update({"q": q, "alpha": alpha, "windows": metrics.windows,
                         "qgram_hashes": metrics.qgram_hashes, "verifications": metrics.verifications})
        else:
            found = SEARCHERS[BaselineAlgo(algo)](needle, haystack)
    except core.HashChainError as e:
        logger.warning(f"Search rejected: {e}")
        return {"error": enhance_error(str(e))}
    meta["search_time_ms"] = round((time.perf_counter() - start_time) * 1000, 2)
    logger.info(f"Search {algo}: {len(found)} occurrences in {meta['search_time_ms']}ms")

    if count_only:
        return {"count": len(found), "meta": meta}
    positions, trunc_meta = truncate_positions([occ.start for occ in found])
    meta.update(trunc_meta)
    return {"positions": positions, "meta": meta}


def register_search_tools(mcp):
    """Register search tools."""

    @mcp.tool()
    async def search_text(
        pattern: str = Field(description="Pattern to find (matched as exact UTF-8 bytes)"),
        text: str | None = Field(default=None, description="Text to search in"),
        text_path: str | None = Field(default=None, description="Server-side file to search in (raw bytes)"),
        algo: Literal["hc", "shc", "naive", "horspool"] = Field(default="hc", description="Matching algorithm"),
        q: int = Field(default=config.HC_DEFAULT_Q, description="q-gram length (hc/shc)"),
        alpha: int = Field(default=config.HC_DEFAULT_ALPHA, description="Filter table has 2^alpha words (hc/shc)"),
        count_only: bool = Field(default=False, description="Return only the number of occurrences"),
    ) -> dict:
        """Find all occurrences (overlapping included) of a pattern.

Returns:
    Zero-based start positions, ascending, plus work counters for hc/shc.
    Long position lists are truncated to the first and last entries.
        """
        logger.info(f"search_text: algo={algo}, m={len(pattern)}, path={text_path}, q={q}, alpha={alpha}")
        return await asyncio.to_thread(_search_internal, pattern, text, text_path, algo, q, alpha, count_only)
