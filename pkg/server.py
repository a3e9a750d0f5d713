"""
Hash Chain MCP Server - exact string matching tools

Features:
- HC / SHC search with work counters, plus naive and Horspool baselines
- Benchmark reports in markdown or TSV
- Randomized selftest against the brute-force matcher

Structure:
- config.py: Configuration and constants
- core.py: Hashing, preprocessing, HC and SHC search
- baselines.py / bench.py / selftest.py: oracle, benchmark harness, selftest
- tools/: Individual tool modules
"""

import config
from fastmcp import FastMCP
from starlette.requests import Request
from starlette.responses import PlainTextResponse

from tools import register_all_tools

# =============================================================================
# MCP Server (create BEFORE logging setup)
# =============================================================================
mcp = FastMCP(
    name="Hash Chain Matcher",
    instructions="""Exact string matching with the Hash Chain (HC) and Sentinel Hash Chain (SHC) algorithms.

Use search_text to find all occurrences of a pattern, run_benchmark to compare algorithms on a corpus,
and run_selftest_trials to check the matchers against a brute-force oracle.""",
)

register_all_tools(mcp)


@mcp.custom_route("/health", methods=["GET"])
async def health(request: Request) -> PlainTextResponse:
    return PlainTextResponse("OK")


# NOW setup logging (after MCP creation)
from logging_conf import setup_betterstack, setup_logging, logger
setup_logging()
setup_betterstack()

app = mcp.http_app()

# =============================================================================
# Run Server
# =============================================================================
if __name__ == "__main__":
    logger.info(f"Starting Hash Chain MCP Server on {config.HOST}:{config.PORT}")
    import uvicorn
    uvicorn.run(app, host=config.HOST, port=config.PORT)
