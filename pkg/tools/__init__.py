"""
MCP tools for the Hash Chain matcher.
"""

from tools.search import register_search_tools
from tools.bench import register_bench_tools


def register_all_tools(mcp):
    """Register all tools with the MCP server."""
    register_search_tools(mcp)
    register_bench_tools(mcp)
