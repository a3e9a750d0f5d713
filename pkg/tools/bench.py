"""
Benchmark and selftest tools.
"""

import asyncio
import logging
import time
from pathlib import Path
from typing import Literal

from pydantic import Field

import config
from bench import BenchConfig, BenchConfigError, BenchCorrectnessError, CorpusError, render_report, run_bench
from selftest import run_selftest

logger = logging.getLogger("hashchain.tools")


def _bench_internal(corpus_path: str | None, gen_sigma: int | None, gen_n: int | None, lengths: list[int],
                    runs: int, algorithms: list[str], q_values: list[int], alpha_values: list[int],
                    seed: int, fmt: str) -> dict:
    if (corpus_path is None) == (gen_sigma is None or gen_n is None):
        return {"error": "❌ Give exactly one corpus source.\n\n💡 Hint: corpus_path, or gen_sigma with gen_n."}
    cfg = BenchConfig(
        corpus_path=Path(corpus_path) if corpus_path else None,
        generate=(gen_sigma, gen_n) if corpus_path is None else None,
        lengths=tuple(lengths), runs=runs, algorithms=tuple(algorithms),
        q_values=tuple(q_values), alpha_values=tuple(alpha_values), seed=seed,
    )
    start_time = time.perf_counter()
    try:
        report = run_bench(cfg)
    except BenchCorrectnessError as e:
        return {"error": f"❌ Correctness failure: {e}\n\n💡 Hint: run run_selftest to reproduce on small inputs."}
    except (BenchConfigError, CorpusError) as e:
        return {"error": f"❌ {e}"}
    meta = {
        "elapsed_ms": round((time.perf_counter() - start_time) * 1000, 2),
        "checksums": report.checksums(),
        "work": report.work(),
        "warnings": report.warnings,
    }
    return {"report": render_report(report, fmt), "meta": meta}


def _selftest_internal(trials: int, seed: int) -> dict:
    if trials < 1:
        return {"error": "❌ trials must be >= 1"}
    result = run_selftest(trials, seed)
    response = {"passed": result.passed, "trials": result.trials, "failures": result.failures}
    if not result.passed:
        response["minimal_failure"] = result.first_failure.describe()
        response["detail"] = result.detail
    return response


def register_bench_tools(mcp):
    """Register benchmark and selftest tools."""

    @mcp.tool()
    async def run_benchmark(
        corpus_path: str | None = Field(default=None, description="Server-side corpus file (raw bytes)"),
        gen_sigma: int | None = Field(default=None, description="Generate a corpus over this many symbols (1-256)"),
        gen_n: int | None = Field(default=None, description="Generated corpus length in bytes"),
        lengths: list[int] = Field(default=[8, 16, 32, 64], description="Pattern lengths m"),
        runs: int = Field(default=10, description=f"Patterns per length (max {config.BENCH_MAX_RUNS})"),
        algorithms: list[Literal["hc", "shc", "naive", "horspool"]] = Field(default=["hc", "shc", "horspool"]),
        q_values: list[int] = Field(default=[4, 6], description="q grid for hc/shc"),
        alpha_values: list[int] = Field(default=[10, 12], description="alpha grid for hc/shc (8-16)"),
        seed: int = Field(default=config.BENCH_DEFAULT_SEED, description="Seed for corpus and pattern sampling"),
        format: Literal["markdown", "tsv"] = Field(default="markdown", description="Report format"),
    ) -> dict:
        """Time compile + search on random patterns sampled from a corpus.

Every run's occurrence count must agree across algorithms; the fastest
(q, alpha) per algorithm and length is reported in parentheses.
        """
        logger.info(f"run_benchmark: corpus={corpus_path or f'gen {gen_sigma},{gen_n}'}, lengths={lengths}, runs={runs}")
        return await asyncio.to_thread(_bench_internal, corpus_path, gen_sigma, gen_n, lengths, runs,
                                       algorithms, q_values, alpha_values, seed, format)

    @mcp.tool()
    async def run_selftest_trials(
        trials: int = Field(default=200, description="Number of random trials"),
        seed: int = Field(default=1, description="Seed for the trial sequence"),
    ) -> dict:
        """Check HC and SHC against the brute-force matcher on random inputs."""
        return await asyncio.to_thread(_selftest_internal, trials, seed)
