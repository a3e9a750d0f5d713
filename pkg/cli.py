"""
Command-line front end: search, bench and selftest.

Exit codes:
    0  occurrence found / bench or selftest succeeded
    1  no occurrence found
    2  usage or I/O error
    3  bench cross-algorithm correctness failure
    4  selftest failure
"""

import logging
import os
import sys
from pathlib import Path

import click

import config
import core
from baselines import SEARCHERS, BaselineAlgo
from bench import ALGORITHMS, BenchConfig, BenchConfigError, BenchCorrectnessError, CorpusError, render_report, run_bench
from logging_conf import setup_logging
from selftest import run_selftest

logger = logging.getLogger("hashchain.cli")

EXIT_FOUND = 0
EXIT_NOT_FOUND = 1
EXIT_USAGE = 2
EXIT_BENCH_MISMATCH = 3
EXIT_SELFTEST_FAILED = 4


def printe(message: str):
    click.echo(message, err=True)


class IntList(click.ParamType):
    """Comma-separated integers, e.g. 8,16,32."""
    name = "int-list"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            values = tuple(int(part) for part in value.split(",") if part.strip())
        except ValueError:
            self.fail(f"{value!r} is not a comma-separated list of integers", param, ctx)
        if not values:
            self.fail("expected at least one value", param, ctx)
        return values


class NameList(click.ParamType):
    name = "name-list"

    def __init__(self, choices: tuple[str, ...]):
        self.choices = choices

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        names = tuple(part.strip() for part in value.split(",") if part.strip())
        unknown = [n for n in names if n not in self.choices]
        if unknown or not names:
            self.fail(f"{value!r}: expected a comma-separated subset of {', '.join(self.choices)}", param, ctx)
        return names


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Debug logging on stderr")
def main(verbose):
    """Hash Chain exact string matcher."""
    setup_logging()
    if verbose:
        logging.getLogger("hashchain").setLevel(logging.DEBUG)


@main.command("search")
@click.argument("pattern")
@click.argument("text_file")
@click.option("-F", "--pattern-file", is_flag=True, help="Treat PATTERN as a file whose bytes are the pattern")
@click.option("--algo", type=click.Choice(ALGORITHMS), default="hc", show_default=True)
@click.option("-q", "q", type=int, default=config.HC_DEFAULT_Q, show_default=True, help="q-gram length")
@click.option("--alpha", type=int, default=config.HC_DEFAULT_ALPHA, show_default=True, help="Filter has 2^alpha words")
@click.option("--output", "mode", type=click.Choice(["positions", "count"]), default="positions", show_default=True)
@click.pass_context
def cmd_search(ctx, pattern, text_file, pattern_file, algo, q, alpha, mode):
    """Print zero-based offsets (or the count) of PATTERN in TEXT_FILE."""
    try:
        needle = Path(pattern).read_bytes() if pattern_file else os.fsencode(pattern)
        text = Path(text_file).read_bytes()
    except OSError as e:
        printe(f"error: cannot read {e.filename}: {e.strerror}")
        ctx.exit(EXIT_USAGE)
    if not needle:
        printe("error: pattern must not be empty")
        ctx.exit(EXIT_USAGE)

    logger.debug(f"search algo={algo} m={len(needle)} n={len(text)} q={q} alpha={alpha}")
    try:
        if algo not in ("hc", "shc"):
            found = SEARCHERS[BaselineAlgo(algo)](needle, text)
        else:
            if q > len(needle):
                printe(f"warning: q={q} exceeds pattern length {len(needle)}, using q={len(needle)}")
                q = len(needle)
            found, _ = core.search(core.compile(needle, q, alpha), text, algo)
    except core.HashChainError as e:
        printe(f"error: {e}")
        ctx.exit(EXIT_USAGE)

    if mode == "count":
        click.echo(len(found))
    else:
        for occ in found:
            click.echo(occ.start)
    ctx.exit(EXIT_FOUND if found else EXIT_NOT_FOUND)


@main.command("bench")
@click.option("--corpus", "corpus_path", type=click.Path(dir_okay=False, path_type=Path), help="Raw byte corpus file")
@click.option("--gen", "generate", type=IntList(), help="Generate a corpus: SIGMA,N")
@click.option("--lengths", type=IntList(), default=",".join(map(str, config.BENCH_DEFAULT_LENGTHS)), show_default=True)
@click.option("--runs", type=int, default=config.BENCH_DEFAULT_RUNS, show_default=True)
@click.option("--algos", type=NameList(ALGORITHMS), default=",".join(ALGORITHMS), show_default=True)
@click.option("--q", "q_values", type=IntList(), default=str(config.HC_DEFAULT_Q), show_default=True)
@click.option("--alpha", "alpha_values", type=IntList(), default=str(config.HC_DEFAULT_ALPHA), show_default=True)
@click.option("--seed", type=int, default=config.BENCH_DEFAULT_SEED, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["tsv", "md", "markdown"]), default="md", show_default=True)
@click.option("--metrics", is_flag=True, help="Add hc/shc work-counter rows to TSV output")
@click.pass_context
def cmd_bench(ctx, corpus_path, generate, lengths, runs, algos, q_values, alpha_values, seed, fmt, metrics):
    """Time HC/SHC and the baselines on random patterns drawn from a corpus."""
    if (corpus_path is None) == (generate is None):
        raise click.UsageError("give exactly one of --corpus or --gen")
    if generate is not None and len(generate) != 2:
        raise click.UsageError("--gen takes SIGMA,N")

    cfg = BenchConfig(corpus_path=corpus_path, generate=generate, lengths=lengths, runs=runs, algorithms=algos,
                      q_values=q_values, alpha_values=alpha_values, seed=seed)
    try:
        report = run_bench(cfg)
    except BenchCorrectnessError as e:
        printe(f"correctness failure: {e}")
        ctx.exit(EXIT_BENCH_MISMATCH)
    except (BenchConfigError, CorpusError) as e:
        printe(f"error: {e}")
        ctx.exit(EXIT_USAGE)

    click.echo(render_report(report, fmt, metrics), nl=False)
    if fmt == "tsv":
        # markdown reports carry their warnings inline
        for warning in report.warnings:
            printe(f"warning: {warning}")


@main.command("selftest")
@click.option("--trials", type=click.IntRange(min=1), default=1000, show_default=True)
@click.option("--seed", type=int, default=1, show_default=True)
@click.option("--max-text", type=click.IntRange(min=0), default=config.SELFTEST_MAX_TEXT, show_default=True)
@click.pass_context
def cmd_selftest(ctx, trials, seed, max_text):
    """Check HC and SHC against the brute-force matcher on random trials."""
    result = run_selftest(trials, seed, max_text)
    click.echo(f"selftest: {trials - result.failures}/{trials} trials passed (seed={seed})")
    if not result.passed:
        printe(f"minimal failing trial: {result.first_failure.describe()}")
        printe(f"  {result.detail}")
        ctx.exit(EXIT_SELFTEST_FAILED)


if __name__ == "__main__":
    sys.exit(main())  # pragma: no cover
