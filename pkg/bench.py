"""
Benchmark harness for HC/SHC against the baselines.
- Corpus generation (seeded, uniform over sigma symbols) and loading
- Random pattern extraction
- Timed runs of compile + search per pattern, with work counters
- Cross-algorithm occurrence checks and best-variant selection
- TSV / markdown rendering
"""

import itertools
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

import config
import core
from baselines import horspool_search, naive_search
from core import SearchBuffer, SearchMetrics

logger = logging.getLogger("hashchain.bench")

ALGORITHMS = ("hc", "shc", "naive", "horspool")
PARAMETRIZED = ("hc", "shc")
FORMATS = {"tsv": "tsv", "markdown": "markdown", "md": "markdown"}

# (BenchCell field, label, value format) for the work-counter rows
WORK_COUNTERS = (
    ("hashes_per_byte", "hashes/byte", "{:.4f}"),
    ("verifications_per_window", "verifications/window", "{:.4f}"),
    ("mean_shift", "mean shift", "{:.2f}"),
)
NEAR_BEST = 1.05


class BenchConfigError(ValueError):
    pass


class CorpusError(OSError):
    pass


class BenchCorrectnessError(RuntimeError):
    """Two algorithms disagreed on the occurrence count for the same run."""

    def __init__(self, pattern: bytes, corpus: str, algorithm: str, q: int | None, alpha: int | None,
                 expected: int, got: int, reference: str):
        self.pattern, self.corpus, self.algorithm = pattern, corpus, algorithm
        self.q, self.alpha, self.expected, self.got = q, alpha, expected, got
        super().__init__(
            f"{algorithm}(q={q}, alpha={alpha}) found {got} occurrences of {pattern!r} in corpus "
            f"'{corpus}', {reference} found {expected}"
        )


# =============================================================================
# Corpora
# =============================================================================
@dataclass(frozen=True)
class Corpus:
    name: str
    data: bytes
    sigma_observed: int = field(init=False)

    def __post_init__(self):
        if not self.data:
            raise CorpusError(f"corpus '{self.name}' is empty")
        object.__setattr__(self, "sigma_observed", len(set(self.data)))

    def __len__(self) -> int:
        return len(self.data)


def generate_corpus(sigma: int, n: int, seed: int) -> Corpus:
    """Uniform i.i.d. bytes over {0..sigma-1} from a seeded generator."""
    if not 1 <= sigma <= 256:
        raise BenchConfigError(f"sigma must be in [1, 256], got {sigma}")
    if n < 1:
        raise BenchConfigError(f"corpus length must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    data = rng.integers(0, sigma, size=n, dtype=np.uint8).tobytes()
    return Corpus(f"gen-s{sigma}-n{n}", data)


def load_corpus(path: str | Path) -> Corpus:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise CorpusError(f"cannot read corpus {path}: {e.strerror or e}") from e
    if not data:
        raise CorpusError(f"corpus {path} is empty")
    return Corpus(path.name, data)


def sample_offsets(corpus: Corpus, m: int, count: int, seed: int) -> list[int]:
    if m > len(corpus):
        raise BenchConfigError(f"pattern length {m} exceeds corpus length {len(corpus)}")
    if count < 1:
        raise BenchConfigError(f"pattern count must be >= 1, got {count}")
    rng = np.random.default_rng(seed)
    return [int(offset) for offset in rng.integers(0, len(corpus) - m + 1, size=count)]


def sample_patterns(corpus: Corpus, m: int, count: int, seed: int) -> list[bytes]:
    """count substrings of length m at uniformly random offsets."""
    return [corpus.data[offset:offset + m] for offset in sample_offsets(corpus, m, count, seed)]


# =============================================================================
# Configuration
# =============================================================================
@dataclass(frozen=True)
class BenchConfig:
    corpus_path: Path | None = None
    generate: tuple[int, int] | None = None          # (sigma, n)
    lengths: tuple[int, ...] = config.BENCH_DEFAULT_LENGTHS
    runs: int = config.BENCH_DEFAULT_RUNS
    algorithms: tuple[str, ...] = ALGORITHMS
    q_values: tuple[int, ...] = (config.HC_DEFAULT_Q,)
    alpha_values: tuple[int, ...] = (config.HC_DEFAULT_ALPHA,)
    seed: int = config.BENCH_DEFAULT_SEED

    def validate(self):
        if (self.corpus_path is None) == (self.generate is None):
            raise BenchConfigError("exactly one corpus source is required (a path or sigma,n to generate)")
        if not 1 <= self.runs <= config.BENCH_MAX_RUNS:
            raise BenchConfigError(f"runs must be in [1, {config.BENCH_MAX_RUNS}], got {self.runs}")
        if not self.lengths or min(self.lengths) < 1:
            raise BenchConfigError(f"pattern lengths must be a nonempty set of values >= 1, got {self.lengths}")
        if not self.algorithms:
            raise BenchConfigError("at least one algorithm is required")
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise BenchConfigError(f"unknown algorithms {unknown}, expected a subset of {list(ALGORITHMS)}")
        if not self.q_values or min(self.q_values) < 1:
            raise BenchConfigError(f"q values must be >= 1, got {self.q_values}")
        low, high = config.BENCH_ALPHA_RANGE
        if not self.alpha_values or not all(low <= a <= high for a in self.alpha_values):
            raise BenchConfigError(f"alpha values must be in [{low}, {high}], got {self.alpha_values}")
        if self.seed < 0:
            raise BenchConfigError(f"seed must be unsigned, got {self.seed}")

    def load_corpus(self) -> Corpus:
        if self.corpus_path is not None:
            return load_corpus(self.corpus_path)
        sigma, n = self.generate
        return generate_corpus(sigma, n, self.seed)


# =============================================================================
# Runners (compile + search for one pattern; swapped out by fault-injection tests)
# =============================================================================
Runner = Callable[[bytes, Corpus, SearchBuffer, int | None, int | None], tuple[int, SearchMetrics | None]]


def _run_hc(pattern, corpus, buffer, q, alpha):
    found, metrics = core.search_hc(core.compile(pattern, q, alpha), corpus.data)
    return len(found), metrics


def _run_shc(pattern, corpus, buffer, q, alpha):
    found, metrics = core.search_shc(core.compile(pattern, q, alpha), buffer)
    return len(found), metrics


def _run_naive(pattern, corpus, buffer, q, alpha):
    return len(naive_search(pattern, corpus.data)), None


def _run_horspool(pattern, corpus, buffer, q, alpha):
    return len(horspool_search(pattern, corpus.data)), None


RUNNERS: dict[str, Runner] = {
    "hc": _run_hc,
    "shc": _run_shc,
    "naive": _run_naive,
    "horspool": _run_horspool,
}


# =============================================================================
# Report
# =============================================================================
@dataclass(frozen=True)
class BenchCell:
    algorithm: str
    m: int
    q: int | None
    alpha: int | None
    mean_ms: float
    checksum: int                          # total occurrences over all runs
    hashes_per_byte: float | None = None
    verifications_per_window: float | None = None
    mean_shift: float | None = None

    @property
    def params(self) -> str:
        return "" if self.q is None else f"({self.q},{self.alpha})"


@dataclass
class BenchReport:
    corpus: str
    n: int
    sigma: int
    lengths: tuple[int, ...]
    algorithms: tuple[str, ...]
    cells: list[BenchCell] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def best(self, algorithm: str, m: int) -> BenchCell | None:
        """Fastest grid cell; ties go to the smaller q, then the smaller alpha."""
        candidates = [c for c in self.cells if c.algorithm == algorithm and c.m == m]
        if not candidates:
            return None
        return min(candidates, key=lambda c: (c.mean_ms, c.q or 0, c.alpha or 0))

    def checksums(self) -> dict[int, int]:
        return {c.m: c.checksum for c in self.cells}

    def fastest(self, m: int) -> float | None:
        """Best mean time over all algorithms for pattern length m."""
        times = [cell.mean_ms for cell in (self.best(a, m) for a in self.algorithms) if cell is not None]
        return min(times, default=None)

    def work(self) -> dict[str, dict[int, dict[str, float]]]:
        """Work counters of the best variant per (algorithm, m), for hc/shc only."""
        summary = {}
        for algorithm in self.algorithms:
            if algorithm not in PARAMETRIZED:
                continue
            summary[algorithm] = {
                m: {name: getattr(cell, name) for name, _, _ in WORK_COUNTERS}
                for m in self.lengths if (cell := self.best(algorithm, m)) is not None
            }
        return summary


def _grid(algorithm: str, m: int, cfg: BenchConfig) -> list[tuple[int | None, int | None]]:
    if algorithm not in PARAMETRIZED:
        return [(None, None)]
    return [(q, alpha) for q, alpha in itertools.product(sorted(set(cfg.q_values)), sorted(set(cfg.alpha_values)))
            if q <= m]


def _resolution_warning(label: str, mean_ns: float) -> str | None:
    resolution_ns = time.get_clock_info("perf_counter").resolution * 1e9
    if mean_ns < resolution_ns * 100:
        return f"{label}: mean interval {mean_ns:.0f}ns has fewer than 3 significant digits at timer resolution {resolution_ns:.0f}ns"
    return None


def run_bench(cfg: BenchConfig, corpus: Corpus | None = None) -> BenchReport:
    """Time compile + search for every (algorithm, m, params) cell.

    Every run's occurrence count is checked against the first algorithm's
    count for the same pattern; a mismatch raises BenchCorrectnessError.
    """
    cfg.validate()
    if corpus is None:
        corpus = cfg.load_corpus()
    too_long = [m for m in cfg.lengths if m > len(corpus)]
    if too_long:
        raise BenchConfigError(f"pattern lengths {too_long} exceed corpus length {len(corpus)}")

    lengths = tuple(sorted(set(cfg.lengths)))
    report = BenchReport(corpus.name, len(corpus), corpus.sigma_observed, lengths, tuple(cfg.algorithms))
    buffer = SearchBuffer.from_bytes(corpus.data, max(lengths))
    logger.info(f"Benchmark on '{corpus.name}' (n={len(corpus)}, sigma={corpus.sigma_observed}): "
                f"lengths={list(lengths)}, runs={cfg.runs}, algorithms={list(cfg.algorithms)}")

    for m in lengths:
        patterns = sample_patterns(corpus, m, cfg.runs, cfg.seed + m)
        reference: list[int] | None = None
        reference_label = ""
        for algorithm in cfg.algorithms:
            runner = RUNNERS[algorithm]
            for q, alpha in _grid(algorithm, m, cfg):
                counts, times_ns, metrics = [], [], []
                for pattern in patterns:
                    start = time.perf_counter_ns()
                    count, run_metrics = runner(pattern, corpus, buffer, q, alpha)
                    times_ns.append(time.perf_counter_ns() - start)
                    counts.append(count)
                    if run_metrics is not None:
                        metrics.append(run_metrics)

                label = f"{algorithm}(q={q}, alpha={alpha})" if q is not None else algorithm
                if reference is None:
                    reference, reference_label = counts, label
                else:
                    for pattern, expected, got in zip(patterns, reference, counts):
                        if expected != got:
                            logger.error(f"Correctness failure at m={m}: {label} found {got}, {reference_label} found {expected}")
                            raise BenchCorrectnessError(pattern, corpus.name, algorithm, q, alpha, expected, got,
                                                        reference_label)

                mean_ns = float(np.mean(times_ns))
                warning = _resolution_warning(f"m={m} {label}", mean_ns)
                if warning:
                    report.warnings.append(warning)
                report.cells.append(_make_cell(algorithm, m, q, alpha, mean_ns, counts, metrics, len(corpus)))
                logger.info(f"m={m} {label}: {mean_ns / 1e6:.2f}ms, occurrences={sum(counts)}")
    return report


def _make_cell(algorithm, m, q, alpha, mean_ns, counts, metrics: list[SearchMetrics], n) -> BenchCell:
    if not metrics:
        return BenchCell(algorithm, m, q, alpha, mean_ns / 1e6, sum(counts))
    windows = sum(mt.windows for mt in metrics)
    return BenchCell(
        algorithm, m, q, alpha, mean_ns / 1e6, sum(counts),
        hashes_per_byte=float(np.mean([mt.qgram_hashes for mt in metrics])) / n,
        verifications_per_window=sum(mt.verifications for mt in metrics) / windows if windows else 0.0,
        mean_shift=sum(mt.shift_total for mt in metrics) / windows if windows else 0.0,
    )


# =============================================================================
# Rendering
# =============================================================================
def _cell_text(cell: BenchCell | None, fastest: float | None = None) -> str:
    """Time with the best (q,alpha); with fastest given, bold the best and underline the near-best."""
    if cell is None:
        return "-"
    text = f"{cell.mean_ms:.2f}"
    if cell.params:
        text = f"{text} {cell.params}"
    if fastest is None:
        return text
    if cell.mean_ms <= fastest:
        return f"**{text}**"
    if cell.mean_ms <= fastest * NEAR_BEST:
        return f"<u>{text}</u>"
    return text


def _work_rows(report: BenchReport) -> list[list[str]]:
    work = report.work()
    rows = []
    for algorithm, per_m in work.items():
        for name, label, spec in WORK_COUNTERS:
            values = [per_m[m][name] if m in per_m else None for m in report.lengths]
            rows.append([f"{algorithm} {label}"] + ["-" if v is None else spec.format(v) for v in values])
    return rows


def render_report(report: BenchReport, fmt: str = "markdown", metrics: bool = False) -> str:
    """Serialize a report: algorithms as rows, pattern lengths as columns.

    Markdown always carries a second table of work counters for hc/shc;
    TSV appends them as extra rows only when metrics is set.
    """
    if fmt not in FORMATS:
        raise BenchConfigError(f"unknown report format {fmt!r}, expected one of {sorted(FORMATS)}")
    if not report.cells:
        raise BenchConfigError("cannot render an empty report")

    if FORMATS[fmt] == "tsv":
        rows = [[algorithm] + [_cell_text(report.best(algorithm, m)) for m in report.lengths]
                for algorithm in report.algorithms]
        if metrics:
            rows += _work_rows(report)
        lines = ["\t".join(["corpus", "algorithm"] + [str(m) for m in report.lengths])]
        lines += ["\t".join([report.corpus] + row) for row in rows]
        return "\n".join(lines) + "\n"

    fastest = {m: report.fastest(m) for m in report.lengths}
    rows = [[algorithm] + [_cell_text(report.best(algorithm, m), fastest[m]) for m in report.lengths]
            for algorithm in report.algorithms]
    columns = " | ".join(str(m) for m in report.lengths)
    separator = "|---|" + "---:|" * len(report.lengths)
    lines = [
        f"### {report.corpus} (n={report.n}, sigma={report.sigma})",
        "",
        f"| algorithm | {columns} |",
        separator,
    ]
    lines += ["| " + " | ".join(row) + " |" for row in rows]
    work_rows = _work_rows(report)
    if work_rows:
        lines += ["", "work counters of the best variant:", "", f"| counter | {columns} |", separator]
        lines += ["| " + " | ".join(row) + " |" for row in work_rows]

    checksums = report.checksums()
    lines.append("")
    lines.append("occurrences: " + ", ".join(f"m={m}: {checksums.get(m, 0)}" for m in report.lengths))
    for warning in report.warnings:
        lines.append(f"warning: {warning}")
    return "\n".join(lines) + "\n"
