import csv
import io

import pytest

import bench
import core
from baselines import naive_search
from bench import (
    BenchCell,
    BenchConfig,
    BenchConfigError,
    BenchCorrectnessError,
    BenchReport,
    Corpus,
    CorpusError,
    generate_corpus,
    load_corpus,
    render_report,
    run_bench,
    sample_offsets,
    sample_patterns,
)


def small_config(**overrides) -> BenchConfig:
    values = dict(generate=(4, 20_000), lengths=(8, 16), runs=4, algorithms=("hc", "shc", "naive", "horspool"),
                  q_values=(2, 4), alpha_values=(8, 10), seed=3)
    values.update(overrides)
    return BenchConfig(**values)


# =============================================================================
# Corpora
# =============================================================================
def test_generate_single_symbol():
    corpus = generate_corpus(1, 100, 7)
    assert corpus.data == bytes(100)
    assert corpus.sigma_observed == 1


def test_generate_is_deterministic():
    assert generate_corpus(4, 10**6, 42).data == generate_corpus(4, 10**6, 42).data
    assert generate_corpus(4, 1000, 42).data != generate_corpus(4, 1000, 43).data


def test_generate_frequencies_uniform():
    n = 10**6
    data = generate_corpus(4, n, 42).data
    for symbol in range(4):
        assert abs(data.count(bytes([symbol])) - n / 4) <= 0.01 * n / 4


@pytest.mark.parametrize("sigma,n", [(0, 10), (257, 10), (4, 0)])
def test_generate_rejects_bad_ranges(sigma, n):
    with pytest.raises(BenchConfigError):
        generate_corpus(sigma, n, 1)


def test_load_corpus(tmp_path):
    path = tmp_path / "a.txt"
    path.write_bytes(b"a" * 100)
    corpus = load_corpus(path)
    assert corpus.sigma_observed == 1
    assert len(corpus) == path.stat().st_size
    assert corpus.name == "a.txt"


def test_load_corpus_empty(tmp_path):
    path = tmp_path / "empty"
    path.write_bytes(b"")
    with pytest.raises(CorpusError, match="empty"):
        load_corpus(path)


def test_load_corpus_missing(tmp_path):
    path = tmp_path / "nope.bin"
    with pytest.raises(CorpusError, match="nope.bin"):
        load_corpus(path)


def test_corpus_counts_distinct_bytes():
    assert Corpus("x", b"abracadabra").sigma_observed == 5


def test_sample_whole_corpus():
    corpus = Corpus("x", b"hello world")
    assert sample_patterns(corpus, len(corpus), 3, 1) == [b"hello world"] * 3


def test_sample_is_deterministic_and_located():
    corpus = generate_corpus(20, 5000, 9)
    offsets = sample_offsets(corpus, 32, 25, 11)
    patterns = sample_patterns(corpus, 32, 25, 11)
    assert patterns == sample_patterns(corpus, 32, 25, 11)
    for offset, pattern in zip(offsets, patterns):
        assert len(pattern) == 32
        assert offset in [occ.start for occ in naive_search(pattern, corpus.data)]


def test_sample_rejects_long_patterns():
    with pytest.raises(BenchConfigError):
        sample_patterns(Corpus("x", b"abc"), 4, 1, 1)
    with pytest.raises(BenchConfigError):
        sample_patterns(Corpus("x", b"abc"), 2, 0, 1)


# =============================================================================
# Configuration
# =============================================================================
@pytest.mark.parametrize("overrides", [
    dict(generate=None),
    dict(corpus_path="x.bin"),
    dict(runs=0),
    dict(runs=501),
    dict(algorithms=()),
    dict(algorithms=("hc", "bndm")),
    dict(q_values=(0,)),
    dict(alpha_values=(7,)),
    dict(alpha_values=(17,)),
    dict(lengths=()),
])
def test_config_validation(overrides):
    with pytest.raises(BenchConfigError):
        small_config(**overrides).validate()


def test_lengths_longer_than_corpus():
    with pytest.raises(BenchConfigError):
        run_bench(small_config(generate=(4, 10), lengths=(16,)))


# =============================================================================
# Runs
# =============================================================================
def test_run_bench_agrees_and_picks_best():
    report = run_bench(small_config())
    assert report.lengths == (8, 16)
    for m in report.lengths:
        cells = [c for c in report.cells if c.m == m]
        assert len({c.checksum for c in cells}) == 1
        assert cells[0].checksum >= 4   # every sampled pattern occurs at least once
        for algorithm in ("hc", "shc"):
            grid = [c for c in cells if c.algorithm == algorithm]
            assert len(grid) == 4
            best = report.best(algorithm, m)
            assert best.mean_ms == min(c.mean_ms for c in grid)
            assert best.hashes_per_byte is not None
        assert report.best("naive", m).q is None


def test_run_bench_is_deterministic():
    first, second = run_bench(small_config()), run_bench(small_config())
    assert first.checksums() == second.checksums()


def test_best_breaks_ties_by_q_then_alpha():
    report = BenchReport("x", 10, 2, (8,), ("hc",))
    report.cells = [BenchCell("hc", 8, 6, 10, 1.0, 0), BenchCell("hc", 8, 4, 12, 1.0, 0),
                    BenchCell("hc", 8, 4, 10, 1.0, 0), BenchCell("hc", 8, 2, 8, 2.0, 0)]
    assert (report.best("hc", 8).q, report.best("hc", 8).alpha) == (4, 10)


def test_corrupted_runner_is_caught(monkeypatch):
    monkeypatch.setitem(bench.RUNNERS, "hc", lambda pattern, corpus, buffer, q, alpha: (0, None))
    with pytest.raises(BenchCorrectnessError) as excinfo:
        run_bench(small_config(algorithms=("naive", "hc")))
    assert excinfo.value.algorithm == "hc"
    assert excinfo.value.corpus == "gen-s4-n20000"
    assert len(excinfo.value.pattern) in (8, 16)


def test_sublinear_work_on_dna_like_corpus():
    corpus = generate_corpus(4, 200_000, 42)
    per_byte = []
    for m in (32, 64, 128, 256):
        hashes, shift = [], []
        for pattern in sample_patterns(corpus, m, 10, m):
            _, metrics = core.search_hc(core.compile(pattern, 6, 12), corpus.data)
            assert metrics.qgram_hashes < len(corpus)
            hashes.append(metrics.qgram_hashes)
            shift.append(metrics.mean_shift)
        assert sum(shift) / len(shift) > 6
        per_byte.append(sum(hashes) / len(hashes) / len(corpus))
    for shorter, longer in zip(per_byte, per_byte[1:]):
        assert longer <= shorter * 1.1


# =============================================================================
# Rendering
# =============================================================================
def test_render_tsv_shape():
    report = run_bench(small_config(algorithms=("hc", "naive"), lengths=(8, 16, 32)))
    text = render_report(report, "tsv")
    assert text == render_report(report, "tsv")
    rows = list(csv.reader(io.StringIO(text), delimiter="\t"))
    assert rows[0] == ["corpus", "algorithm", "8", "16", "32"]
    assert [row[1] for row in rows[1:]] == ["hc", "naive"]
    assert all(len(row) == 5 for row in rows)
    assert rows[1][2].endswith(")") and "(" in rows[1][2]
    float(rows[2][2])


def test_render_markdown_table():
    report = run_bench(small_config())
    text = render_report(report, "markdown")
    assert text == render_report(report, "md")
    lines = text.splitlines()
    assert lines[0].startswith("### gen-s4-n20000")
    assert lines[2] == "| algorithm | 8 | 16 |"
    assert [line.split("|")[1].strip() for line in lines[4:8]] == ["hc", "shc", "naive", "horspool"]
    assert "occurrences: m=8:" in text


def test_render_rejects_unknown_format_and_empty_report():
    report = run_bench(small_config(algorithms=("naive",), lengths=(8,)))
    with pytest.raises(BenchConfigError):
        render_report(report, "html")
    with pytest.raises(BenchConfigError):
        render_report(BenchReport("x", 1, 1, (8,), ("hc",)), "tsv")


def hand_report() -> BenchReport:
    report = BenchReport("hand", 1000, 4, (8, 16), ("hc", "naive", "horspool"))
    report.cells = [
        BenchCell("hc", 8, 4, 10, 1.00, 3, hashes_per_byte=0.25, verifications_per_window=0.0125, mean_shift=5.5),
        BenchCell("hc", 8, 2, 8, 1.20, 3, hashes_per_byte=0.5, verifications_per_window=0.1, mean_shift=3.0),
        BenchCell("naive", 8, None, None, 1.04, 3),
        BenchCell("horspool", 8, None, None, 2.00, 3),
        BenchCell("hc", 16, 4, 10, 3.00, 1, hashes_per_byte=0.125, verifications_per_window=0.0, mean_shift=12.25),
        BenchCell("naive", 16, None, None, 1.50, 1),
        BenchCell("horspool", 16, None, None, 1.55, 1),
    ]
    return report


def test_render_markdown_marks_best_and_near_best():
    lines = render_report(hand_report(), "markdown").splitlines()
    assert lines[4] == "| hc | **1.00 (4,10)** | 3.00 (4,10) |"
    assert lines[5] == "| naive | <u>1.04</u> | **1.50** |"
    assert lines[6] == "| horspool | 2.00 | <u>1.55</u> |"


def test_render_markdown_work_counters():
    text = render_report(hand_report(), "markdown")
    assert "| hc hashes/byte | 0.2500 | 0.1250 |" in text
    assert "| hc verifications/window | 0.0125 | 0.0000 |" in text
    assert "| hc mean shift | 5.50 | 12.25 |" in text
    assert "naive hashes/byte" not in text


def test_render_tsv_work_rows_on_request():
    report = hand_report()
    plain = list(csv.reader(io.StringIO(render_report(report, "tsv")), delimiter="\t"))
    assert [row[1] for row in plain[1:]] == ["hc", "naive", "horspool"]
    rows = list(csv.reader(io.StringIO(render_report(report, "tsv", metrics=True)), delimiter="\t"))
    assert rows[:4] == plain
    assert rows[4:] == [
        ["hand", "hc hashes/byte", "0.2500", "0.1250"],
        ["hand", "hc verifications/window", "0.0125", "0.0000"],
        ["hand", "hc mean shift", "5.50", "12.25"],
    ]


def test_work_counters_on_dna_like_corpus():
    cfg = BenchConfig(generate=(4, 100_000), lengths=(64,), runs=5, algorithms=("hc", "shc"),
                      q_values=(4,), alpha_values=(12,), seed=8)
    report = run_bench(cfg)
    work = report.work()
    hc, shc = work["hc"][64], work["shc"][64]
    assert hc["hashes_per_byte"] < 1
    assert hc["mean_shift"] > 4
    assert 0 <= hc["verifications_per_window"] < 0.5
    assert shc["mean_shift"] == pytest.approx(hc["mean_shift"])
    assert shc["verifications_per_window"] == pytest.approx(hc["verifications_per_window"])
    # shc also hashes the q-gram its skip loop stops on inside the sentinel
    assert shc["hashes_per_byte"] >= hc["hashes_per_byte"]
