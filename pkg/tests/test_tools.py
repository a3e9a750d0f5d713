import core
from core import SearchMetrics
from tools.bench import _bench_internal, _selftest_internal
from tools.search import _search_internal, enhance_error, truncate_positions


def test_search_text_positions():
    result = _search_internal("aa", text="aaaa")
    assert result["positions"] == [0, 1, 2]
    assert result["meta"]["truncated"] is False
    assert result["meta"]["windows"] >= 1


def test_search_count_only_baseline():
    result = _search_internal("na", text="banana", algo="horspool", count_only=True)
    assert result["count"] == 2


def test_search_file(tmp_path):
    path = tmp_path / "t.txt"
    path.write_bytes(b"xyz" * 10)
    result = _search_internal("zx", text_path=str(path), algo="shc", q=2, alpha=8)
    assert result["positions"] == list(range(2, 27, 3))


def test_search_clamps_q():
    result = _search_internal("ab", text="abab", q=6)
    assert result["positions"] == [0, 2]
    assert "using q=2" in result["meta"]["warning"]


def test_search_errors():
    assert "error" in _search_internal("aa")
    assert "error" in _search_internal("aa", text="aaaa", text_path="x")
    assert "error" in _search_internal("aa", text_path="/nonexistent/file")
    empty = _search_internal("", text="aaaa")
    assert "💡 Hint" in empty["error"]
    assert "alpha" in _search_internal("aa", text="aaaa", alpha=40)["error"]


def test_enhance_error_passthrough():
    assert enhance_error("something odd") == "❌ something odd"


def test_truncate_positions():
    positions = list(range(5000))
    shown, meta = truncate_positions(positions, max_items=100, preview=10)
    assert shown == list(range(10)) + list(range(4990, 5000))
    assert meta["omitted"] == 4980
    shown, meta = truncate_positions(positions[:50], max_items=100, preview=10)
    assert shown == positions[:50] and meta["truncated"] is False


def test_bench_tool():
    result = _bench_internal(None, 4, 5000, [8], 2, ["hc", "naive"], [4], [10], 1, "tsv")
    assert result["report"].startswith("corpus\talgorithm\t8\n")
    assert set(result["meta"]["checksums"]) == {8}
    assert set(result["meta"]["work"]) == {"hc"}
    assert result["meta"]["work"]["hc"][8]["mean_shift"] > 0
    assert "error" in _bench_internal(None, None, None, [8], 2, ["hc"], [4], [10], 1, "tsv")
    assert "error" in _bench_internal(None, 4, 5000, [8], 2, ["hc"], [4], [30], 1, "tsv")


def test_selftest_tool(monkeypatch):
    assert _selftest_internal(30, 1) == {"passed": True, "trials": 30, "failures": 0}
    assert "error" in _selftest_internal(0, 1)
    monkeypatch.setattr(core, "search_hc", lambda cp, text: ([], SearchMetrics()))
    broken = _selftest_internal(40, 2)
    assert broken["passed"] is False
    assert broken["minimal_failure"] and broken["detail"]
