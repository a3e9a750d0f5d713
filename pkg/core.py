"""
Hash Chain (HC) and Sentinel Hash Chain (SHC) exact string matching.
- q-gram hash h and link hash λ
- Chain-ordered preprocessing into a filter table of 2^alpha words
- HC and SHC search phases, instrumented with work counters

All characters are raw byte values 0-255. Positions are zero-based.
"""

import logging
from dataclasses import dataclass
from typing import Literal, NamedTuple

import config

logger = logging.getLogger("hashchain.core")

Algorithm = Literal["hc", "shc"]


# =============================================================================
# Errors
# =============================================================================
class HashChainError(ValueError):
    """Base class for invalid inputs to the matcher."""


class InvalidParametersError(HashChainError):
    pass


class EmptyPatternError(HashChainError):
    pass


class PatternTooShortError(HashChainError):
    """Pattern shorter than the q-gram length."""


class BufferTooSmallError(HashChainError):
    """SearchBuffer lacks the slack needed for the sentinel copy."""


# =============================================================================
# Parameters
# =============================================================================
def derive_shift(alpha: int, q: int) -> int:
    """Per-character bit shift s = floor(alpha / q)."""
    return alpha // q


def _validate_params(q: int, alpha: int, w: int):
    if q < 1:
        raise InvalidParametersError(f"q must be >= 1, got {q}")
    if not 1 <= alpha <= config.MAX_ALPHA:
        raise InvalidParametersError(f"alpha must be in [1, {config.MAX_ALPHA}], got {alpha}")
    if w < 8 or w & (w - 1):
        raise InvalidParametersError(f"word width must be a power of two >= 8, got {w}")


@dataclass(frozen=True, slots=True)
class HcParams:
    q: int
    alpha: int
    s: int
    mask: int
    w: int = config.HC_WORD_BITS

    def __post_init__(self):
        _validate_params(self.q, self.alpha, self.w)
        if self.s != derive_shift(self.alpha, self.q):
            raise InvalidParametersError(f"shift {self.s} does not match floor({self.alpha}/{self.q})")
        if self.mask != (1 << self.alpha) - 1:
            raise InvalidParametersError(f"mask {self.mask:#x} does not match 2^{self.alpha} - 1")

    @classmethod
    def create(cls, q: int | None = None, alpha: int | None = None, w: int | None = None) -> "HcParams":
        """Build params, filling in configured defaults and deriving s and mask."""
        q = config.HC_DEFAULT_Q if q is None else q
        alpha = config.HC_DEFAULT_ALPHA if alpha is None else alpha
        w = config.HC_WORD_BITS if w is None else w
        _validate_params(q, alpha, w)
        return cls(q=q, alpha=alpha, s=derive_shift(alpha, q), mask=(1 << alpha) - 1, w=w)


# =============================================================================
# Hash Functions
# =============================================================================
def hash_qgram(data, p: int, q: int, s: int, mask: int) -> int:
    """Hash of the q-gram data[p-q+1 .. p], read from p backwards.

    Each step shifts the running value left by s and adds the next byte;
    the result is reduced with mask into [0, 2^alpha).
    """
    assert q - 1 <= p < len(data), f"q-gram end {p} out of range for q={q}, len={len(data)}"
    v = 0
    for i in range(p, p - q, -1):
        v = (v << s) + data[i]
    return v & mask


def link_hash(v: int, w: int = config.HC_WORD_BITS) -> int:
    """Single-bit word 2^(v mod w). w must be a power of two."""
    return 1 << (v & (w - 1))


# =============================================================================
# Preprocessing
# =============================================================================
@dataclass(frozen=True, slots=True)
class FilterTable:
    words: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.words)

    def __getitem__(self, index: int) -> int:
        return self.words[index]

    def popcount(self) -> int:
        return sum(word.bit_count() for word in self.words)


def enumerate_chains(m: int, q: int) -> list[tuple[int, ...]]:
    """q-gram chains of a pattern of length m, as ascending start indices.

    One chain per pattern position j with m-q <= j < m that has at least one
    q-gram ending at it. Ordered from j = m-1 downwards, so chains[0] is the
    chain whose earliest q-gram hashes to h_v.
    """
    if not 1 <= q <= m:
        raise InvalidParametersError(f"need 1 <= q <= m, got q={q}, m={m}")
    lowest = max(m - q, q - 1)
    return [tuple(reversed(range(j - q + 1, -1, -q))) for j in range(m - 1, lowest - 1, -1)]


@dataclass(frozen=True, slots=True)
class CompiledPattern:
    pattern: bytes
    params: HcParams
    table: FilterTable
    h_v: int
    hash_evaluations: int = 0

    def __post_init__(self):
        if len(self.pattern) < self.params.q:
            raise PatternTooShortError(f"pattern length {len(self.pattern)} < q={self.params.q}")
        if len(self.table) != 1 << self.params.alpha:
            raise InvalidParametersError(f"table has {len(self.table)} words, expected 2^{self.params.alpha}")

    @property
    def m(self) -> int:
        return len(self.pattern)

    def popcount(self) -> int:
        return self.table.popcount()


def compile(pattern: bytes, q: int | None = None, alpha: int | None = None, w: int | None = None) -> CompiledPattern:
    """Preprocess a pattern into a search-ready CompiledPattern.

    Chains are walked backwards, the one ending at m-1 last, linking each
    adjacent pair with F[h(u2)] |= λ(h(u1)). The first q-grams of each chain
    are then flagged with 1 only where their word is still empty. h_v is the
    last hash of the chain loop.
    """
    if not pattern:
        raise EmptyPatternError("pattern must not be empty")
    params = HcParams.create(q, alpha, w)
    pattern = bytes(pattern)
    m, q, s, mask, w = len(pattern), params.q, params.s, params.mask, params.w
    if q > m:
        raise PatternTooShortError(f"pattern length {m} is shorter than q={q}")

    words = [0] * (1 << params.alpha)
    evaluations = 0
    v = 0
    for chain in reversed(enumerate_chains(m, q)):
        starts = chain[::-1]
        v = hash_qgram(pattern, starts[0] + q - 1, q, s, mask)
        evaluations += 1
        for start in starts[1:]:
            later = v
            v = hash_qgram(pattern, start + q - 1, q, s, mask)
            evaluations += 1
            words[later] |= link_hash(v, w)
    h_v = v

    for end in range(q - 1, min(2 * q - 1, m)):
        v = hash_qgram(pattern, end, q, s, mask)
        evaluations += 1
        if not words[v]:
            words[v] = 1

    compiled = CompiledPattern(pattern, params, FilterTable(tuple(words)), h_v, evaluations)
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(f"Compiled pattern m={m} q={q} alpha={params.alpha}: popcount={compiled.popcount()}, h_v={h_v}")
    return compiled


# =============================================================================
# Search
# =============================================================================
class Occurrence(NamedTuple):
    start: int


@dataclass(slots=True)
class SearchMetrics:
    windows: int = 0
    qgram_hashes: int = 0
    link_checks: int = 0
    verifications: int = 0
    hv_rejections: int = 0
    completed_walks: int = 0
    shift_total: int = 0

    @property
    def mean_shift(self) -> float:
        return self.shift_total / self.windows if self.windows else 0.0


@dataclass(slots=True)
class SearchBuffer:
    """Text storage with slack after the logical end for the SHC sentinel.

    Bytes [0, n) are the text; searches only ever write into [n, n+m).
    """
    data: bytearray
    n: int

    def __post_init__(self):
        if not 0 <= self.n <= len(self.data):
            raise InvalidParametersError(f"logical length {self.n} exceeds capacity {len(self.data)}")

    @classmethod
    def from_bytes(cls, text: bytes, slack: int) -> "SearchBuffer":
        if slack < 0:
            raise InvalidParametersError(f"slack must be >= 0, got {slack}")
        data = bytearray(len(text) + slack)
        data[:len(text)] = text
        return cls(data, len(text))

    @property
    def capacity(self) -> int:
        return len(self.data)

    def view(self) -> memoryview:
        return memoryview(self.data)[:self.n]


def _check_window(cp: CompiledPattern, y, j: int, v: int, metrics: SearchMetrics, found: list[Occurrence]) -> int:
    """Walk back from a window end j whose q-gram hash v has a nonzero word.

    Returns the next window end.
    """
    x, params, words = cp.pattern, cp.params, cp.table.words
    m, q = len(x), params.q
    end = j
    z = words[v]
    i = j - m + 2 * q
    while j >= i:
        j -= q
        v = hash_qgram(y, j, q, params.s, params.mask)
        metrics.qgram_hashes += 1
        metrics.link_checks += 1
        if not z & link_hash(v, params.w):
            break
        z = words[v]
    else:
        # whole window read: resume one position right of this window
        metrics.completed_walks += 1
        j = i - q
        if v == cp.h_v:
            metrics.verifications += 1
            start = end - m + 1
            if y[start:end + 1] == x:
                found.append(Occurrence(start))
        else:
            metrics.hv_rejections += 1
    return j + m - q + 1


def search_hc(cp: CompiledPattern, text) -> tuple[list[Occurrence], SearchMetrics]:
    """All occurrences of cp.pattern in text (overlaps included), ascending."""
    metrics = SearchMetrics()
    found: list[Occurrence] = []
    m, n = cp.m, len(text)
    if n < m:
        return found, metrics

    params, words = cp.params, cp.table.words
    q, s, mask = params.q, params.s, params.mask
    shift = m - q + 1
    j = m - 1
    while j < n:
        v = hash_qgram(text, j, q, s, mask)
        metrics.windows += 1
        metrics.qgram_hashes += 1
        if words[v]:
            j = _check_window(cp, text, j, v, metrics, found)
        else:
            j += shift
    metrics.shift_total = j - (m - 1)
    return found, metrics


def search_shc(cp: CompiledPattern, buf: SearchBuffer) -> tuple[list[Occurrence], SearchMetrics]:
    """HC search using a sentinel copy of the pattern written at buf.data[n:n+m].

    The skip loop runs without a position check: the sentinel guarantees it
    stops at or before n+m-1.
    """
    m, n = cp.m, buf.n
    if buf.capacity < n + m:
        raise BufferTooSmallError(f"buffer capacity {buf.capacity} < n + m = {n + m}")

    y = buf.data
    y[n:n + m] = cp.pattern
    metrics = SearchMetrics()
    found: list[Occurrence] = []

    params, words = cp.params, cp.table.words
    q, s, mask = params.q, params.s, params.mask
    shift = m - q + 1
    j = m - 1
    while j < n:
        first = j
        v = hash_qgram(y, j, q, s, mask)
        metrics.qgram_hashes += 1
        while not words[v]:
            j += shift
            v = hash_qgram(y, j, q, s, mask)
            metrics.qgram_hashes += 1
        metrics.windows += (min(j, n - 1) - first) // shift + 1
        if j >= n:
            # first skipped window end at or past n
            j = first + ((n - 1 - first) // shift + 1) * shift
            break
        j = _check_window(cp, y, j, v, metrics, found)
    metrics.shift_total = max(j - (m - 1), 0)
    return found, metrics


def search(cp: CompiledPattern, text: bytes, algorithm: Algorithm = "hc") -> tuple[list[Occurrence], SearchMetrics]:
    """Dispatch to HC or SHC; SHC copies text into a fresh buffer with m bytes of slack."""
    if algorithm == "hc":
        return search_hc(cp, text)
    if algorithm == "shc":
        return search_shc(cp, SearchBuffer.from_bytes(text, cp.m))
    raise InvalidParametersError(f"unknown algorithm {algorithm!r}, expected 'hc' or 'shc'")


def find_all(pattern: bytes, text: bytes, q: int | None = None, alpha: int | None = None,
             sentinel: bool = False) -> list[int]:
    """One-shot helper: compile and search, returning start positions."""
    found, _ = search(compile(pattern, q, alpha), text, "shc" if sentinel else "hc")
    return [occ.start for occ in found]
