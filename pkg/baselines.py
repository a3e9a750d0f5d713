"""
Reference matchers: a brute-force oracle and Horspool as the classical baseline.
"""

from enum import Enum

from core import EmptyPatternError, Occurrence


class BaselineAlgo(str, Enum):
    NAIVE = "naive"
    HORSPOOL = "horspool"


def naive_search(pattern: bytes, text: bytes) -> list[Occurrence]:
    """Every p in [0, n-m] where text[p..p+m-1] == pattern, by direct comparison."""
    m, n = len(pattern), len(text)
    if m == 0:
        raise EmptyPatternError("pattern must not be empty")
    found = []
    for p in range(n - m + 1):
        k = 0
        while k < m and text[p + k] == pattern[k]:
            k += 1
        if k == m:
            found.append(Occurrence(p))
    return found


def horspool_search(pattern: bytes, text: bytes) -> list[Occurrence]:
    """Horspool's bad-character matcher with a 256-entry shift table."""
    m, n = len(pattern), len(text)
    if m == 0:
        raise EmptyPatternError("pattern must not be empty")
    shifts = [m] * 256
    for k in range(m - 1):
        shifts[pattern[k]] = m - 1 - k

    found = []
    last = pattern[m - 1]
    pos = 0
    while pos <= n - m:
        c = text[pos + m - 1]
        if c == last and text[pos:pos + m - 1] == pattern[:m - 1]:
            found.append(Occurrence(pos))
        pos += shifts[c]
    return found


SEARCHERS = {
    BaselineAlgo.NAIVE: naive_search,
    BaselineAlgo.HORSPOOL: horspool_search,
}
