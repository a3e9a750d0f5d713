"""
Randomized oracle-equivalence suite: HC and SHC against the brute-force matcher.
"""

import logging
import random
from dataclasses import dataclass

import config
import core
from baselines import naive_search
from core import SearchBuffer

logger = logging.getLogger("hashchain.selftest")


@dataclass(frozen=True)
class Trial:
    pattern: bytes
    text: bytes
    q: int
    alpha: int

    def describe(self) -> str:
        return f"pattern={self.pattern!r} text={self.text!r} q={self.q} alpha={self.alpha}"


@dataclass
class SelftestResult:
    trials: int
    failures: int = 0
    first_failure: Trial | None = None
    detail: str | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0


def random_trial(rng: random.Random, max_text: int = config.SELFTEST_MAX_TEXT) -> Trial:
    """A random (pattern, text, q, alpha) with a few copies of the pattern planted in the text."""
    sigma = rng.choice(config.SELFTEST_SIGMAS)
    q = rng.randint(1, 8)
    m = rng.randint(q, 128)
    alpha = rng.randint(8, 12)
    n = rng.randint(0, max_text)
    symbols = range(sigma)
    text = bytearray(rng.choices(symbols, k=n))
    pattern = bytes(rng.choices(symbols, k=m))
    if n >= m:
        for _ in range(rng.randint(0, 3)):
            pos = rng.randint(0, n - m)
            text[pos:pos + m] = pattern
    return Trial(pattern, bytes(text), q, alpha)


def check_trial(trial: Trial) -> str | None:
    """Describe the first disagreement with the oracle, or None when all agree."""
    expected = [occ.start for occ in naive_search(trial.pattern, trial.text)]
    cp = core.compile(trial.pattern, trial.q, trial.alpha)
    m = len(trial.pattern)

    hc = [occ.start for occ in core.search_hc(cp, trial.text)[0]]
    for start in hc:
        if trial.text[start:start + m] != trial.pattern:
            return f"hc reported {start}, where the text does not match"
    if hc != expected:
        return f"hc reported {hc}, oracle {expected}"

    buf = SearchBuffer.from_bytes(trial.text, m)
    shc = [occ.start for occ in core.search_shc(cp, buf)[0]]
    if bytes(buf.view()) != trial.text:
        return "shc modified the logical text"
    if shc != expected:
        return f"shc reported {shc}, oracle {expected}"
    return None


def shrink(trial: Trial) -> Trial:
    """Trim the text from both ends while the trial keeps failing."""
    step = len(trial.text) // 2
    while step:
        for candidate in (trial.text[step:], trial.text[:-step]):
            smaller = Trial(trial.pattern, candidate, trial.q, trial.alpha)
            if check_trial(smaller) is not None:
                trial = smaller
                break
        else:
            step //= 2
    return trial


def run_selftest(trials: int, seed: int, max_text: int = config.SELFTEST_MAX_TEXT) -> SelftestResult:
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rng = random.Random(seed)
    result = SelftestResult(trials)
    for index in range(trials):
        trial = random_trial(rng, max_text)
        detail = check_trial(trial)
        if detail is None:
            continue
        result.failures += 1
        logger.warning(f"Trial {index} failed: {detail}")
        if result.first_failure is None:
            result.first_failure = shrink(trial)
            result.detail = check_trial(result.first_failure)
    logger.info(f"Selftest: {trials - result.failures}/{trials} trials passed (seed={seed})")
    return result
