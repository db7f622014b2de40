import numpy as np
import pytest

_criteria = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def criterion(request):
    """Record one acceptance line; printed in the terminal summary."""

    def record(label, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f" :: {detail}" if detail else "")
        _criteria.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for line in _criteria:
            terminalreporter.write_line(line)


def random_pair(rng, max_period, allow_full=False):
    from bfree_pressure.words import PeriodicWord, SandwichPair

    while True:
        s = int(rng.integers(1, max_period + 1))
        x = rng.integers(0, 2, s)
        w = x * rng.integers(0, 2, s)
        pair = SandwichPair(PeriodicWord(w.tolist()), PeriodicWord(x.tolist()))
        if allow_full or not pair.is_full_shift:
            return pair
