import numpy as np
import pytest

from stabkit import StabiliserArray
from stabkit.generate import random_array

# Acceptance tests record one line per criterion here; the terminal
# summary prints them whether or not output capture is on.
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


def arr(*rows: str, n: int | None = None) -> StabiliserArray:
    return StabiliserArray.from_strings(list(rows), n_qubits=n)


BELL = ("+XX", "+ZZ")
GHZ3 = ("+XXX", "+ZZI", "+IZZ")
PRODUCT = ("+ZI", "+IZ")


@pytest.fixture
def bell():
    return arr(*BELL)


@pytest.fixture
def ghz3():
    return arr(*GHZ3)


@pytest.fixture
def product():
    return arr(*PRODUCT)


def random_cases(count: int, n_max: int, seed: int, n_min: int = 1, full_rank: bool = False):
    """Yield ``(index, array)`` with varied ``n`` and rank, all seeded."""
    rng = np.random.default_rng(seed)
    for i in range(count):
        n = int(rng.integers(n_min, n_max + 1))
        k = n if full_rank else int(rng.integers(0, n + 1))
        yield i, random_array(n, k, int(rng.integers(2**31)))
