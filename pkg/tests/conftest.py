import random
from pathlib import Path

import pytest

from s5sat.generate import random_formula

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"
TOOLS = Path(__file__).parent / "tools"

EXAMPLE1 = "p & box(p | q) & (dia(p & q) | dia(~p & ~q))"
REACH_EXAMPLE = "box(p | q) & dia p & dia ~p"
CONFLICT_EXAMPLE = "box(~p | ~q) & dia(p & q & s)"

CORPUS_SIZE = 500


def corpus_formula(seed: int):
    """Seeded formula: <= 5 atoms, <= 4 boxes, <= 4 diamonds, depth <= 4."""
    rng = random.Random(seed)
    return random_formula(rng, n_atoms=rng.randint(2, 5), depth=4, max_boxes=4, max_diamonds=4)


@pytest.fixture(scope="session")
def corpus():
    return [corpus_formula(s) for s in range(CORPUS_SIZE)]


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
