import random
import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def random_valid_base(rng: random.Random, max_points: int = 8):
    """Random family closed under pairwise intersection and covering the space."""
    n = rng.randint(0, max_points)
    fam = {frozenset(range(n))}
    for _ in range(rng.randint(0, 5)):
        fam.add(frozenset(x for x in range(n) if rng.random() < 0.45))
    changed = True
    while changed:
        changed = False
        for a in list(fam):
            for b in list(fam):
                if a & b not in fam:
                    fam.add(a & b)
                    changed = True
    return n, sorted(fam, key=lambda s: (len(s), sorted(s)))


@pytest.fixture
def rng():
    return random.Random(1234)


ACCEPTANCE_LOG = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LOG:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LOG:
            terminalreporter.write_line(line)
