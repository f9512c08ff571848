import functools
import sys

import pytest

from mllgames.corpus import corpus, labelled_corpus
from mllgames.game import BUILTIN_GAMES, builtin_game


@functools.lru_cache(maxsize=None)
def structure_corpus():
    """Every proof-structure class up to 8 literals plus every labelled
    structure over a, b up to 6 literals."""
    return tuple(corpus(8)) + tuple(labelled_corpus(6))


@pytest.fixture(scope="session")
def full_corpus():
    return structure_corpus()


@pytest.fixture(scope="session")
def catalog():
    return [builtin_game(n) for n in BUILTIN_GAMES]



def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
        terminalreporter.write_line(line)
