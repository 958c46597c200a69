import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lattidyn.lattice import poset_validate  # noqa: E402


def label_set(d):
    """A downset as a frozenset of labels, the representation oracles use."""
    return frozenset(d.labels())


def family_sets(F):
    return {frozenset(F.poset.mask_key(m)) for m in F.masks}


def lattice_sets(P):
    return [frozenset(P.mask_key(m)) for m in P.downset_masks()]


def relation(P):
    return {(P.labels[i], P.labels[j]) for i in range(len(P)) for j in range(len(P)) if P.point_leq(i, j)}


@pytest.fixture
def vposet():
    return poset_validate("abc", [("c", "a"), ("c", "b")])


@pytest.fixture
def antichain():
    return poset_validate("ab")


@pytest.fixture
def point():
    return poset_validate("a")


@pytest.fixture
def chain():
    return poset_validate(["c", "a"], [("c", "a")])


@pytest.fixture
def rng():
    return random.Random(20261019)


DATA = Path(__file__).resolve().parents[1] / "demos" / "data"


@pytest.fixture
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    lines = getattr(test_acceptance, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
