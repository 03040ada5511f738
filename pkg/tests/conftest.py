from __future__ import annotations

from pathlib import Path

import pytest

from spslab.closure import FiniteClosureSpace
from spslab.functors import functor_G
from spslab.order import FiniteLattice, order_closure

GOLDEN = Path(__file__).parent / "golden"

X3 = ["x1", "x2", "x3"]

FIXTURES = {
    "e1": (X3, [[], ["x1"], ["x2"], ["x1", "x2"], X3]),
    "e2": (X3, [[], ["x1"], ["x2", "x3"], X3]),
    "e3": (X3, [[], ["x1"], ["x2"], X3]),
    "e4": (["x1", "x2"], [[], ["x1"], ["x2"], ["x1", "x2"]]),
    "e5": (X3, [[], ["x1"], ["x1", "x2"], X3]),
    "one": (["x"], [[], ["x"]]),
}


def space(name: str) -> FiniteClosureSpace:
    points, closed = FIXTURES[name]
    return FiniteClosureSpace.build(points, closed)


def sps(name: str):
    return functor_G(space(name))


def lattice(elements, covers) -> FiniteLattice:
    return FiniteLattice.from_order(elements, order_closure(elements, covers))


def chain(*names: str) -> FiniteLattice:
    return lattice(names, list(zip(names, names[1:])))


def diamond() -> FiniteLattice:
    return lattice(["0", "a", "b", "I"], [("0", "a"), ("0", "b"), ("a", "I"), ("b", "I")])


@pytest.fixture(params=["e1", "e2", "e3", "e4", "e5", "one"])
def fixture_space(request) -> FiniteClosureSpace:
    return space(request.param)


# -- acceptance summary ------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
