from __future__ import annotations

import random
import sys

import pytest

from maqc.simplicial import ColoredComplex, complex_from_facets
from maqc.verify import random_instance


def cycle(n: int, partition=None) -> ColoredComplex:
    names = [f"v{i}" for i in range(1, n + 1)]
    facets = [[names[i], names[(i + 1) % n]] for i in range(n)]
    return complex_from_facets(names, facets, partition)


def square_two_blocks() -> ColoredComplex:
    return cycle(4, [["v1", "v3"], ["v2", "v4"]])


def two_points(partition=None) -> ColoredComplex:
    return complex_from_facets(["v1", "v2"], [["v1"], ["v2"]], partition)


def random_complexes(seed: int, count: int, max_vertices: int = 6) -> list[ColoredComplex]:
    rng = random.Random(seed)
    return [random_instance(rng, max_vertices) for _ in range(count)]


@pytest.fixture
def square() -> ColoredComplex:
    return square_two_blocks()


def pytest_terminal_summary(terminalreporter) -> None:
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
