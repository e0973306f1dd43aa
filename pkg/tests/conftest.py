import random
import re

import pytest

from cgsolve.digraph import Digraph


def random_digraph(rng: random.Random, n: int, density: float, loops: bool = True) -> Digraph:
    edges = [
        (u, v)
        for u in range(n)
        for v in range(n)
        if (u != v or loops) and rng.random() < density
    ]
    return Digraph(n, edges)


def random_dag(rng: random.Random, n: int, density: float) -> Digraph:
    perm = list(range(n))
    rng.shuffle(perm)
    edges = [(perm[i], perm[j]) for i in range(n) for j in range(i) if rng.random() < density]
    return Digraph(n, edges)


@pytest.fixture
def rng():
    return random.Random(20240613)


_acceptance = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    key = int(m.group(1))
    if report.when == "call" or (report.when == "setup" and report.failed):
        prev = _acceptance.get(key, "PASS")
        _acceptance[key] = "FAIL" if report.failed or prev == "FAIL" else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_acceptance):
        terminalreporter.write_line(f"criterion {key:2d}: {_acceptance[key]}")
