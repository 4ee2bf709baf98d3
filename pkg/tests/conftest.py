import random
import time
from importlib import resources

import pytest

from minrank.graph import Graph
from minrank.graph6 import read_file
from minrank.pipeline import Pipeline, census, seed_witness_layers
from minrank.witness import WitnessStore

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[number] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def order8_path():
    return resources.files("minrank").joinpath("data/connected8.g6")


@pytest.fixture(scope="session")
def seeded():
    """Pipeline whose store holds an optimal witness for every connected graph up to order 7."""
    p = Pipeline(WitnessStore())
    reports = seed_witness_layers(7, p)
    return p, reports


@pytest.fixture(scope="session")
def census8(seeded):
    p, _ = seeded
    with resources.as_file(order8_path()) as path:
        graphs = list(read_file(path))
    start = time.perf_counter()
    records, report = census(graphs, p)
    return graphs, records, report, time.perf_counter() - start
