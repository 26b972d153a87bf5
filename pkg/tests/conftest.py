import random
from pathlib import Path

import networkx as nx
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from alphaspectra.graph import Graph
from alphaspectra.search import data_dir, read_graph6_codes

DATA = Path(data_dir())

settings.register_profile("default", deadline=None)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=1, max_n=9, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, keep in zip(pairs, mask) if keep]
    if connected:
        # chain every vertex to an earlier one so the result is connected
        for v in range(1, n):
            u = draw(st.integers(0, v - 1))
            edges.append((u, v))
    return Graph(n, set(edges))


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


@pytest.fixture(scope="session")
def conn_upto7():
    return read_graph6_codes(DATA / "conn_upto7.g6")


@pytest.fixture(scope="session")
def conn_upto8():
    return read_graph6_codes(DATA / "conn_upto8.g6")


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
