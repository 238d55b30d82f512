import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from pcopt.analysis import independence_number
from pcopt.graph import Graph, random_connected

settings.register_profile("default", deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def to_nx(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return G


def from_nx(G) -> Graph:
    index = {v: i for i, v in enumerate(sorted(G.nodes()))}
    return Graph.from_edges(len(index), [(index[u], index[v]) for u, v in G.edges()])


def brute_alpha(g: Graph) -> int:
    for k in range(g.n, 0, -1):
        for s in combinations(range(g.n), k):
            if not any(g.has_edge(u, v) for u, v in combinations(s, 2)):
                return k
    return 0


def sample_by_alpha(alpha, count, n_lo, n_hi, seed, p_lo=0.15, p_hi=0.95):
    """Deterministic list of connected random graphs with the given independence number."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        # fix n first so rejection does not skew the sample towards small graphs
        n = rng.randint(n_lo, n_hi)
        while True:
            g = random_connected(n, rng.uniform(p_lo, p_hi), seed=rng.randrange(2**31))
            if independence_number(g)[0] == alpha:
                out.append(g)
                break
    return out


@st.composite
def connected_graphs(draw, min_n=1, max_n=8):
    """Random spanning tree plus a random set of extra edges."""
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges.add((u, v))
    others = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    if others:
        extra = draw(st.lists(st.sampled_from(others), unique=True, max_size=len(others)))
        edges.update(extra)
    return Graph(n, tuple(edges))


@pytest.fixture
def criterion():
    """Record one acceptance line per criterion; the summary hook prints them."""

    class Recorder:
        def __call__(self, label, ok, detail=""):
            ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}".rstrip())
            return ok

    return Recorder()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
