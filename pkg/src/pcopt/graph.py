"""Simple undirected graphs on vertices 0..n-1, edge colorings, and generators.

Vertex sets are handled internally as int bitmasks; the public API speaks
sorted tuples so that results are stable and easy to compare in tests.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import DisconnectedGraphError, GraphFormatError

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def bits(mask: int) -> list[int]:
    """Vertices of a bitmask in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        canon = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            e = norm_edge(u, v)
            if e in canon:
                raise ValueError(f"duplicate edge {e}")
            canon.add(e)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, tuple((int(u), int(v)) for u, v in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Neighbourhood bitmask per vertex."""
        nb = [0] * self.n
        for u, v in self.edges:
            nb[u] |= 1 << v
            nb[v] |= 1 << u
        return tuple(nb)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(bits(a)) for a in self.adj)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def is_connected(self) -> bool:
        return self.n <= 1 or component_masks(self, self.full_mask)[0] == self.full_mask

    def remove_vertex(self, v: int) -> tuple["Graph", tuple[int, ...]]:
        return induced_subgraph(self, [u for u in range(self.n) if u != v])


@dataclass(frozen=True)
class EdgeColoring:
    """Colors on the edges of ``graph``. Edges absent from ``colors`` carry color 1."""

    graph: Graph
    colors: Mapping[Edge, int] = field(default_factory=dict)

    def __post_init__(self):
        canon = {}
        for (u, v), c in dict(self.colors).items():
            e = norm_edge(u, v)
            if e not in self.graph.edge_set:
                raise ValueError(f"{e} is not an edge of the graph")
            if int(c) < 1:
                raise ValueError(f"color {c} on {e} is not a positive integer")
            if c != 1:
                canon[e] = int(c)
        object.__setattr__(self, "colors", canon)

    def color(self, u: int, v: int) -> int:
        return self.colors.get(norm_edge(u, v), 1)

    @cached_property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        """n x n color table, 0 for non-edges."""
        n = self.graph.n
        rows = [[0] * n for _ in range(n)]
        for u, v in self.graph.edges:
            c = self.colors.get((u, v), 1)
            rows[u][v] = rows[v][u] = c
        return tuple(tuple(r) for r in rows)


# ---------------------------------------------------------------- edge-list I/O

def parse_graph(text: str) -> Graph:
    """Parse the ``n m`` header + ``u v`` lines edge-list format."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise GraphFormatError("empty document", None)
    header = _int_pair(lines[0], 1)
    n, m = header
    if n < 0 or m < 0:
        raise GraphFormatError("negative count in header", 1)
    if len(lines) - 1 != m:
        raise GraphFormatError(f"header declares {m} edges but {len(lines) - 1} edge lines follow", None)
    seen = set()
    for lineno, line in enumerate(lines[1:], start=2):
        u, v = _int_pair(line, lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        for x in (u, v):
            if not 0 <= x < n:
                raise GraphFormatError(f"vertex {x} out of range 0..{n - 1}", lineno)
        e = norm_edge(u, v)
        if e in seen:
            raise GraphFormatError(f"duplicate edge {e[0]} {e[1]}", lineno)
        seen.add(e)
    return Graph(n, tuple(seen))


def _int_pair(line: str, lineno: int) -> tuple[int, int]:
    parts = line.rstrip("\r").split(" ")
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise GraphFormatError(f"expected two nonnegative integers separated by one space, got {line!r}", lineno)
    return int(parts[0]), int(parts[1])


def write_graph(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


# ---------------------------------------------------------------- structure

def component_masks(g: Graph, within: int) -> list[int]:
    """Connected components of the subgraph induced by the ``within`` mask.

    Ordered by smallest vertex.
    """
    adj = g.adj
    comps = []
    rest = within
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            new = adj[low.bit_length() - 1] & within & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        rest &= ~comp
    return comps


def is_connected_mask(g: Graph, within: int) -> bool:
    if within == 0:
        return True
    seed = within & -within
    comp = seed
    frontier = seed
    adj = g.adj
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        new = adj[low.bit_length() - 1] & within & ~comp
        comp |= new
        frontier |= new
    return comp == within


def components(g: Graph) -> list[tuple[int, ...]]:
    return [tuple(bits(c)) for c in component_masks(g, g.full_mask)]


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """G[s] relabelled to 0..|s|-1, plus the new-to-original index map."""
    verts = sorted(set(s))
    for v in verts:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    index = {v: i for i, v in enumerate(verts)}
    edges = tuple((index[u], index[v]) for u, v in g.edges if u in index and v in index)
    return Graph(len(verts), edges), tuple(verts)


def require_connected(g: Graph) -> None:
    if not g.is_connected():
        raise DisconnectedGraphError("graph is not connected")


# ---------------------------------------------------------------- generators

def path(n: int) -> Graph:
    _positive(n=n)
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def star(m: int) -> Graph:
    """K_{1,m} with center 0."""
    _positive(m=m)
    return Graph(m + 1, tuple((0, i) for i in range(1, m + 1)))


def complete(n: int) -> Graph:
    _positive(n=n)
    return Graph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)))


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b}; sides are 0..a-1 and a..a+b-1."""
    _positive(a=a, b=b)
    return Graph(a + b, tuple((u, a + v) for u in range(a) for v in range(b)))


def random_tree(n: int, seed: int) -> Graph:
    """Uniform labelled tree via a random Pruefer sequence."""
    _positive(n=n)
    if n <= 2:
        return path(n)
    rng = random.Random(seed)
    code = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in code:
        degree[x] += 1
    edges = []
    for x in code:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = (v for v in range(n) if degree[v] == 1)
    edges.append((u, w))
    return Graph(n, tuple(edges))


def random_connected(n: int, p: float, seed: int, max_tries: int = 100_000) -> Graph:
    """Erdos-Renyi G(n, p) conditioned on connectivity by rejection."""
    _positive(n=n)
    if not 0.0 <= p <= 1.0:
        raise ValueError("edge probability must lie in [0, 1]")
    if n > 1 and p == 0.0:
        raise ValueError("p = 0 never yields a connected graph for n > 1")
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for _ in range(max_tries):
        g = Graph(n, tuple(e for e in pairs if rng.random() < p))
        if g.is_connected():
            return g
    raise ValueError(f"no connected sample after {max_tries} tries (n={n}, p={p})")


FAMILIES = {
    "path": path,
    "cycle": cycle,
    "star": star,
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "random_connected": random_connected,
    "random_tree": random_tree,
}


def generate(family: str, *params, **kwargs) -> Graph:
    try:
        maker = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    return maker(*params, **kwargs)


def parse_family(spec: str, seed: int | None = None) -> Graph:
    """``name:arg,arg`` e.g. ``star:9``, ``complete_bipartite:7,2``, ``random_connected:10,0.4``.

    Random families take their seed from ``seed`` (required for them).
    """
    name, _, argtext = spec.partition(":")
    args = [a for a in argtext.split(",") if a] if argtext else []
    if name == "random_connected":
        if len(args) != 2:
            raise ValueError("random_connected takes n,p")
        return generate(name, int(args[0]), float(args[1]), seed=_need_seed(seed))
    if name == "random_tree":
        if len(args) != 1:
            raise ValueError("random_tree takes n")
        return generate(name, int(args[0]), seed=_need_seed(seed))
    return generate(name, *(int(a) for a in args))


def _need_seed(seed):
    if seed is None:
        raise ValueError("random families need an explicit seed")
    return seed


def _positive(**params):
    for name, value in params.items():
        if value <= 0:
            raise ValueError(f"{name} must be positive, got {value}")
