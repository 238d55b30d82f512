"""Properly-colored path search and proper-connectivity certificates.

A proper *walk* may revisit vertices and so does not certify a proper *path*.
The walk search is used only to reject quickly; every positive answer comes
from simple-path backtracking.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import DisconnectedGraphError
from .graph import EdgeColoring, Graph

Path = tuple[int, ...]


@dataclass
class VerifyReport:
    properly_connected: bool
    failing_pair: Optional[tuple[int, int]]
    cost_p: int
    cost_q: int
    witnesses: dict[tuple[int, int], Path] = field(default_factory=dict)

    @property
    def total_cost(self) -> int:
        return self.cost_p + self.cost_q

    def to_json(self, witnesses: bool = False) -> dict:
        out = {
            "ok": self.properly_connected,
            "failing_pair": list(self.failing_pair) if self.failing_pair else None,
            "p": self.cost_p,
            "q": self.cost_q,
            "cost": self.total_cost,
        }
        if witnesses:
            out["witnesses"] = [{"pair": list(k), "path": list(v)} for k, v in sorted(self.witnesses.items())]
        return out


def plan_cost(coloring: EdgeColoring) -> tuple[int, int, int]:
    """(p, q, p + q): recolored edges, distinct new colors, total."""
    p = len(coloring.colors)
    q = len(set(coloring.colors.values()))
    return p, q, p + q


def is_proper_path(coloring: EdgeColoring, path: Sequence[int]) -> bool:
    g = coloring.graph
    if len(set(path)) != len(path):
        raise ValueError(f"path {list(path)} repeats a vertex")
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b):
            raise ValueError(f"{a}-{b} is not an edge")
    cols = [coloring.color(a, b) for a, b in zip(path, path[1:])]
    return all(c != d for c, d in zip(cols, cols[1:]))


def walk_reachable(matrix, neighbors, src: int) -> int:
    """Bitmask of vertices reachable from src by a properly colored walk.

    Breadth-first over (vertex, incoming color) states. A vertex outside the
    mask has no properly colored path from src.
    """
    seen_states = {(src, 0)}
    reached = 1 << src
    queue = deque([(src, 0)])
    while queue:
        x, c = queue.popleft()
        row = matrix[x]
        for y in neighbors[x]:
            cy = row[y]
            if cy != c and (y, cy) not in seen_states:
                seen_states.add((y, cy))
                reached |= 1 << y
                queue.append((y, cy))
    return reached


def proper_paths_from(matrix, neighbors, src: int, targets: int, want_paths: bool = False):
    """Backtrack over simple properly colored paths from src until every target is reached.

    Returns (reached mask restricted to targets, {target: path}).
    """
    found = 0
    paths: dict[int, Path] = {}
    stack = [src]

    def dfs(x: int, incoming: int, visited: int) -> bool:
        nonlocal found
        row = matrix[x]
        for y in neighbors[x]:
            cy = row[y]
            if cy == incoming or visited >> y & 1:
                continue
            yb = 1 << y
            if targets & yb and not found & yb:
                found |= yb
                if want_paths:
                    paths[y] = tuple(stack) + (y,)
                if found == targets:
                    return True
            stack.append(y)
            done = dfs(y, cy, visited | yb)
            stack.pop()
            if done:
                return True
        return False

    if targets:
        dfs(src, 0, 1 << src)
    return found, paths


def exists_pc_path(coloring: EdgeColoring, u: int, v: int) -> Optional[Path]:
    """A simple properly colored u-v path, or None."""
    if u == v:
        raise ValueError("endpoints must differ")
    g = coloring.graph
    if g.has_edge(u, v):
        return (u, v)
    matrix = coloring.matrix
    if not walk_reachable(matrix, g.neighbors, u) >> v & 1:
        return None
    found, paths = proper_paths_from(matrix, g.neighbors, u, 1 << v, want_paths=True)
    return paths.get(v)


def is_properly_connected(coloring: EdgeColoring, witnesses: bool = False) -> VerifyReport:
    """Check every pair; report the lexicographically first failing pair, if any."""
    g = coloring.graph
    if not g.is_connected():
        raise DisconnectedGraphError("verification needs a connected graph")
    p, q, _ = plan_cost(coloring)
    matrix = coloring.matrix
    certs: dict[tuple[int, int], Path] = {}
    for u in range(g.n):
        later = g.full_mask & ~((1 << (u + 1)) - 1)
        if witnesses:
            for v in g.neighbors[u]:
                if v > u:
                    certs[(u, v)] = (u, v)
        targets = later & ~g.adj[u]
        if not targets:
            continue
        # targets outside the walk-reachable set are certain failures; only
        # the rest need backtracking
        reach = walk_reachable(matrix, g.neighbors, u) & targets
        found, paths = proper_paths_from(matrix, g.neighbors, u, reach, want_paths=witnesses)
        missing = targets & ~found
        if missing:
            v = (missing & -missing).bit_length() - 1
            return VerifyReport(False, (u, v), p, q, certs if witnesses else {})
        for v, path in paths.items():
            certs[(u, v)] = path
    return VerifyReport(True, None, p, q, certs if witnesses else {})


class ConnectivityChecker:
    """Reusable yes/no proper-connectivity test over a mutable color table.

    Used by exhaustive searches that test many colorings of one graph. The
    source that failed last time is retried first, which rejects most bad
    colorings after a single search.
    """

    def __init__(self, g: Graph):
        if not g.is_connected():
            raise DisconnectedGraphError("verification needs a connected graph")
        self.g = g
        self.matrix = [[0] * g.n for _ in range(g.n)]
        for u, v in g.edges:
            self.matrix[u][v] = self.matrix[v][u] = 1
        self.targets = [g.full_mask & ~g.adj[u] & ~(1 << u) for u in range(g.n)]
        self.order = [u for u in range(g.n) if self.targets[u]]

    def set_colors(self, edges, colors) -> None:
        m = self.matrix
        for (u, v), c in zip(edges, colors):
            m[u][v] = m[v][u] = c

    def reset(self, edges) -> None:
        m = self.matrix
        for u, v in edges:
            m[u][v] = m[v][u] = 1

    def check(self) -> bool:
        nbrs = self.g.neighbors
        done = 0
        for i, u in enumerate(self.order):
            t = self.targets[u] & ~done
            done |= 1 << u
            if not t:
                continue
            if t & ~walk_reachable(self.matrix, nbrs, u):
                ok = False
            else:
                found, _ = proper_paths_from(self.matrix, nbrs, u, t)
                ok = found == t
            if not ok:
                if i:
                    self.order.insert(0, self.order.pop(i))
                return False
        return True
