"""Exact independence structure, alpha-preserving subgraphs and degree-minimal spanning trees.

All searches are exact and exponential in the worst case. They are guarded by
a vertex cap so that an oversized instance fails loudly with
:class:`~pcopt.errors.CapExceeded` instead of silently degrading.
"""
from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterator, Optional, Sequence

from .errors import CapExceeded, DisconnectedGraphError, InternalError
from .graph import Edge, Graph, bits, component_masks, induced_subgraph, is_connected_mask, norm_edge, to_mask

DEFAULT_VERTEX_CAP = int(os.environ.get("PCOPT_VERTEX_CAP", "25"))
EXACT_TREE_CAP = 12
# Upper limit on candidate vertex sets examined by minimum_alpha_subgraph.
SUBSET_BUDGET = 2_000_000
# Upper limit on spanning trees examined per H when applying tie-break rule (3).
TREE_ENUM_LIMIT = 5000


def _check_cap(g: Graph, cap: Optional[int]) -> None:
    cap = DEFAULT_VERTEX_CAP if cap is None else cap
    if g.n > cap:
        raise CapExceeded(f"{g.n} vertices exceeds the exact-search cap of {cap}")


# ---------------------------------------------------------------- independence

def _clique_cover_bound(adj: Sequence[int], cand: int) -> int:
    """Greedy clique cover size of G[cand]; an upper bound on its independence number."""
    cliques: list[int] = []  # common-neighbourhood mask of each clique
    for v in bits(cand):
        vb = 1 << v
        for i, common in enumerate(cliques):
            if common & vb:
                cliques[i] = common & adj[v]
                break
        else:
            cliques.append(adj[v])
    return len(cliques)


@lru_cache(maxsize=1 << 18)
def mis_size(adj: tuple[int, ...], cand: int) -> int:
    """Independence number of the subgraph induced by ``cand``."""
    best = 0

    def search(cand: int, size: int) -> None:
        nonlocal best
        if cand == 0:
            if size > best:
                best = size
            return
        if size + cand.bit_count() <= best:
            return
        if size + _clique_cover_bound(adj, cand) <= best:
            return
        # vertex of least degree inside cand; some maximum set meets its closed neighbourhood
        pick, pick_nb = -1, 0
        low_deg = 1 << 30
        for v in bits(cand):
            nb = adj[v] & cand
            d = nb.bit_count()
            if d < low_deg:
                pick, pick_nb, low_deg = v, nb, d
                if d <= 1:
                    break
        if low_deg <= 1:
            search(cand & ~pick_nb & ~(1 << pick), size + 1)
            return
        excluded = 0
        for u in [pick] + bits(pick_nb):
            search(cand & ~adj[u] & ~(1 << u) & ~excluded, size + 1)
            excluded |= 1 << u

    search(cand, 0)
    return best


def _lex_smallest_mis(g: Graph, cand: int, alpha: int) -> tuple[int, ...]:
    chosen: list[int] = []
    need = alpha
    for v in bits(cand):
        if need == 0:
            break
        if not cand >> v & 1:
            continue
        rest = cand & ~g.adj[v] & ~((1 << (v + 1)) - 1)
        if 1 + mis_size(g.adj, rest) >= need:
            chosen.append(v)
            need -= 1
            cand = rest
        else:
            cand &= ~(1 << v)
    return tuple(chosen)


def independence_number(g: Graph, cap: Optional[int] = None) -> tuple[int, tuple[int, ...]]:
    """Exact alpha(G) with the lexicographically smallest maximum independent set."""
    _check_cap(g, cap)
    alpha = mis_size(g.adj, g.full_mask)
    return alpha, _lex_smallest_mis(g, g.full_mask, alpha)


def alpha_of(g: Graph, vertices: Sequence[int]) -> int:
    return mis_size(g.adj, to_mask(vertices))


def _iter_max_sets(adj: tuple[int, ...], cand: int, need: int, cur: int) -> Iterator[int]:
    if need == 0:
        yield cur
        return
    if cand.bit_count() < need or mis_size(adj, cand) < need:
        return
    low = cand & -cand
    v = low.bit_length() - 1
    yield from _iter_max_sets(adj, cand & ~adj[v] & ~low, need - 1, cur | low)
    yield from _iter_max_sets(adj, cand & ~low, need, cur)


def max_independent_set_masks(g: Graph, within: Optional[int] = None) -> list[int]:
    cand = g.full_mask if within is None else within
    alpha = mis_size(g.adj, cand)
    return list(_iter_max_sets(g.adj, cand, alpha, 0))


def all_max_independent_sets(g: Graph, cap: Optional[int] = None) -> list[tuple[int, ...]]:
    """Every independent set of size alpha(G), in lexicographic order."""
    _check_cap(g, cap)
    return [tuple(bits(m)) for m in max_independent_set_masks(g)]


# ---------------------------------------------------------------- matchings

def matching_number(g: Graph, cap: Optional[int] = None) -> int:
    """Exact maximum matching size by memoised branching on the lowest free vertex."""
    _check_cap(g, cap)
    adj = g.adj

    @lru_cache(maxsize=None)
    def best(avail: int) -> int:
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            nb = adj[v] & avail
            if nb == 0:
                avail ^= low
                continue
            if nb & (nb - 1) == 0:
                # a vertex with a single free neighbour can always be matched to it
                return 1 + best(avail & ~low & ~nb)
            top = best(avail & ~low)
            for u in bits(nb):
                top = max(top, 1 + best(avail & ~low & ~(1 << u)))
            return top
        return 0

    return best(g.full_mask)


# ---------------------------------------------------------------- alpha-preserving subgraphs

def alpha_minimal_reduce(g: Graph, cap: Optional[int] = None) -> tuple[int, ...]:
    """Delete vertices (smallest first) while G[S] stays connected with alpha(G[S]) = alpha(G)."""
    _check_cap(g, cap)
    if not g.is_connected():
        raise DisconnectedGraphError("alpha_minimal_reduce needs a connected graph")
    alpha = mis_size(g.adj, g.full_mask)
    keep = g.full_mask
    changed = True
    while changed:
        changed = False
        for v in bits(keep):
            rest = keep & ~(1 << v)
            if rest and is_connected_mask(g, rest) and mis_size(g.adj, rest) == alpha:
                keep = rest
                changed = True
    return tuple(bits(keep))


def is_alpha_minimal(g: Graph, vertices: Sequence[int]) -> bool:
    """Every vertex of G[vertices] is a cut vertex or its removal lowers alpha."""
    s = to_mask(vertices)
    alpha = mis_size(g.adj, s)
    for v in bits(s):
        rest = s & ~(1 << v)
        if rest and is_connected_mask(g, rest) and mis_size(g.adj, rest) == alpha:
            return False
    return True


def minimum_alpha_subgraphs(g: Graph, cap: Optional[int] = None) -> list[tuple[int, ...]]:
    """All minimum-size vertex sets S with G[S] connected and alpha(G[S]) = alpha(G), sorted.

    alpha(G[S]) = alpha(G) exactly when S contains a maximum independent set of G,
    so candidates are grown from each maximum set by adding connector vertices.
    """
    _check_cap(g, cap)
    if not g.is_connected():
        raise DisconnectedGraphError("minimum_alpha_subgraph needs a connected graph")
    mis = max_independent_set_masks(g)
    alpha = mis[0].bit_count()
    spent = 0
    for k in range(alpha, g.n + 1):
        extra = k - alpha
        spent += len(mis) * comb(g.n - alpha, extra)
        if spent > SUBSET_BUDGET:
            raise CapExceeded(f"minimum alpha-subgraph search exceeds {SUBSET_BUDGET} candidate sets")
        found = set()
        for base in mis:
            others = bits(g.full_mask & ~base)
            for combo in combinations(others, extra):
                s = base | to_mask(combo)
                if s not in found and is_connected_mask(g, s):
                    found.add(s)
        if found:
            return sorted(tuple(bits(s)) for s in found)
    raise InternalError("no connected alpha-preserving subgraph found", graph=g)


def minimum_alpha_subgraph(g: Graph, cap: Optional[int] = None) -> tuple[int, ...]:
    return minimum_alpha_subgraphs(g, cap)[0]


# ---------------------------------------------------------------- spanning trees

def tree_degrees(tree: Sequence[Edge]) -> dict[int, int]:
    deg: dict[int, int] = {}
    for u, v in tree:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    return deg


def max_degree(tree: Sequence[Edge]) -> int:
    return max(tree_degrees(tree).values(), default=0)


def is_spanning_tree(h: Graph, tree: Sequence[Edge]) -> bool:
    if len(tree) != h.n - 1:
        return False
    if any(not h.has_edge(u, v) for u, v in tree):
        return False
    return Graph(h.n, tuple(tree)).is_connected()


def is_tree(tree: Sequence[Edge]) -> bool:
    verts = sorted({x for e in tree for x in e})
    if len(tree) != len(verts) - 1:
        return False
    _, index = _relabel_tree(tree)
    return Graph(len(verts), tuple((index[u], index[v]) for u, v in tree)).is_connected()


def _relabel_tree(tree):
    verts = sorted({x for e in tree for x in e})
    return verts, {v: i for i, v in enumerate(verts)}


def spanning_trees_max_degree(h: Graph, d: int) -> Iterator[tuple[Edge, ...]]:
    """Spanning trees of h with every degree at most d, in lexicographic order of edge lists."""
    n = h.n
    if n <= 1:
        yield ()
        return
    edges = list(h.edges)
    m = len(edges)
    need_total = n - 1
    comp = list(range(n))
    deg = [0] * n
    chosen: list[Edge] = []

    def feasible(i: int) -> bool:
        # chosen edges plus every remaining usable edge must still connect h
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        pieces = n
        for a, b in chosen:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                pieces -= 1
        for a, b in edges[i:]:
            if deg[a] < d and deg[b] < d:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
                    pieces -= 1
        return pieces == 1

    def rec(i: int):
        if len(chosen) == need_total:
            yield tuple(chosen)
            return
        if m - i < need_total - len(chosen) or not feasible(i):
            return
        a, b = edges[i]
        if comp[a] != comp[b] and deg[a] < d and deg[b] < d:
            old = comp[:]
            ca, cb = comp[a], comp[b]
            for x in range(n):
                if comp[x] == cb:
                    comp[x] = ca
            deg[a] += 1
            deg[b] += 1
            chosen.append((a, b))
            yield from rec(i + 1)
            chosen.pop()
            deg[a] -= 1
            deg[b] -= 1
            comp[:] = old
        yield from rec(i + 1)

    yield from rec(0)


def min_max_degree_spanning_tree(h: Graph, exact_cap: int = EXACT_TREE_CAP) -> tuple[Edge, ...]:
    """Spanning tree of h minimising the maximum degree.

    Exact (lexicographically first optimum) up to ``exact_cap`` vertices; above
    that, a deterministic edge-swap local search.
    """
    if not h.is_connected():
        raise DisconnectedGraphError("spanning tree needs a connected graph")
    if h.n <= 1:
        return ()
    if h.n > exact_cap:
        return _local_search_tree(h)
    for d in range(1, h.n):
        first = next(spanning_trees_max_degree(h, d), None)
        if first is not None:
            return first
    raise InternalError("connected graph without spanning tree", graph=h)


def _bfs_tree(h: Graph) -> list[Edge]:
    seen = 1
    order = [0]
    tree = []
    for x in order:
        for y in h.neighbors[x]:
            if not seen >> y & 1:
                seen |= 1 << y
                order.append(y)
                tree.append(norm_edge(x, y))
    return tree


def _local_search_tree(h: Graph) -> tuple[Edge, ...]:
    tree = set(_bfs_tree(h))
    while True:
        deg = tree_degrees(tree)
        top = max(deg.values())
        improved = False
        for v in sorted(x for x, dv in deg.items() if dv == top):
            for e in sorted(tree):
                if v not in e:
                    continue
                rest = tree - {e}
                side = component_masks(Graph(h.n, tuple(rest)), (1 << h.n) - 1)
                # component containing v versus the one split off
                other = next(c for c in side if c >> (e[0] if e[1] == v else e[1]) & 1)
                for a, b in h.edges:
                    if (a, b) in tree:
                        continue
                    if (other >> a & 1) == (other >> b & 1):
                        continue
                    if deg.get(a, 0) <= top - 2 and deg.get(b, 0) <= top - 2:
                        tree = rest | {(a, b)}
                        improved = True
                        break
                if improved:
                    break
            if improved:
                break
        if not improved:
            return tuple(sorted(tree))


def pendant_vertices(tree: Sequence[Edge]) -> list[int]:
    return sorted(v for v, d in tree_degrees(tree).items() if d == 1)


def unique_max_degree(tree: Sequence[Edge], p: int) -> Optional[int]:
    """Center of a tree whose max degree exceeds (p+3)/2, else None.

    With at most p pendant vertices such a tree has exactly one vertex of
    maximum degree, and every other vertex has degree at most Delta-2; both are
    checked and a violation raises InternalError.
    """
    tree = [norm_edge(u, v) for u, v in tree]
    if not tree or not is_tree(tree):
        raise ValueError("input is not a tree with at least two vertices")
    deg = tree_degrees(tree)
    leaves = sum(1 for d in deg.values() if d == 1)
    if leaves > p:
        raise ValueError(f"tree has {leaves} pendant vertices, more than p={p}")
    top = max(deg.values())
    if 2 * top <= p + 3:
        return None
    tops = [v for v, d in deg.items() if d == top]
    second = max((d for v, d in deg.items() if v != tops[0]), default=0)
    if len(tops) != 1 or second > top - 2:
        raise InternalError(f"tree with Delta={top} > (p+3)/2 has max-degree vertices {tops}, second degree {second}")
    return tops[0]


def components_after_center_removal(h: Graph, tree: Sequence[Edge], v: int) -> list[tuple[int, ...]]:
    """Components of h - v; their number must equal the tree degree of v."""
    tree = [norm_edge(a, b) for a, b in tree]
    parts = [tuple(bits(c)) for c in component_masks(h, h.full_mask & ~(1 << v))]
    delta = tree_degrees(tree).get(v, 0)
    if len(parts) != delta:
        for part in parts:
            inside = set(part)
            hits = [e for e in tree if v in e and (e[0] in inside or e[1] in inside)]
            if len(hits) >= 2:
                raise InternalError(f"component {part} has {len(hits)} tree edges to center {v}: {hits}")
        raise InternalError(f"h - {v} has {len(parts)} components, expected {delta}")
    return parts


# ---------------------------------------------------------------- structure selection

@dataclass
class StructureReport:
    alpha: int
    mis: tuple[int, ...]
    h_vertices: tuple[int, ...]
    tree_edges: tuple[Edge, ...]
    delta: int
    center: Optional[int]
    chosen_set: tuple[int, ...]
    h_exact: bool = True
    choice3_exhaustive: bool = True
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        d = asdict(self)
        d["tree_edges"] = [list(e) for e in self.tree_edges]
        for key in ("mis", "h_vertices", "chosen_set"):
            d[key] = list(d[key])
        return d


def _overlap_choice(tree_g: Sequence[Edge], candidate_sets: list[int]) -> tuple[int, int]:
    deg = tree_degrees(tree_g)
    if not deg:
        return 0, candidate_sets[0]
    top = max(deg.values())
    tops = to_mask(v for v, d in deg.items() if d == top)
    return min(((s & tops).bit_count(), s) for s in candidate_sets)


def structure_report(g: Graph, cap: Optional[int] = None) -> StructureReport:
    """H, T and I per the three tie-break rules: |H| minimum, then Delta(T)
    minimum, then fewest members of I at maximum tree degree.

    Rule (3) only matters when Delta(T) > (alpha+3)/2; otherwise the first
    optimal (H, T) is kept and I is chosen for that tree alone.
    """
    _check_cap(g, cap)
    if not g.is_connected():
        raise DisconnectedGraphError("structure analysis needs a connected graph")
    alpha, mis = independence_number(g, cap)
    mis_masks = max_independent_set_masks(g)
    notes = []
    try:
        candidates = minimum_alpha_subgraphs(g, cap)
        h_exact = True
    except CapExceeded as exc:
        candidates = [alpha_minimal_reduce(g, cap)]
        h_exact = False
        notes.append(f"minimum H search skipped ({exc}); using an alpha-minimal H")

    # rule (2): best Delta over all minimum H
    scored = []
    for hv in candidates:
        h, _ = induced_subgraph(g, hv)
        scored.append((max_degree(min_max_degree_spanning_tree(h)) if h.n > 1 else 0, hv))
    best_delta = min(s for s, _ in scored)
    finalists = [hv for s, hv in scored if s == best_delta]
    high = 2 * best_delta > alpha + 3

    exhaustive = True
    best = None  # (score, hv, tree_g, chosen mask)
    for hv in finalists:
        h, back = induced_subgraph(g, hv)
        inside = [s for s in mis_masks if s & ~to_mask(hv) == 0]
        if h.n <= 1:
            trees = iter([()])
        elif h.n > EXACT_TREE_CAP:
            trees = iter([min_max_degree_spanning_tree(h)])
            exhaustive = False
        else:
            trees = spanning_trees_max_degree(h, best_delta)
        for count, tree in enumerate(trees):
            if count >= TREE_ENUM_LIMIT:
                exhaustive = False
                break
            tree_g = tuple(sorted(norm_edge(back[a], back[b]) for a, b in tree))
            score, chosen = _overlap_choice(tree_g, inside)
            if best is None or score < best[0]:
                best = (score, hv, tree_g, chosen)
            if not high or score == 0:
                break
        if not high or best[0] == 0:
            break

    _, hv, tree_g, chosen = best
    center = None
    if len(hv) >= 2:
        center = unique_max_degree(tree_g, p=max(alpha, len(pendant_vertices(tree_g))))
    return StructureReport(
        alpha=alpha,
        mis=mis,
        h_vertices=tuple(hv),
        tree_edges=tree_g,
        delta=max_degree(tree_g),
        center=center,
        chosen_set=tuple(bits(chosen)),
        h_exact=h_exact,
        choice3_exhaustive=exhaustive,
        notes=notes,
    )
