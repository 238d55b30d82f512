"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line in the summary."""
import random
import time
from itertools import combinations

import networkx as nx

from pcopt.analysis import (
    alpha_minimal_reduce,
    independence_number,
    is_alpha_minimal,
    max_independent_set_masks,
    min_max_degree_spanning_tree,
    minimum_alpha_subgraph,
    pendant_vertices,
    spanning_trees_max_degree,
    tree_degrees,
    unique_max_degree,
    components_after_center_removal,
)
from pcopt.constructor import (
    alpha2_construct,
    alpha3_construct,
    conjecture_probe,
    main_theorem_construct,
)
from pcopt.graph import EdgeColoring, Graph, complete_bipartite, cycle, induced_subgraph, random_connected, star, to_mask
from pcopt.oracle import batch_formula_check, exact_pc_opt, naive_pc_opt, tree_instances
from pcopt.verifier import exists_pc_path, is_properly_connected

from .conftest import from_nx, sample_by_alpha, to_nx

# Lemma 3 check: spanning trees examined per minimum H
TREES_PER_H = 2000


def verifies(g, plan):
    return is_properly_connected(plan.coloring(g)).properly_connected


def test_c1_tree_formula(criterion):
    start = time.perf_counter()
    rows = batch_formula_check("tree", tree_instances(60, 8, seed=2024))
    bad = [r for r in rows if not r.match]
    elapsed = time.perf_counter() - start
    ok = len(rows) >= 50 and not bad and elapsed < 120
    criterion("C1 tree formula", ok, f"{len(rows)} trees, {len(bad)} mismatches, {elapsed:.1f}s")
    assert ok, bad


def test_c2_complete_bipartite(criterion):
    got = {}
    for a, b in [(7, 2), (6, 3), (5, 4)]:
        start = time.perf_counter()
        got[(a, b)] = (exact_pc_opt(complete_bipartite(a, b)).value, time.perf_counter() - start)
    ok = [v for v, _ in got.values()] == [4, 4, 5] and all(t < 600 for _, t in got.values())
    detail = ", ".join(f"K{a},{b}={v} ({t:.2f}s)" for (a, b), (v, t) in got.items())
    criterion("C2 complete bipartite", ok, detail)
    assert ok


def test_c3_stars(criterion):
    values = {m: exact_pc_opt(star(m)).value for m in range(2, 7)}
    ok = all(v == 2 * m - 2 for m, v in values.items())
    criterion("C3 stars", ok, str(values))
    assert ok


def test_c4_alpha2(criterion):
    start = time.perf_counter()
    graphs = sample_by_alpha(2, 200, 4, 12, seed=4, p_lo=0.5)
    bad = []
    for g in graphs:
        p = alpha2_construct(g)
        if p.cost > 3 or not verifies(g, p):
            bad.append(g)
    c5 = alpha2_construct(cycle(5)).cost
    elapsed = time.perf_counter() - start
    ok = not bad and c5 == 3 and elapsed < 300
    criterion("C4 alpha=2 bound", ok, f"{len(graphs)} graphs, {len(bad)} violations, C5={c5}, {elapsed:.1f}s")
    assert ok


def test_c5_alpha3(criterion):
    start = time.perf_counter()
    graphs = sample_by_alpha(3, 200, 5, 12, seed=5, p_lo=0.3)
    bad, methods = [], {}
    for g in graphs:
        p = alpha3_construct(g)
        methods[p.method] = methods.get(p.method, 0) + 1
        if p.cost > 4 or not verifies(g, p):
            bad.append(g)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 600
    criterion("C5 alpha=3 bound", ok, f"{len(graphs)} graphs, {len(bad)} violations, {methods}, {elapsed:.1f}s")
    assert ok


def test_c6_main_theorem(criterion):
    start = time.perf_counter()
    graphs = []
    for a, seed in [(4, 61), (5, 62), (6, 63)]:
        graphs += sample_by_alpha(a, 34, 7, 14, seed=seed, p_lo=0.1, p_hi=0.6)
    bad, high = [], 0
    for g in graphs:
        a = independence_number(g)[0]
        p = main_theorem_construct(g)
        t = p.trace
        fine = p.cost <= (5 * a - 1) // 2 and verifies(g, p)
        if t["branch"] == "high":
            high += 1
            fine = fine and t["size_lhs"] <= t["size_rhs"]
            fine = fine and all(len(c) <= 2 * ca for c, ca in zip(t["components"], t["component_alphas"]))
        if not fine:
            bad.append(g)
    elapsed = time.perf_counter() - start
    ok = len(graphs) >= 100 and not bad and elapsed < 900
    criterion("C6 general bound", ok, f"{len(graphs)} graphs ({high} high-degree branch), {len(bad)} violations, "
                                      f"{elapsed:.1f}s")
    assert ok


# ---------------------------------------------------------------- criterion 7 helpers

def lemma1_cases():
    rng = random.Random(71)
    for _ in range(500):
        n = rng.randint(1, 14)
        yield random_connected(n, rng.uniform(0.1, 0.9), seed=rng.randrange(2**31))


def lemma3_counterexamples():
    rng = random.Random(73)
    checked, bad = 0, []
    for _ in range(150):
        g = random_connected(rng.randint(2, 9), rng.uniform(0.15, 0.8), seed=rng.randrange(2**31))
        hv = minimum_alpha_subgraph(g)
        if len(hv) < 2:
            continue
        h, back = induced_subgraph(g, hv)
        inside = [m for m in max_independent_set_masks(g) if m & ~to_mask(hv) == 0]
        for k, tree in enumerate(spanning_trees_max_degree(h, h.n - 1)):
            if k >= TREES_PER_H:
                break
            checked += 1
            leaves = to_mask(back[x] for x in pendant_vertices(tree))
            if any(leaves & ~m for m in inside):
                bad.append((g, tree))
    return checked, bad


def lemma4_counterexamples():
    checked, bad = 0, []
    for n in range(2, 11):
        for t in nx.nonisomorphic_trees(n):
            tree = from_nx(t).edges
            deg = tree_degrees(tree)
            leaves = sum(1 for d in deg.values() if d == 1)
            for p in range(leaves, n + 1):
                top = sorted(deg.values(), reverse=True)
                d = top[0]
                if 2 * d <= p + 3:
                    continue
                checked += 1
                second = top[1] if len(top) > 1 else 0
                if second > d - 2 or unique_max_degree(tree, p) is None:
                    bad.append((tree, p))
    return checked, bad


def hub_graph(rng):
    """Spider with random leg lengths plus random chords that stay inside one leg."""
    legs = [rng.randint(1, 3) for _ in range(rng.randint(3, 5))]
    edges, nxt, groups = [], 1, []
    for length in legs:
        prev, group = 0, []
        for _ in range(length):
            edges.append((prev, nxt))
            group.append(nxt)
            prev, nxt = nxt, nxt + 1
        groups.append(group)
    for group in groups:
        for u, v in combinations(group, 2):
            if abs(u - v) > 1 and rng.random() < 0.5:
                edges.append((u, v))
    return Graph(nxt, tuple(edges))


def lemma5_counterexamples():
    rng = random.Random(75)
    cases = [hub_graph(rng) for _ in range(150)]
    cases += [random_connected(rng.randint(4, 10), rng.uniform(0.1, 0.5), seed=rng.randrange(2**31))
              for _ in range(300)]
    checked, bad = 0, []
    for h in cases:
        tree = min_max_degree_spanning_tree(h)
        deg = sorted(tree_degrees(tree).items(), key=lambda kv: -kv[1])
        if len(deg) < 2 or deg[1][1] > deg[0][1] - 2:
            continue
        checked += 1
        v, d = deg[0]
        parts = [c for c in nx.connected_components(to_nx(h).subgraph(set(range(h.n)) - {v}))]
        if len(parts) != d or len(components_after_center_removal(h, tree, v)) != d:
            bad.append(h)
    return checked, bad


def test_c7_lemma_suite(criterion):
    start = time.perf_counter()
    l1_bad = 0
    for g in lemma1_cases():
        s = alpha_minimal_reduce(g)
        a = independence_number(g)[0]
        if len(s) > 2 * a - 1 or not is_alpha_minimal(g, s):
            l1_bad += 1
    l3_checked, l3_bad = lemma3_counterexamples()
    l4_checked, l4_bad = lemma4_counterexamples()
    l5_checked, l5_bad = lemma5_counterexamples()
    elapsed = time.perf_counter() - start
    ok = not (l1_bad or l3_bad or l4_bad or l5_bad) and min(l3_checked, l4_checked, l5_checked) > 0
    criterion("C7 lemma suite", ok,
              f"L1 500 graphs/{l1_bad} bad, L3 {l3_checked} trees/{len(l3_bad)} bad, "
              f"L4 {l4_checked} cases/{len(l4_bad)} bad, L5 {l5_checked} cases/{len(l5_bad)} bad, {elapsed:.1f}s")
    assert ok


def test_c8_verifier_equivalence(criterion):
    rng = random.Random(8)
    cases = disagreements = 0
    while cases < 1000:
        n = rng.randint(2, 9)
        g = random_connected(n, rng.uniform(0.2, 0.6), seed=rng.randrange(2**31))
        k = rng.randint(1, 4)
        coloring = EdgeColoring(g, {e: rng.randint(1, k) for e in g.edges})
        G = to_nx(g)
        cases += 1
        for u, v in combinations(range(n), 2):
            brute = False
            for p in nx.all_simple_paths(G, u, v):
                cols = [coloring.color(a, b) for a, b in zip(p, p[1:])]
                if all(c != d for c, d in zip(cols, cols[1:])):
                    brute = True
                    break
            if (exists_pc_path(coloring, u, v) is not None) != brute:
                disagreements += 1
    ok = disagreements == 0
    criterion("C8 verifier equivalence", ok, f"{cases} colorings, {disagreements} disagreements")
    assert ok


def test_c9_oracle_self_consistency(criterion):
    graphs = [from_nx(G) for G in nx.graph_atlas_g()[1:] if G.number_of_nodes() <= 6 and nx.is_connected(G)]
    bad = []
    for g in graphs:
        res = exact_pc_opt(g)
        is_complete = g.m == g.n * (g.n - 1) // 2
        if res.value != naive_pc_opt(g, res.value) or res.value == 1 or (res.value == 0) != is_complete:
            bad.append(g)
    ok = not bad
    criterion("C9 oracle self-consistency", ok, f"{len(graphs)} connected graphs, {len(bad)} disagreements")
    assert ok


def test_c10_conjecture_probe(criterion):
    graphs = sample_by_alpha(3, 60, 5, 11, seed=10, p_lo=0.3)
    for a, seed in [(4, 101), (5, 102)]:
        graphs += [g for g in sample_by_alpha(a, 30, 6, 10, seed=seed, p_lo=0.1, p_hi=0.5) if g.m <= 14]
    graphs += [star(m) for m in range(3, 7)] + [cycle(6), cycle(7)]
    counts = {"holds": 0, "violated": 0, "inconclusive": 0}
    findings = []
    for g in graphs:
        # a budget-4 search is cheap at any size, so alpha = 3 graphs are never skipped
        r = conjecture_probe(g, max_edges=g.m if independence_number(g)[0] == 3 else 25)
        counts[r.status] += 1
        if r.status == "violated":
            findings.append((g, r.pc_opt))
    # informational only: a violation would be a finding about the open bound, not a build failure
    criterion("C10 conjecture probe (informational)", True, f"{len(graphs)} graphs, {counts}")
    print(f"conjecture probe: {counts}; violations: {findings}")
