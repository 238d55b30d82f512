"""Exact pc_opt by exhaustive search over recolorings, plus closed-form cross-checks.

Search-space lemmas used by :func:`exact_pc_opt`:

* q counts the distinct new colors actually present, so every new color is
  carried by at least one recolored edge and p >= q; splits with p < q are empty.
* A cost of 1 would need p = 1, q = 0 or p = 0, q = 1, neither of which is a
  coloring, so total cost 1 is skipped.
* Renaming new colors preserves proper connectivity and cost, so each
  assignment of q colors to p edges is visited once, as a restricted-growth
  string (first occurrence of color k+1 comes after color k).

The naive cross-check :func:`naive_pc_opt` uses none of these.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, Optional

from .analysis import independence_number, matching_number, max_degree
from .errors import DisconnectedGraphError
from .graph import Graph, complete_bipartite, random_tree, star
from .plan import ColoringPlan
from .verifier import ConnectivityChecker


def alpha_bound(alpha: int) -> int:
    """Proven upper bound on pc_opt for a connected graph of the given independence number."""
    if alpha <= 1:
        return 0
    if alpha == 2:
        return 3
    if alpha == 3:
        return 4
    return (5 * alpha - 1) // 2


@dataclass
class SolveResult:
    status: str  # "exact" | "budget_exceeded"
    value: Optional[int]
    plan: Optional[ColoringPlan]
    explored: int
    budget: int

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "value": self.value,
            "plan": self.plan.to_json() if self.plan else None,
            "explored": self.explored,
            "budget": self.budget,
        }


def restricted_growth(length: int, blocks: int) -> Iterator[tuple[int, ...]]:
    """Restricted-growth strings over 0..blocks-1 using every symbol, in lexicographic order."""
    seq = [0] * length

    def rec(i: int, used: int):
        if length - i < blocks - used:
            return
        if i == length:
            if used == blocks:
                yield tuple(seq)
            return
        for s in range(min(used + 1, blocks)):
            seq[i] = s
            yield from rec(i + 1, max(used, s + 1))

    if length == 0:
        if blocks == 0:
            yield ()
        return
    yield from rec(0, 0)


def _splits(t: int, m: int):
    for q in range(1, t // 2 + 1):
        p = t - q
        if p <= m:
            yield p, q


def exact_pc_opt(g: Graph, budget: Optional[int] = None, min_cost: int = 0) -> SolveResult:
    """Smallest p + q (up to ``budget``) that makes g properly connected.

    ``min_cost`` skips totals already known to fail; the result is then the
    smallest working total in [min_cost, budget].
    """
    if not g.is_connected():
        raise DisconnectedGraphError("pc_opt is defined for connected graphs")
    if budget is None:
        budget = alpha_bound(independence_number(g)[0])
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    edges = g.edges
    checker = ConnectivityChecker(g)
    explored = 0
    if min_cost <= 0:
        explored += 1
        if checker.check():
            return SolveResult("exact", 0, ColoringPlan.from_colors(g, {}, "exact"), explored, budget)
    for t in range(max(2, min_cost), budget + 1):
        for p, q in _splits(t, len(edges)):
            strings = list(restricted_growth(p, q))
            for idx in combinations(range(len(edges)), p):
                chosen = [edges[i] for i in idx]
                for rgs in strings:
                    explored += 1
                    checker.set_colors(chosen, [c + 2 for c in rgs])
                    ok = checker.check()
                    checker.reset(chosen)
                    if ok:
                        colors = {e: c + 2 for e, c in zip(chosen, rgs)}
                        return SolveResult("exact", t, ColoringPlan.from_colors(g, colors, "exact"), explored, budget)
    return SolveResult("budget_exceeded", None, None, explored, budget)


def naive_pc_opt(g: Graph, budget: int) -> Optional[int]:
    """Reference search: every coloring with colors in 2..t+1 on at most t edges, no symmetry reduction."""
    checker = ConnectivityChecker(g)
    if checker.check():
        return 0
    edges = g.edges
    for t in range(1, budget + 1):
        for p in range(1, min(t, len(edges)) + 1):
            for idx in combinations(range(len(edges)), p):
                chosen = [edges[i] for i in idx]
                for cols in product(range(2, t + 2), repeat=p):
                    if p + len(set(cols)) != t:
                        continue
                    checker.set_colors(chosen, cols)
                    ok = checker.check()
                    checker.reset(chosen)
                    if ok:
                        return t
    return None


# ---------------------------------------------------------------- closed forms

def tree_formula(t: Graph) -> int:
    """n - 2 - (matching number) + (max degree), valid for trees with n >= 2."""
    return t.n - 2 - matching_number(t) + max_degree(t.edges)


def star_formula(m: int) -> int:
    return 2 * m - 2


def complete_bipartite_formula(a: int, b: int) -> Optional[int]:
    """Known value for K_{a,b} when max >= min >= 2 and a + b >= 9, else None."""
    big, small = max(a, b), min(a, b)
    if small < 2 or big + small < 9:
        return None
    return 4 if small in (2, 3) else 5


@dataclass
class FormulaRow:
    instance: str
    formula: int
    oracle: Optional[int]

    @property
    def match(self) -> bool:
        return self.oracle == self.formula


def batch_formula_check(family: str, instances) -> list[FormulaRow]:
    """Compare exact values with the closed forms.

    ``instances`` is a list of n (tree, paired with a seed as (n, seed)),
    m (star), or (a, b) (complete_bipartite).
    """
    rows = []
    for inst in instances:
        if family == "tree":
            n, seed = inst
            g = random_tree(n, seed)
            name, formula = f"random_tree({n},seed={seed})", tree_formula(g)
        elif family == "star":
            g = star(inst)
            name, formula = f"star({inst})", star_formula(inst)
        elif family == "complete_bipartite":
            a, b = inst
            formula = complete_bipartite_formula(a, b)
            if formula is None:
                continue
            g = complete_bipartite(a, b)
            name = f"complete_bipartite({a},{b})"
        else:
            raise ValueError(f"no closed form for family {family!r}")
        res = exact_pc_opt(g, budget=formula)
        rows.append(FormulaRow(name, formula, res.value))
    return rows


def tree_instances(count: int, max_n: int, seed: int, min_n: int = 2) -> list[tuple[int, int]]:
    rng = random.Random(seed)
    return [(rng.randint(min_n, max_n), rng.randrange(2**31)) for _ in range(count)]
