"""Recoloring plans and their JSON form."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .graph import Edge, EdgeColoring, Graph, norm_edge


@dataclass
class ColoringPlan:
    """Edges moved off color 1, with their new colors 2..palette+1."""

    recolored: list[tuple[int, int, int]]
    method: str
    trace: Optional[dict] = None
    notes: list[str] = field(default_factory=list)

    @property
    def palette(self) -> int:
        return len({c for _, _, c in self.recolored})

    @property
    def cost(self) -> int:
        return len(self.recolored) + self.palette

    @classmethod
    def from_colors(cls, g: Graph, colors: Mapping[Edge, int], method: str, trace=None) -> "ColoringPlan":
        """Build a plan, renaming new colors to 2, 3, ... by first use in edge order."""
        rename: dict[int, int] = {}
        recolored = []
        for e in sorted(norm_edge(*e) for e in colors):
            if e not in g.edge_set:
                raise ValueError(f"{e} is not an edge of the graph")
            c = colors.get(e, colors.get((e[1], e[0])))
            if c == 1:
                continue
            if c not in rename:
                rename[c] = len(rename) + 2
            recolored.append((e[0], e[1], rename[c]))
        return cls(recolored, method, trace)

    def coloring(self, g: Graph) -> EdgeColoring:
        return EdgeColoring(g, {(u, v): c for u, v, c in self.recolored})

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "recolored": [{"u": u, "v": v, "color": c} for u, v, c in self.recolored],
            "palette": self.palette,
            "cost": self.cost,
            "trace": self.trace,
        }

    @classmethod
    def from_json(cls, data: dict, g: Optional[Graph] = None) -> "ColoringPlan":
        """Parse and validate a plan document; with ``g``, also check the edges exist."""
        try:
            rows = [(int(r["u"]), int(r["v"]), int(r["color"])) for r in data["recolored"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed plan: {exc}") from None
        seen = set()
        for u, v, c in rows:
            e = norm_edge(u, v)
            if e in seen:
                raise ValueError(f"edge {e} recolored twice")
            seen.add(e)
            if c < 2:
                raise ValueError(f"new colors start at 2, got {c} on {e}")
            if g is not None and e not in g.edge_set:
                raise ValueError(f"{e} is not an edge of the graph")
        used = sorted({c for _, _, c in rows})
        if used != list(range(2, len(used) + 2)):
            raise ValueError(f"new colors must be contiguous from 2, got {used}")
        plan = cls([(*norm_edge(u, v), c) for u, v, c in rows], str(data.get("method", "external")), data.get("trace"))
        if "palette" in data and data["palette"] != plan.palette:
            raise ValueError(f"palette {data['palette']} disagrees with {plan.palette} colors used")
        if "cost" in data and data["cost"] != plan.cost:
            raise ValueError(f"cost {data['cost']} disagrees with computed {plan.cost}")
        return plan
