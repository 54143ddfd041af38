"""Directed pass graphs over virtual players, one per window."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

from .passlog import DEFAULT_SCHEME, PassEvent, Roster, VirtualPlayer, ZoneScheme
from .timeline import Window


@dataclass(frozen=True)
class WindowGraph:
    """Weighted digraph; edge weight is the number of passes u -> v.

    Nodes are whatever keys the edges use: :class:`VirtualPlayer` for the
    zone-resolved graph, plain squad numbers after :func:`collapse_zones`.
    Only nodes touching at least one edge exist.
    """

    edges: Mapping[tuple[Hashable, Hashable], int]
    window: Window | None = None
    nodes: frozenset = field(init=False)

    def __post_init__(self):
        for (u, v), w in self.edges.items():
            if u == v:
                raise ValueError(f"self-loop on {u}")
            if w < 1:
                raise ValueError(f"edge {u}->{v} has non-positive weight {w}")
        nodes = frozenset(n for edge in self.edges for n in edge)
        object.__setattr__(self, "nodes", nodes)

    @classmethod
    def from_edges(
        cls, edges: Iterable[tuple[Hashable, Hashable]], window: Window | None = None
    ) -> WindowGraph:
        """Build from an edge list; repeated pairs accumulate weight."""
        return cls(dict(Counter(edges)), window)

    @property
    def total_weight(self) -> int:
        return sum(self.edges.values())

    def __len__(self) -> int:
        return len(self.nodes)

    def merge(self, other: WindowGraph) -> WindowGraph:
        """Weight-sum union of two graphs."""
        merged = Counter(self.edges)
        merged.update(other.edges)
        return WindowGraph(dict(merged))


def build_graph(events: Iterable[PassEvent], window: Window | None = None) -> WindowGraph:
    return WindowGraph.from_edges(((e.source, e.target) for e in events), window)


def undirected_projection(g: WindowGraph) -> dict[Hashable, set]:
    """Simple undirected adjacency: {u, v} present iff u->v or v->u."""
    adj: dict[Hashable, set] = {n: set() for n in g.nodes}
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def collapse_zones(g: WindowGraph) -> WindowGraph:
    """Aggregate virtual players into their squad numbers."""
    merged: Counter = Counter()
    for (u, v), w in g.edges.items():
        merged[(u.player, v.player)] += w
    return WindowGraph(dict(merged), g.window)


def _label(node, roster: Roster | None, scheme: ZoneScheme) -> str:
    if isinstance(node, VirtualPlayer):
        player, zone = node.player, node.zone
    else:
        player, zone = node, None
    name = roster.name(player) if roster is not None else None
    who = name if name is not None else str(player)
    if zone is None:
        return who
    return f"{who}@{scheme.label(zone)}"


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(
    g: WindowGraph, roster: Roster | None = None, scheme: ZoneScheme = DEFAULT_SCHEME
) -> str:
    lines = ["digraph {"]
    for (u, v), w in sorted(g.edges.items()):
        src, dst = _label(u, roster, scheme), _label(v, roster, scheme)
        lines.append(f"  {_quote(src)} -> {_quote(dst)} [weight={w}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _node_json(node) -> dict:
    if isinstance(node, VirtualPlayer):
        return {"player": node.player, "zone": node.zone}
    return {"player": node}


def to_json(g: WindowGraph) -> dict:
    """Adjacency dump: sorted node list and weighted edge list."""
    out: dict = {}
    if g.window is not None:
        out["window"] = {"start": g.window.start, "end": g.window.end}
    out["nodes"] = [_node_json(n) for n in sorted(g.nodes)]
    out["edges"] = [
        {"source": _node_json(u), "target": _node_json(v), "weight": w}
        for (u, v), w in sorted(g.edges.items())
    ]
    return out


def adjacency_lists(g: WindowGraph) -> tuple[dict, dict]:
    """Out- and in-neighbour weight maps keyed by node."""
    succ: dict = defaultdict(dict)
    pred: dict = defaultdict(dict)
    for (u, v), w in g.edges.items():
        succ[u][v] = w
        pred[v][u] = w
    return succ, pred
