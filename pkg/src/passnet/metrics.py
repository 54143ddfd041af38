"""Per-window metrics: pace, pass chains, clustering, density, centrality."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .netgraph import WindowGraph, adjacency_lists, build_graph, undirected_projection
from .passlog import MatchLog, PassEvent
from .timeline import PeriodGroup, Window, assign, group_events, windows

METRICS = ("pace", "chains", "clustering", "density")


@dataclass(frozen=True)
class PassChain:
    """Maximal run of passes where each receiver makes the next pass."""

    events: tuple[PassEvent, ...]

    @property
    def length(self) -> int:
        return len(self.events)

    @property
    def start(self) -> int:
        return self.events[0].global_minute

    @property
    def half(self) -> int:
        return self.events[0].half


def _links(prev: PassEvent, nxt: PassEvent, gap_threshold: int) -> bool:
    return (
        prev.receiver == nxt.passer
        and prev.half == nxt.half
        and 0 <= nxt.minute - prev.minute <= gap_threshold
    )


def extract_chains(log: MatchLog | Sequence[PassEvent], gap_threshold: int = 1) -> list[PassChain]:
    """Split the sorted event sequence into greedy maximal chains."""
    events = log.events if isinstance(log, MatchLog) else log
    chains: list[PassChain] = []
    current: list[PassEvent] = []
    for e in events:
        if current and not _links(current[-1], e, gap_threshold):
            chains.append(PassChain(tuple(current)))
            current = []
        current.append(e)
    if current:
        chains.append(PassChain(tuple(current)))
    return chains


def _in_window(chain: PassChain, w: Window) -> bool:
    return w.contains(chain.events[0])


def avg_chain_length(chains: Sequence[PassChain], w: Window) -> tuple[float, float, int]:
    """Mean length, standard error of the mean and count of chains born in ``w``.

    The SEM uses the n-1 sample standard deviation; it is 0 for a single
    chain and everything is 0 for an empty window.
    """
    lengths = [c.length for c in chains if _in_window(c, w)]
    n = len(lengths)
    if n == 0:
        return 0.0, 0.0, 0
    mean = math.fsum(lengths) / n
    if n == 1:
        return mean, 0.0, 1
    var = math.fsum((x - mean) ** 2 for x in lengths) / (n - 1)
    return mean, math.sqrt(var / n), n


def passes_per_minute(events: Sequence[PassEvent], w: Window) -> float:
    return len(events) / w.length


def _local_clustering(adj: dict) -> dict:
    """Local clustering for every node of degree >= 2."""
    out = {}
    for v, nbrs in adj.items():
        k = len(nbrs)
        if k < 2:
            continue
        tri = sum(1 for a, b in combinations(nbrs, 2) if b in adj[a])
        out[v] = tri / (k * (k - 1) / 2)
    return out


def clustering_rate(g: WindowGraph, include_deg1: bool = False) -> float:
    """Mean local clustering on the undirected projection.

    Nodes with fewer than two neighbours are left out of the mean unless
    ``include_deg1`` is set, in which case they count as zero.
    """
    adj = undirected_projection(g)
    local = _local_clustering(adj)
    denom = len(adj) if include_deg1 else len(local)
    if denom == 0:
        return 0.0
    return math.fsum(local.values()) / denom


def global_clustering(g: WindowGraph) -> float:
    """Transitivity: 3 x triangles / connected triples on the projection."""
    adj = undirected_projection(g)
    closed = triples = 0
    for v, nbrs in adj.items():
        k = len(nbrs)
        triples += k * (k - 1) // 2
        closed += sum(1 for a, b in combinations(nbrs, 2) if b in adj[a])
    return closed / triples if triples else 0.0


def density(g: WindowGraph, node_space: int | None = None) -> float:
    """Directed edge density over active nodes, or over ``node_space`` nodes."""
    n = len(g.nodes) if node_space is None else node_space
    if n <= 1:
        return 0.0
    return len(g.edges) / (n * (n - 1))


@dataclass(frozen=True)
class CentralityRow:
    player: int
    zone: int
    in_strength: int
    out_strength: int
    in_degree: int
    out_degree: int

    @property
    def strength(self) -> int:
        return self.in_strength + self.out_strength


@dataclass(frozen=True)
class CentralityTable:
    rows: tuple[CentralityRow, ...]
    scope: Window | PeriodGroup | str | None = None

    def __len__(self) -> int:
        return len(self.rows)

    def top(self, n: int = 1, key: str = "out_strength") -> list[CentralityRow]:
        return sorted(self.rows, key=lambda r: (-getattr(r, key), r.player, r.zone))[:n]


def centrality(g: WindowGraph, scope=None) -> CentralityTable:
    """Degree and strength per virtual player.

    Rows are ordered by zone, then by total strength descending, then by
    squad number.
    """
    succ, pred = adjacency_lists(g)
    rows = [
        CentralityRow(
            player=n.player,
            zone=n.zone,
            in_strength=sum(pred[n].values()),
            out_strength=sum(succ[n].values()),
            in_degree=len(pred[n]),
            out_degree=len(succ[n]),
        )
        for n in g.nodes
    ]
    rows.sort(key=lambda r: (r.zone, -r.strength, r.player))
    return CentralityTable(tuple(rows), scope if scope is not None else g.window)


@dataclass(frozen=True)
class SeriesPoint:
    window_end: int
    value: float
    sem: float | None = None
    n: int | None = None


@dataclass(frozen=True)
class MetricSeries:
    metric: str
    group: PeriodGroup
    points: tuple[SeriesPoint, ...]

    def __len__(self) -> int:
        return len(self.points)

    @property
    def values(self) -> list[float]:
        return [p.value for p in self.points]


@dataclass(frozen=True)
class MetricOptions:
    """Knobs for the conventions left open by the source analysis."""

    gap_threshold: int = 1
    clustering_include_deg1: bool = False
    clustering_global: bool = False
    # None: density over active nodes; an int: over that many virtual players
    density_node_space: int | None = None


def series(
    log: MatchLog,
    group: PeriodGroup,
    metric: str,
    length: int = 15,
    step: int = 1,
    options: MetricOptions = MetricOptions(),
) -> MetricSeries:
    """Evaluate ``metric`` on every window of ``group``, keyed by window end."""
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {', '.join(METRICS)}")
    events = group_events(log.events, group)
    chains = extract_chains(events, options.gap_threshold) if metric == "chains" else []
    points = []
    for w in windows(events, group, length, step):
        if metric == "chains":
            mean, sem, n = avg_chain_length(chains, w)
            points.append(SeriesPoint(w.end, mean, sem, n))
            continue
        in_w = assign(events, w)
        if metric == "pace":
            value = passes_per_minute(in_w, w)
        else:
            g = build_graph(in_w, w)
            if metric == "density":
                value = density(g, options.density_node_space)
            elif options.clustering_global:
                value = global_clustering(g)
            else:
                value = clustering_rate(g, options.clustering_include_deg1)
        points.append(SeriesPoint(w.end, value))
    return MetricSeries(metric, group, tuple(points))
