"""Temporal pass-network analysis over (player, zone) virtual players."""

from .metrics import (
    CentralityTable,
    MetricOptions,
    MetricSeries,
    PassChain,
    avg_chain_length,
    centrality,
    clustering_rate,
    density,
    extract_chains,
    global_clustering,
    passes_per_minute,
    series,
)
from .netgraph import WindowGraph, build_graph, collapse_zones, export_dot, undirected_projection
from .passlog import (
    DEFAULT_SCHEME,
    MatchLog,
    ParseError,
    PassEvent,
    Roster,
    VirtualPlayer,
    ZoneScheme,
    format_log,
    parse_log,
    parse_roster,
    validate,
)
from .synth import SimConfig, scenario, simulate, simulate_with_chains
from .timeline import PeriodGroup, Window, assign, to_global, windows

__version__ = "0.1.0"
