"""Synthetic possession simulator.

Passes arrive as a homogeneous Poisson process at ``pass_rate`` per
minute and each pass ends its chain with probability ``1 - q``. Chain
lengths are therefore geometric with mean ``1 / (1 - q)`` and chain
starts form a Poisson process at ``pass_rate * (1 - q)``, so the
long-run pace is ``pass_rate``. All passes of a chain are stamped with
the chain's start minute.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field, fields, replace
from itertools import accumulate

import numpy as np

from .passlog import MINUTE_BOUNDS, MatchLog, PassEvent, sort_events

N_ZONES = 9
DEFENSIVE_ZONES = (1, 2, 3, 4)
CENTER_ZONE = 5
OFFENSIVE_ZONES = (6, 7, 8, 9)


def _uniform_transition() -> tuple[tuple[float, ...], ...]:
    return tuple(tuple([1 / N_ZONES] * N_ZONES) for _ in range(N_ZONES))


@dataclass(frozen=True)
class SimConfig:
    seed: int = 0
    duration: tuple[int, ...] = (45, 45)
    players: int = 11
    pass_rate: float = 6.0
    continuation_prob: float = 0.75
    zone_transition: tuple[tuple[float, ...], ...] = field(default_factory=_uniform_transition)
    # None means uniform over players 1..players
    receiver_bias: tuple[float, ...] | None = None

    def __post_init__(self):
        if not 1 <= len(self.duration) <= 4:
            raise ValueError("duration must list 1 to 4 halves")
        for half, d in enumerate(self.duration, start=1):
            if not 1 <= d <= MINUTE_BOUNDS[half] + 1:
                raise ValueError(f"duration {d} of half {half} outside 1..{MINUTE_BOUNDS[half] + 1}")
        if self.players < 2:
            raise ValueError("need at least 2 players")
        if not self.pass_rate > 0:
            raise ValueError("pass_rate must be > 0")
        if not 0 <= self.continuation_prob < 1:
            raise ValueError("continuation_prob must be in [0, 1)")
        m = self.zone_transition
        if len(m) != N_ZONES or any(len(row) != N_ZONES for row in m):
            raise ValueError("zone_transition must be 9x9")
        for i, row in enumerate(m, start=1):
            if any(p < 0 for p in row) or abs(math.fsum(row) - 1) > 1e-9:
                raise ValueError(f"zone_transition row {i} is not a probability vector")
        if self.receiver_bias is not None:
            if len(self.receiver_bias) != self.players:
                raise ValueError("receiver_bias needs one weight per player")
            if any(not b > 0 for b in self.receiver_bias):
                raise ValueError("receiver weights must be positive")

    @property
    def expected_chain_length(self) -> float:
        return 1 / (1 - self.continuation_prob)


def _mixing_matrix(target: list[float], stay: float = 0.4) -> tuple[tuple[float, ...], ...]:
    """Rows ``stay * e_i + (1 - stay) * target``; stationary law is ``target``."""
    return tuple(
        tuple(stay * (i == j) + (1 - stay) * target[j] for j in range(N_ZONES))
        for i in range(N_ZONES)
    )


def _zone_mass(heavy: tuple[int, ...], light: tuple[int, ...]) -> list[float]:
    mass = [0.0] * N_ZONES
    for z in heavy:
        mass[z - 1] = 0.7 / len(heavy)
    for z in light:
        mass[z - 1] = 0.2 / len(light)
    mass[CENTER_ZONE - 1] = 0.1
    return mass


SCENARIOS = {
    # pressing opponent: short chains, slower pace, ball pinned in own half
    "disruption": dict(
        pass_rate=6.0,
        continuation_prob=0.6,
        zone_transition=_mixing_matrix(_zone_mass(DEFENSIVE_ZONES, OFFENSIVE_ZONES)),
    ),
    "domination": dict(
        pass_rate=8.0,
        continuation_prob=0.85,
        zone_transition=_mixing_matrix(_zone_mass(OFFENSIVE_ZONES, DEFENSIVE_ZONES)),
    ),
}


def scenario(name: str, seed: int = 0) -> SimConfig:
    try:
        params = SCENARIOS[name]
    except KeyError:
        raise ValueError(f"unknown scenario {name!r}; expected one of {', '.join(SCENARIOS)}") from None
    return SimConfig(seed=seed, **params)


class _Sampler:
    """Categorical draws by inverse CDF on one shared generator stream."""

    def __init__(self, rng: np.random.Generator, weights):
        self.rng = rng
        cum = list(accumulate(weights))
        self.cum = [c / cum[-1] for c in cum]

    def draw(self, exclude: int | None = None) -> int:
        # 0-based index; rejection keeps the conditional law exact
        while True:
            k = min(bisect_right(self.cum, self.rng.random()), len(self.cum) - 1)
            if k != exclude:
                return k


def simulate_with_chains(cfg: SimConfig) -> tuple[MatchLog, list[tuple[int, ...]]]:
    """Simulate a match and also return the true chains as tuples of ``seq``."""
    rng = np.random.default_rng(cfg.seed)
    bias = cfg.receiver_bias or (1.0,) * cfg.players
    players = _Sampler(rng, bias)
    zone_rows = [_Sampler(rng, row) for row in cfg.zone_transition]
    lam, q = cfg.pass_rate, cfg.continuation_prob

    events: list[PassEvent] = []
    truth: list[tuple[int, ...]] = []
    zone = CENTER_ZONE - 1
    last_receiver: int | None = None
    for half, dur in enumerate(cfg.duration, start=1):
        t = rng.exponential(1 / lam)
        while t < dur:
            length = int(rng.geometric(1 - q))
            minute = int(t)
            # a new possession never starts with the previous chain's receiver,
            # otherwise the boundary would be invisible in the log
            passer = players.draw(exclude=last_receiver)
            zone = zone_rows[zone].draw()
            chain = []
            for _ in range(length):
                receiver = players.draw(exclude=passer)
                zone_to = zone_rows[zone].draw()
                seq = len(events)
                events.append(
                    PassEvent(half, minute, passer + 1, zone + 1, receiver + 1, zone_to + 1, seq)
                )
                chain.append(seq)
                passer, zone = receiver, zone_to
            last_receiver = passer
            truth.append(tuple(chain))
            t += rng.gamma(length, 1 / lam)
    log = MatchLog(sort_events(events), match=f"simulated seed {cfg.seed}", team="sim")
    return log, truth


def simulate(cfg: SimConfig) -> MatchLog:
    return simulate_with_chains(cfg)[0]


# --- flat key=value config files -------------------------------------------


def _floats(s: str) -> tuple[float, ...]:
    return tuple(float(x) for x in s.split(",") if x.strip())


_PARSERS = {
    "seed": int,
    "duration": lambda s: tuple(int(x) for x in s.split(",") if x.strip()),
    "players": int,
    "pass_rate": float,
    "continuation_prob": float,
    "zone_transition": lambda s: tuple(_floats(r) for r in s.split(";") if r.strip()),
    "receiver_bias": _floats,
}


def parse_config(text: str) -> SimConfig:
    """Read ``key=value`` lines; an optional ``scenario`` key sets the base preset.

    Lists are comma separated; ``zone_transition`` rows are separated by ``;``.
    """
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or (key not in _PARSERS and key != "scenario"):
            raise ValueError(f"bad config line {lineno}: {raw!r}")
        values[key] = value.strip()
    base = scenario(values.pop("scenario")) if "scenario" in values else SimConfig()
    try:
        overrides = {k: _PARSERS[k](v) for k, v in values.items()}
    except ValueError as exc:
        raise ValueError(f"bad config value: {exc}") from None
    return replace(base, **overrides)


def format_config(cfg: SimConfig) -> str:
    out = []
    for f in fields(cfg):
        v = getattr(cfg, f.name)
        if v is None:
            continue
        if f.name == "zone_transition":
            v = ";".join(",".join(repr(p) for p in row) for row in v)
        elif isinstance(v, tuple):
            v = ",".join(repr(x) for x in v)
        out.append(f"{f.name}={v}")
    return "\n".join(out) + "\n"
