"""Per-run tick loop: source phases, peer exchange, metrics, RNG discipline.

One tick applies, in order: the media message to televiewers, the expert
message to wise agents, then one peer-exchange pass over the graph. Peer
exchange activates every undirected edge exactly once per tick in an
rng-shuffled order; each activation reads both endpoints at that moment
(values already updated earlier in the same tick are visible — the
asynchronous regime) and moves both toward each other wherever the
per-dimension guard passes.

The per-tick shuffle draws exactly one ``permutation`` from the state's
shuffle generator over the activation list (edges in ascending order);
tests and replays rely on that contract.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .agents import EXPERT_MODES, AgentState, Role, SourceMessage, expert_step, media_step
from .network import Graph
from .opinion import UpdateParams

EDGE_ACTIVATION_MODES = ("once", "per_direction")
UPDATE_READ_MODES = ("live", "snapshot")


@dataclass
class TickMetrics:
    """Population statistics after a tick: means and stds of both dimensions."""

    tick: int
    mean_welfare: float
    mean_security: float
    std_welfare: float
    std_security: float


@dataclass
class SimState:
    """Mutable state of one run; confined to a single execution context."""

    graph: Graph
    agents: list[AgentState]
    params: UpdateParams
    media: SourceMessage
    expert: SourceMessage
    shuffle_rng: np.random.Generator
    expert_mode: str = "converge"
    tick: int = 0
    edge_activation: str = "once"
    update_reads: str = "live"

    def __post_init__(self) -> None:
        if len(self.agents) != self.graph.n:
            raise ValueError(
                f"{len(self.agents)} agents for a graph with n={self.graph.n}"
            )
        if self.expert_mode not in EXPERT_MODES:
            raise ValueError(f"unknown expert_mode {self.expert_mode!r}")
        if self.edge_activation not in EDGE_ACTIVATION_MODES:
            raise ValueError(f"unknown edge_activation {self.edge_activation!r}")
        if self.update_reads not in UPDATE_READ_MODES:
            raise ValueError(f"unknown update_reads {self.update_reads!r}")


def compute_metrics(agents: list[AgentState], tick: int) -> TickMetrics:
    """Means and population standard deviations over all agents."""
    welfare = np.array([a.opinions.welfare for a in agents])
    security = np.array([a.opinions.security for a in agents])
    return TickMetrics(
        tick=tick,
        mean_welfare=float(welfare.mean()),
        mean_security=float(security.mean()),
        std_welfare=float(welfare.std()),
        std_security=float(security.std()),
    )


def peer_exchange_phase(state: SimState) -> None:
    """Fire every edge activation once, in shuffled order, with symmetric updates.

    'once' activates each undirected edge once per tick; 'per_direction'
    lists every edge twice, matching one activation per directed adjacency.
    'live' reads endpoint values at activation time; 'snapshot' reads the
    values frozen at phase start (writes still land immediately, so on
    repeated activations of a node the last write wins).
    """
    activations = state.graph.edges
    if state.edge_activation == "per_direction":
        activations = activations + activations
    order = state.shuffle_rng.permutation(len(activations))

    agents = state.agents
    t = state.params.tolerance
    m = state.params.convergence
    snapshot = None
    if state.update_reads == "snapshot":
        snapshot = [(a.opinions.welfare, a.opinions.security) for a in agents]

    for index in order:
        u, v = activations[index]
        pu = agents[u].opinions
        pv = agents[v].opinions
        if snapshot is None:
            xw, xs = pu.welfare, pu.security
            yw, ys = pv.welfare, pv.security
        else:
            xw, xs = snapshot[u]
            yw, ys = snapshot[v]
        if abs(xw - yw) <= t:
            pu.welfare = xw + m * (yw - xw)
            pv.welfare = yw + m * (xw - yw)
        if abs(xs - ys) <= t:
            pu.security = xs + m * (ys - xs)
            pv.security = ys + m * (xs - ys)


def tick(state: SimState) -> TickMetrics:
    """Advance one tick: media, then experts, then peer exchange; return metrics."""
    media_step(state.agents, state.media, state.params)
    expert_step(state.agents, state.expert, state.params.convergence, state.expert_mode)
    peer_exchange_phase(state)
    state.tick += 1
    return compute_metrics(state.agents, state.tick)


def run(
    state: SimState,
    max_ticks: int = 100,
    convergence_eps: float = 1e-4,
    patience: int = 10,
) -> list[TickMetrics]:
    """Iterate ticks until the cap or until both means settle.

    Returns the full metric series including the tick-0 snapshot taken
    before any update. The run stops early once both population means have
    moved less than ``convergence_eps`` for ``patience`` consecutive ticks.
    """
    if max_ticks < 1:
        raise ValueError(f"max_ticks must be >= 1, got {max_ticks}")
    if convergence_eps < 0:
        raise ValueError(f"convergence_eps must be >= 0, got {convergence_eps}")
    if patience < 1:
        raise ValueError(f"patience must be >= 1, got {patience}")

    series = [compute_metrics(state.agents, state.tick)]
    quiet_ticks = 0
    for _ in range(max_ticks):
        previous = series[-1]
        current = tick(state)
        series.append(current)
        moved_w = abs(current.mean_welfare - previous.mean_welfare)
        moved_s = abs(current.mean_security - previous.mean_security)
        if moved_w < convergence_eps and moved_s < convergence_eps:
            quiet_ticks += 1
            if quiet_ticks >= patience:
                break
        else:
            quiet_ticks = 0
    return series
