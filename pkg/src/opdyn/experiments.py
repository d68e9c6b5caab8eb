"""Scenario grids, multi-seed batch execution, aggregation, threshold analysis.

Scenario battery 1 sweeps the televiewer/wise-agent split over a 100-agent
population in steps of 10 (11 rows, no white zone). Battery 2 fixes a
30-agent white zone and sweeps the remaining 70 agents the same way
(8 rows). Every scenario runs once per seed; aggregates are across-seed
statistics of the per-run population means.

RNG discipline: each run derives four sub-streams from its root seed, in
this order — 1: network, 2: initial opinions, 3: role assignment,
4: per-tick shuffles — so any component can be held fixed independently.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .agents import (
    EXPERT_MESSAGE,
    MEDIA_MESSAGE,
    AgentState,
    PopulationConfig,
    SourceMessage,
    assign_roles,
    init_opinions,
)
from .network import Graph, NetworkConfig, generate_scale_free
from .simulation import (
    EDGE_ACTIVATION_MODES,
    UPDATE_READ_MODES,
    SimState,
    TickMetrics,
    run,
)

DEFAULT_SEEDS: tuple[int, ...] = tuple(range(10))
DEFAULT_TOLERANCES: tuple[float, ...] = (0.2, 0.5, 0.8)

# Grid steps of the two scenario batteries (televiewer counts, n=100).
SCENARIO1_TV_COUNTS: tuple[int, ...] = tuple(range(0, 101, 10))
SCENARIO2_TV_COUNTS: tuple[int, ...] = tuple(range(0, 71, 10))
SCENARIO2_WHITE_COUNT = 30


class BatchError(RuntimeError):
    """A run inside a batch failed; carries the offending scenario and seed."""


@dataclass(frozen=True)
class ScenarioConfig:
    """One scenario: population, topology, sources, run controls, seeds."""

    population: PopulationConfig
    network: NetworkConfig
    media: SourceMessage = MEDIA_MESSAGE
    expert: SourceMessage = EXPERT_MESSAGE
    max_ticks: int = 100
    convergence_eps: float = 1e-4
    patience: int = 10
    seeds: tuple[int, ...] = DEFAULT_SEEDS
    edge_activation: str = "once"
    update_reads: str = "live"
    fixed_network: bool = False

    def __post_init__(self) -> None:
        if self.population.n != self.network.n:
            raise ValueError(
                f"population n={self.population.n} != network n={self.network.n}"
            )
        if not self.seeds:
            raise ValueError("seeds must be non-empty")
        if self.max_ticks < 1:
            raise ValueError(f"max_ticks must be >= 1, got {self.max_ticks}")
        if self.convergence_eps < 0:
            raise ValueError(f"convergence_eps must be >= 0, got {self.convergence_eps}")
        if self.patience < 1:
            raise ValueError(f"patience must be >= 1, got {self.patience}")
        if self.edge_activation not in EDGE_ACTIVATION_MODES:
            raise ValueError(f"unknown edge_activation {self.edge_activation!r}")
        if self.update_reads not in UPDATE_READ_MODES:
            raise ValueError(f"unknown update_reads {self.update_reads!r}")

    @property
    def scenario_id(self) -> str:
        p = self.population
        return (
            f"n{p.n}_tv{p.tv_count}_wa{p.wa_count}_wz{p.white_count}"
            f"_tol{p.tolerance:g}_m{p.convergence:g}"
        )

    def pct(self, count: int) -> int:
        """A role count as a whole-number percentage of the population."""
        return round(100 * count / self.population.n)


@dataclass(frozen=True)
class RunResult:
    """Metric series of one (scenario, seed) run; ``final`` is the last row."""

    scenario_id: str
    seed: int
    series: tuple[TickMetrics, ...]
    final: TickMetrics


@dataclass(frozen=True)
class AggregateResult:
    """Across-seed statistics of the per-run population means, per tick."""

    config: ScenarioConfig
    n_runs: int
    ticks: tuple[int, ...]
    mean_welfare: tuple[float, ...]
    std_welfare: tuple[float, ...]
    mean_security: tuple[float, ...]
    std_security: tuple[float, ...]

    @property
    def scenario_id(self) -> str:
        return self.config.scenario_id

    @property
    def final_mean_welfare(self) -> float:
        return self.mean_welfare[-1]

    @property
    def final_mean_security(self) -> float:
        return self.mean_security[-1]

    @property
    def inverted(self) -> bool:
        """True when the final aggregate ranks welfare above security."""
        return self.final_mean_welfare > self.final_mean_security


# ======================================================================
# Single runs and batches
# ======================================================================


def build_state(config: ScenarioConfig, seed: int) -> SimState:
    """Assemble the initial simulation state for one (scenario, seed) pair."""
    net_stream, opinion_stream, role_stream, shuffle_stream = np.random.SeedSequence(
        seed
    ).spawn(4)

    if config.fixed_network:
        net_config = config.network
    else:
        net_seed = int(np.random.default_rng(net_stream).integers(0, 2**63))
        net_config = replace(config.network, seed=net_seed)
    graph = generate_scale_free(net_config)

    opinions = init_opinions(config.population.n, np.random.default_rng(opinion_stream))
    roles = assign_roles(config.population, np.random.default_rng(role_stream))
    agents = [
        AgentState(id=i, role=roles[i], opinions=opinions[i])
        for i in range(config.population.n)
    ]
    return SimState(
        graph=graph,
        agents=agents,
        params=config.population.update_params(),
        media=config.media,
        expert=config.expert,
        shuffle_rng=np.random.default_rng(shuffle_stream),
        expert_mode=config.population.expert_mode,
        edge_activation=config.edge_activation,
        update_reads=config.update_reads,
    )


def run_scenario(config: ScenarioConfig, seed: int) -> RunResult:
    """Run one seed of one scenario to completion."""
    state = build_state(config, seed)
    series = run(state, config.max_ticks, config.convergence_eps, config.patience)
    return RunResult(
        scenario_id=config.scenario_id,
        seed=seed,
        series=tuple(series),
        final=series[-1],
    )


def run_batch(configs: Sequence[ScenarioConfig]) -> list[RunResult]:
    """Run every (config, seed) pair, ordered by (config index, seed index)."""
    results: list[RunResult] = []
    for config in configs:
        for seed in config.seeds:
            try:
                results.append(run_scenario(config, seed))
            except Exception as exc:
                raise BatchError(
                    f"run failed for scenario {config.scenario_id} seed {seed}: {exc}"
                ) from exc
    return results


# ======================================================================
# Scenario grids
# ======================================================================


def _base_checks(base: ScenarioConfig) -> None:
    if base.population.n != 100:
        raise ValueError(f"scenario batteries are defined for n=100, got {base.population.n}")


def _grid_config(base: ScenarioConfig, tolerance: float, tv: int, wa: int, white: int) -> ScenarioConfig:
    population = replace(
        base.population,
        tv_count=tv,
        wa_count=wa,
        white_count=white,
        tolerance=tolerance,
    )
    return replace(base, population=population)


def sweep_scenario1(
    tolerances: Sequence[float] = DEFAULT_TOLERANCES,
    base: ScenarioConfig | None = None,
) -> list[ScenarioConfig]:
    """Battery 1 grid: televiewers 0..100 in steps of 10, no white zone."""
    base = base if base is not None else default_scenario()
    _base_checks(base)
    return [
        _grid_config(base, tol, tv, 100 - tv, 0)
        for tol in tolerances
        for tv in SCENARIO1_TV_COUNTS
    ]


def sweep_scenario2(
    tolerances: Sequence[float] = DEFAULT_TOLERANCES,
    base: ScenarioConfig | None = None,
) -> list[ScenarioConfig]:
    """Battery 2 grid: 30 white-zone agents, televiewers 0..70 in steps of 10."""
    base = base if base is not None else default_scenario()
    _base_checks(base)
    return [
        _grid_config(base, tol, tv, 70 - tv, SCENARIO2_WHITE_COUNT)
        for tol in tolerances
        for tv in SCENARIO2_TV_COUNTS
    ]


def default_scenario(n: int = 100) -> ScenarioConfig:
    """A placeholder all-wise-agent scenario carrying the documented defaults."""
    return ScenarioConfig(
        population=PopulationConfig(n=n, tv_count=0, wa_count=n, white_count=0),
        network=NetworkConfig(n=n),
    )


# ======================================================================
# Aggregation and threshold analysis
# ======================================================================


def aggregate_runs(config: ScenarioConfig, runs: Sequence[RunResult]) -> AggregateResult:
    """Across-seed mean and sample std of the population means, per tick.

    Runs that converged early are padded with their final row up to the
    longest series (a converged series is constant thereafter by definition).
    """
    if not runs:
        raise ValueError("aggregate_runs needs at least one run")
    for r in runs:
        if r.scenario_id != config.scenario_id:
            raise ValueError(
                f"run for scenario {r.scenario_id} mixed into {config.scenario_id}"
            )
    length = max(len(r.series) for r in runs)

    def padded(r: RunResult, i: int) -> TickMetrics:
        return r.series[min(i, len(r.series) - 1)]

    mean_w: list[float] = []
    std_w: list[float] = []
    mean_s: list[float] = []
    std_s: list[float] = []
    for i in range(length):
        welfare = np.array([padded(r, i).mean_welfare for r in runs])
        security = np.array([padded(r, i).mean_security for r in runs])
        mean_w.append(float(welfare.mean()))
        mean_s.append(float(security.mean()))
        if len(runs) > 1:
            std_w.append(float(welfare.std(ddof=1)))
            std_s.append(float(security.std(ddof=1)))
        else:
            std_w.append(0.0)
            std_s.append(0.0)
    return AggregateResult(
        config=config,
        n_runs=len(runs),
        ticks=tuple(range(length)),
        mean_welfare=tuple(mean_w),
        std_welfare=tuple(std_w),
        mean_security=tuple(mean_s),
        std_security=tuple(std_s),
    )


def aggregate_batch(
    configs: Sequence[ScenarioConfig], results: Sequence[RunResult]
) -> list[AggregateResult]:
    """Group batch results by scenario and aggregate each group."""
    by_id: dict[str, list[RunResult]] = {}
    for r in results:
        by_id.setdefault(r.scenario_id, []).append(r)
    aggregates = []
    for config in configs:
        runs = by_id.get(config.scenario_id)
        if not runs:
            raise ValueError(f"no results for scenario {config.scenario_id}")
        aggregates.append(aggregate_runs(config, runs))
    return aggregates


def find_inversion_threshold(aggregates: Sequence[AggregateResult]) -> int | None:
    """Smallest wise-agent percentage whose final aggregate ranks welfare first.

    Expects the aggregates of all 11 battery-1 rows at one tolerance;
    returns None when no row is inverted.
    """
    if len(aggregates) != len(SCENARIO1_TV_COUNTS):
        raise ValueError(
            f"expected {len(SCENARIO1_TV_COUNTS)} battery-1 rows, got {len(aggregates)}"
        )
    tolerances = {a.config.population.tolerance for a in aggregates}
    if len(tolerances) != 1:
        raise ValueError(f"rows mix tolerances {sorted(tolerances)}")
    if any(a.config.population.white_count != 0 for a in aggregates):
        raise ValueError("battery-1 rows must have no white zone")
    wa_pcts = sorted(a.config.pct(a.config.population.wa_count) for a in aggregates)
    expected = sorted(100 - tv for tv in SCENARIO1_TV_COUNTS)
    if wa_pcts != expected:
        raise ValueError(f"incomplete row set: wise-agent percentages {wa_pcts}")

    by_wa = sorted(aggregates, key=lambda a: a.config.population.wa_count)
    for aggregate in by_wa:
        if aggregate.inverted:
            return aggregate.config.pct(aggregate.config.population.wa_count)
    return None
