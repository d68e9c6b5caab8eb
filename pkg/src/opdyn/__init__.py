"""Deterministic two-dimensional opinion dynamics under three information channels.

Agents on a scale-free network hold a (welfare, security) opinion pair and
update it through bounded-confidence peer exchange, a broadcast media
message, and a trusted expert source. Every run is a pure function of its
scenario configuration and seed.
"""

from .agents import (
    EXPERT_MESSAGE,
    MEDIA_MESSAGE,
    AgentState,
    PopulationConfig,
    Role,
    SourceMessage,
    assign_roles,
    expert_step,
    init_opinions,
    media_step,
)
from .experiments import (
    DEFAULT_SEEDS,
    DEFAULT_TOLERANCES,
    AggregateResult,
    BatchError,
    RunResult,
    ScenarioConfig,
    aggregate_batch,
    aggregate_runs,
    build_state,
    default_scenario,
    find_inversion_threshold,
    run_batch,
    run_scenario,
    sweep_scenario1,
    sweep_scenario2,
)
from .network import (
    DegreeStats,
    Graph,
    NetworkConfig,
    degree_stats,
    edge_list_text,
    generate_scale_free,
    is_connected,
    neighbors,
)
from .opinion import (
    OpinionPair,
    UpdateParams,
    bc_update_dimension,
    bc_update_pair,
    guard,
    unguarded_update_pair,
)
from .scenario_io import (
    ScenarioError,
    parse_scenario_file,
    render_scenario_file,
    write_summary_csv,
    write_timeseries_csv,
)
from .simulation import (
    SimState,
    TickMetrics,
    compute_metrics,
    peer_exchange_phase,
    run,
    tick,
)

__version__ = "0.1.0"
