"""Scenario-file parsing and bit-exact CSV serialization.

Scenario files are flat ``key = value`` lines; ``#`` starts a comment and
blank lines are ignored. Recognized keys:

    agents, tv_pct, wa_pct, white_pct, tolerance, convergence_m,
    expert_mode, media_welfare, media_security, expert_welfare,
    expert_security, net_core, net_attach, net_seed, max_ticks, eps,
    patience, seeds, edge_activation, update_reads, fixed_network

``agents`` is required; the three percentages must sum to 100 (each
defaults to 0). ``seeds`` is a comma-separated integer list. Role counts
are the percentages applied to ``agents``, rounded to nearest. All other
keys default to the library defaults. CSV output renders reals as their
shortest round-trip decimal with LF line endings, so reruns of the same
batch are byte-identical.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .agents import (
    EXPERT_MODES,
    PopulationConfig,
    Role,
    SourceMessage,
)
from .experiments import (
    DEFAULT_SEEDS,
    AggregateResult,
    RunResult,
    ScenarioConfig,
)
from .network import NetworkConfig
from .simulation import EDGE_ACTIVATION_MODES, UPDATE_READ_MODES


class ScenarioError(ValueError):
    """A scenario document or override failed validation."""


_INT_KEYS = ("agents", "net_core", "net_attach", "net_seed", "max_ticks", "patience")
_FLOAT_KEYS = (
    "tv_pct",
    "wa_pct",
    "white_pct",
    "tolerance",
    "convergence_m",
    "media_welfare",
    "media_security",
    "expert_welfare",
    "expert_security",
    "eps",
)
_CHOICE_KEYS = {
    "expert_mode": EXPERT_MODES,
    "edge_activation": EDGE_ACTIVATION_MODES,
    "update_reads": UPDATE_READ_MODES,
}
KNOWN_KEYS = frozenset(_INT_KEYS) | frozenset(_FLOAT_KEYS) | set(_CHOICE_KEYS) | {
    "seeds",
    "fixed_network",
}

_BOOL_VALUES = {"true": True, "yes": True, "1": True, "false": False, "no": False, "0": False}


def parse_scenario_file(text: str) -> ScenarioConfig:
    """Parse a scenario document into a validated ScenarioConfig."""
    return build_scenario(tokenize_scenario_file(text))


def tokenize_scenario_file(text: str) -> dict[str, tuple[str, str]]:
    """Split a document into key -> (value text, line reference) pairs."""
    raw: dict[str, tuple[str, str]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ScenarioError(f"line {lineno}: expected 'key = value', got {stripped!r}")
        key, value = (part.strip() for part in stripped.split("=", 1))
        where = f"line {lineno}"
        if key not in KNOWN_KEYS:
            raise ScenarioError(f"{where}: unknown key {key!r}")
        if key in raw:
            raise ScenarioError(f"{where}: duplicate key {key!r}")
        raw[key] = (value, where)
    return raw


def build_scenario(raw: Mapping[str, tuple[str, str]]) -> ScenarioConfig:
    """Build a ScenarioConfig from raw string values tagged with their origin.

    ``raw`` maps key -> (value text, location), where location is a line
    reference or a CLI flag name; errors cite both the key and location.
    """
    values: dict[str, object] = {}
    for key, (text, where) in raw.items():
        values[key] = _convert(key, text, where)

    def where_of(key: str) -> str:
        return raw[key][1]

    if "agents" not in values:
        raise ScenarioError("missing required key 'agents'")
    n = values["agents"]
    if not isinstance(n, int) or n < 1:
        raise ScenarioError(f"{where_of('agents')}: agents must be a positive integer")

    tv_pct = float(values.get("tv_pct", 0.0))
    wa_pct = float(values.get("wa_pct", 0.0))
    white_pct = float(values.get("white_pct", 0.0))
    if abs(tv_pct + wa_pct + white_pct - 100.0) > 1e-9:
        raise ScenarioError(
            "tv_pct + wa_pct + white_pct must sum to 100, "
            f"got {tv_pct:g} + {wa_pct:g} + {white_pct:g} = {tv_pct + wa_pct + white_pct:g}"
        )
    tv_count = round(n * tv_pct / 100)
    wa_count = round(n * wa_pct / 100)
    white_count = n - tv_count - wa_count
    if min(tv_count, wa_count, white_count) < 0:
        raise ScenarioError(
            f"percentages map to negative counts for agents={n}: "
            f"tv={tv_count}, wa={wa_count}, white={white_count}"
        )

    tolerance = float(values.get("tolerance", 0.5))
    if not 0.0 <= tolerance <= 1.0:
        raise ScenarioError(
            f"{where_of('tolerance')}: tolerance must be in [0, 1], got {tolerance:g}"
        )
    convergence = float(values.get("convergence_m", 0.02))
    if not 0.0 < convergence <= 0.5:
        raise ScenarioError(
            f"{where_of('convergence_m')}: convergence_m must be in (0, 0.5], "
            f"got {convergence:g}"
        )

    for key in ("media_welfare", "media_security", "expert_welfare", "expert_security"):
        if key in values and not 0.0 <= float(values[key]) <= 1.0:
            raise ScenarioError(f"{where_of(key)}: {key} must be in [0, 1]")

    try:
        population = PopulationConfig(
            n=n,
            tv_count=tv_count,
            wa_count=wa_count,
            white_count=white_count,
            tolerance=tolerance,
            convergence=convergence,
            expert_mode=str(values.get("expert_mode", "adopt")),
        )
        network = NetworkConfig(
            n=n,
            seed_core_size=int(values.get("net_core", 3)),
            attach_count=int(values.get("net_attach", 2)),
            seed=int(values.get("net_seed", 0)),
        )
        media = SourceMessage(
            welfare=float(values.get("media_welfare", 0.3)),
            security=float(values.get("media_security", 0.8)),
            audience=Role.TELEVIEWER,
        )
        expert = SourceMessage(
            welfare=float(values.get("expert_welfare", 0.8)),
            security=float(values.get("expert_security", 0.3)),
            audience=Role.WISE_AGENT,
        )
        return ScenarioConfig(
            population=population,
            network=network,
            media=media,
            expert=expert,
            max_ticks=int(values.get("max_ticks", 100)),
            convergence_eps=float(values.get("eps", 1e-4)),
            patience=int(values.get("patience", 10)),
            seeds=tuple(values.get("seeds", DEFAULT_SEEDS)),
            edge_activation=str(values.get("edge_activation", "once")),
            update_reads=str(values.get("update_reads", "live")),
            fixed_network=bool(values.get("fixed_network", False)),
        )
    except ScenarioError:
        raise
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc


def _convert(key: str, text: str, where: str) -> object:
    if key in _INT_KEYS:
        try:
            return int(text)
        except ValueError:
            raise ScenarioError(f"{where}: {key} expects an integer, got {text!r}") from None
    if key in _FLOAT_KEYS:
        try:
            return float(text)
        except ValueError:
            raise ScenarioError(f"{where}: {key} expects a number, got {text!r}") from None
    if key in _CHOICE_KEYS:
        if text not in _CHOICE_KEYS[key]:
            raise ScenarioError(
                f"{where}: {key} must be one of {', '.join(_CHOICE_KEYS[key])}, got {text!r}"
            )
        return text
    if key == "fixed_network":
        flag = _BOOL_VALUES.get(text.lower())
        if flag is None:
            raise ScenarioError(f"{where}: {key} expects true/false, got {text!r}")
        return flag
    if key == "seeds":
        try:
            seeds = tuple(int(part.strip()) for part in text.split(",") if part.strip())
        except ValueError:
            raise ScenarioError(
                f"{where}: seeds expects comma-separated integers, got {text!r}"
            ) from None
        if not seeds:
            raise ScenarioError(f"{where}: seeds must be non-empty")
        return seeds
    raise ScenarioError(f"{where}: unknown key {key!r}")


def render_scenario_file(config: ScenarioConfig) -> str:
    """Render a config back to the flat key-value format (parse round-trips)."""
    p = config.population
    lines = [
        f"agents = {p.n}",
        f"tv_pct = {_fmt(100 * p.tv_count / p.n)}",
        f"wa_pct = {_fmt(100 * p.wa_count / p.n)}",
        f"white_pct = {_fmt(100 * p.white_count / p.n)}",
        f"tolerance = {_fmt(p.tolerance)}",
        f"convergence_m = {_fmt(p.convergence)}",
        f"expert_mode = {p.expert_mode}",
        f"media_welfare = {_fmt(config.media.welfare)}",
        f"media_security = {_fmt(config.media.security)}",
        f"expert_welfare = {_fmt(config.expert.welfare)}",
        f"expert_security = {_fmt(config.expert.security)}",
        f"net_core = {config.network.seed_core_size}",
        f"net_attach = {config.network.attach_count}",
        f"net_seed = {config.network.seed}",
        f"max_ticks = {config.max_ticks}",
        f"eps = {_fmt(config.convergence_eps)}",
        f"patience = {config.patience}",
        f"seeds = {','.join(str(s) for s in config.seeds)}",
        f"edge_activation = {config.edge_activation}",
        f"update_reads = {config.update_reads}",
        f"fixed_network = {'true' if config.fixed_network else 'false'}",
    ]
    return "\n".join(lines) + "\n"


def _fmt(x: float) -> str:
    return repr(float(x))


TIMESERIES_HEADER = "scenario,seed,tick,mean_welfare,mean_security,std_welfare,std_security"
SUMMARY_HEADER = (
    "tolerance,tv_pct,wa_pct,white_pct,final_mean_welfare,final_mean_security,inverted"
)
THRESHOLD_HEADER = "tolerance,inversion_threshold_wa_pct"


def write_timeseries_csv(results: Sequence[RunResult]) -> str:
    """Per-tick rows for every run, in (scenario, seed, tick) order."""
    if not results:
        raise ValueError("no results to serialize")
    lines = [TIMESERIES_HEADER]
    for result in results:
        for row in result.series:
            lines.append(
                f"{result.scenario_id},{result.seed},{row.tick},"
                f"{_fmt(row.mean_welfare)},{_fmt(row.mean_security)},"
                f"{_fmt(row.std_welfare)},{_fmt(row.std_security)}"
            )
    return "\n".join(lines) + "\n"


def write_summary_csv(
    aggregates: Sequence[AggregateResult],
    thresholds: Mapping[float, int | None],
) -> str:
    """Final aggregates per scenario plus a trailing inversion-threshold block."""
    lines = [SUMMARY_HEADER]
    for aggregate in aggregates:
        config = aggregate.config
        p = config.population
        lines.append(
            f"{_fmt(p.tolerance)},{config.pct(p.tv_count)},{config.pct(p.wa_count)},"
            f"{config.pct(p.white_count)},{_fmt(aggregate.final_mean_welfare)},"
            f"{_fmt(aggregate.final_mean_security)},"
            f"{'true' if aggregate.inverted else 'false'}"
        )
    lines.append(THRESHOLD_HEADER)
    for tolerance in sorted(thresholds):
        threshold = thresholds[tolerance]
        lines.append(f"{_fmt(tolerance)},{'none' if threshold is None else threshold}")
    return "\n".join(lines) + "\n"
