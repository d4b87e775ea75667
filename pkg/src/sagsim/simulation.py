"""Time-stepped scenario runs, replication statistics, and parameter sweeps.

Each run samples HAP placement once from its seed, then steps through the
horizon solving every enabled scheme on the same per-timestep visibility
graph. Sweeps replicate runs over derived placement seeds (base + i) and
report per-scheme means with normal-approximation 95% confidence intervals.
The y-quantity everywhere is the normalized average signal strength over all
HAPs, unassigned ones contributing zero; absolute levels are artifact
conventions, only orderings and trends are meaningful.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .errors import InvalidParameterError
from .matching import (
    average_strength,
    greedy_assignment,
    optimal_assignment,
    random_assignment,
    visibility_graphs,
)
from .scenario import ScenarioConfig, mix_seed

Z_95 = 1.959963984540054  # two-sided 95% normal quantile


@dataclass
class MetricSeries:
    """Per-scheme time series of average signal strength for one run."""

    scheme: str
    per_step: list[tuple[float, float]]  # (t, average_strength)
    time_mean: float
    assigned_fraction_mean: float


@dataclass(frozen=True)
class SchemeStats:
    """Replication summary of one scheme's time_mean."""

    mean: float
    std: float
    ci_low: float
    ci_high: float
    num_replications: int

    @property
    def degenerate(self) -> bool:
        """True when a single replication collapses the CI to a point."""
        return self.num_replications == 1


@dataclass
class SweepCell:
    value: int
    stats: dict[str, SchemeStats]
    rep_means: dict[str, tuple[float, ...]]
    num_replications: int


@dataclass
class SweepResult:
    swept_param: str
    values: list[int]
    per_value: list[SweepCell]


def _solve_step(scheme: str, graph, config: ScenarioConfig, step_index: int):
    if scheme == "optimal":
        return optimal_assignment(graph, config.beam_cap)
    if scheme == "greedy":
        return greedy_assignment(graph, config.beam_cap)
    if scheme == "random":
        seed = mix_seed(config.random_seed, step_index)
        return random_assignment(graph, config.beam_cap, seed)
    raise InvalidParameterError(f"schemes entry {scheme!r} unknown")


def run_scenario(config: ScenarioConfig) -> list[MetricSeries]:
    """Run every enabled scheme over the configured horizon.

    All schemes at a given timestep consume the identical visibility graph,
    computed once; the result is a pure function of the config.
    """
    times = config.times()
    graphs = visibility_graphs(config, times)
    per_step = {scheme: [] for scheme in config.schemes}
    frac = {scheme: [] for scheme in config.schemes}
    for k, graph in enumerate(graphs):
        for scheme in config.schemes:
            a = _solve_step(scheme, graph, config, k)
            per_step[scheme].append(
                (float(times[k]), average_strength(a, config.num_haps))
            )
            frac[scheme].append(a.num_assigned / config.num_haps)
    out = []
    for scheme in config.schemes:
        values = [v for _, v in per_step[scheme]]
        out.append(MetricSeries(
            scheme=scheme,
            per_step=per_step[scheme],
            time_mean=sum(values) / len(values),
            assigned_fraction_mean=sum(frac[scheme]) / len(frac[scheme]),
        ))
    return out


def _summary(values: list[float]) -> SchemeStats:
    n = len(values)
    mean = sum(values) / n
    if n == 1:
        return SchemeStats(mean=mean, std=0.0, ci_low=mean, ci_high=mean,
                           num_replications=1)
    var = sum((v - mean) ** 2 for v in values) / (n - 1)
    half = Z_95 * (var**0.5) / (n**0.5)
    return SchemeStats(mean=mean, std=var**0.5, ci_low=mean - half,
                       ci_high=mean + half, num_replications=n)


def replicate_means(config: ScenarioConfig, seeds) -> dict[str, list[float]]:
    """time_mean per scheme for each placement seed, in seed order."""
    if not seeds:
        raise InvalidParameterError("seeds must be non-empty")
    means: dict[str, list[float]] = {scheme: [] for scheme in config.schemes}
    for seed in seeds:
        cfg = dataclasses.replace(config, placement_seed=int(seed))
        for series in run_scenario(cfg):
            means[series.scheme].append(series.time_mean)
    return means


def replicate(config: ScenarioConfig, seeds) -> dict[str, SchemeStats]:
    """Replication summary (mean, sample std, 95% CI) across placement seeds."""
    return {scheme: _summary(vals)
            for scheme, vals in replicate_means(config, seeds).items()}


def _sweep(base: ScenarioConfig, param: str, values, replications: int) -> SweepResult:
    if not values:
        raise InvalidParameterError(f"{param} value list must be non-empty")
    if replications < 1:
        raise InvalidParameterError("replications must be >= 1")
    values = [int(v) for v in values]
    seeds = [base.placement_seed + i for i in range(replications)]
    cells = []
    for value in values:
        cfg = dataclasses.replace(base, **{param: value})
        means = replicate_means(cfg, seeds)
        cells.append(SweepCell(
            value=value,
            stats={s: _summary(v) for s, v in means.items()},
            rep_means={s: tuple(v) for s, v in means.items()},
            num_replications=replications,
        ))
    return SweepResult(swept_param=param, values=values, per_value=cells)


def sweep_beam_cap(base: ScenarioConfig, caps, replications: int = 20) -> SweepResult:
    """Average signal strength versus the per-satellite beam capacity."""
    for c in caps:
        if c < 1:
            raise InvalidParameterError("beam_cap values must be >= 1")
    return _sweep(base, "beam_cap", caps, replications)


def sweep_num_haps(base: ScenarioConfig, hap_counts, replications: int = 20) -> SweepResult:
    """Average signal strength versus the number of HAPs, fixed beam_cap."""
    for c in hap_counts:
        if c < 1:
            raise InvalidParameterError("num_haps values must be >= 1")
    return _sweep(base, "num_haps", hap_counts, replications)


def sweep_csv(result: SweepResult) -> str:
    """Comma-separated export; byte-stable for fixed inputs."""
    lines = ["swept_param,value,scheme,mean,ci_low,ci_high,replications"]
    for cell in result.per_value:
        for scheme, st in cell.stats.items():
            lines.append(
                f"{result.swept_param},{cell.value},{scheme},"
                f"{float(st.mean)!r},{float(st.ci_low)!r},{float(st.ci_high)!r},"
                f"{st.num_replications}"
            )
    return "\n".join(lines) + "\n"


def sweep_to_dict(result: SweepResult) -> dict:
    """Structured-object export mirroring SweepResult."""
    return {
        "swept_param": result.swept_param,
        "values": list(result.values),
        "per_value": [
            {
                "value": cell.value,
                "num_replications": cell.num_replications,
                "schemes": {
                    scheme: {
                        "mean": st.mean,
                        "std": st.std,
                        "ci_low": st.ci_low,
                        "ci_high": st.ci_high,
                        "rep_means": list(cell.rep_means[scheme]),
                    }
                    for scheme, st in cell.stats.items()
                },
            }
            for cell in result.per_value
        ],
    }


def run_summary_csv(series_list: list[MetricSeries]) -> str:
    lines = ["scheme,time_mean,assigned_fraction_mean,steps"]
    for s in series_list:
        lines.append(
            f"{s.scheme},{float(s.time_mean)!r},"
            f"{float(s.assigned_fraction_mean)!r},{len(s.per_step)}"
        )
    return "\n".join(lines) + "\n"


def run_steps_csv(series_list: list[MetricSeries]) -> str:
    lines = ["step_index,t_s,scheme,average_strength"]
    for s in series_list:
        for k, (t, v) in enumerate(s.per_step):
            lines.append(f"{k},{float(t)!r},{s.scheme},{float(v)!r}")
    return "\n".join(lines) + "\n"
