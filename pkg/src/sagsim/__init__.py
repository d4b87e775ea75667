"""sagsim: satellite-to-HAP link coordination simulator.

Circular equatorial LEO satellites relay content toward the ground through
high-altitude platforms. The package models the geometry, derives contact
plans (a time-evolving resource graph), and compares link-establishment
schemes per timestep: exact max-weight one-to-many matching against myopic
greedy and random baselines.
"""

from .contacts import ContactWindow, Terg, build_terg, contact_windows, terg_snapshot
from .geometry import (
    ConstellationSpec,
    EarthModel,
    EcefPosition,
    HapSite,
    elevation_angle,
    hap_position,
    is_visible,
    orbital_period,
    relative_period,
    satellite_position,
    signal_strength,
    slant_range,
)
from .matching import (
    Assignment,
    VisibilityGraph,
    average_strength,
    brute_force_assignment,
    build_visibility_graph,
    greedy_assignment,
    optimal_assignment,
    random_assignment,
)
from .scenario import ScenarioConfig
from .simulation import (
    MetricSeries,
    SweepResult,
    replicate,
    run_scenario,
    sweep_beam_cap,
    sweep_num_haps,
)

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "ConstellationSpec",
    "ContactWindow",
    "EarthModel",
    "EcefPosition",
    "HapSite",
    "MetricSeries",
    "ScenarioConfig",
    "SweepResult",
    "Terg",
    "VisibilityGraph",
    "average_strength",
    "brute_force_assignment",
    "build_terg",
    "build_visibility_graph",
    "contact_windows",
    "elevation_angle",
    "greedy_assignment",
    "hap_position",
    "is_visible",
    "optimal_assignment",
    "orbital_period",
    "random_assignment",
    "relative_period",
    "replicate",
    "run_scenario",
    "satellite_position",
    "signal_strength",
    "slant_range",
    "sweep_beam_cap",
    "sweep_num_haps",
    "terg_snapshot",
]
