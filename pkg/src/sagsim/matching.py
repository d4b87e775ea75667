"""Per-timestep link establishment between satellites and HAPs.

Four schemes over the same weighted bipartite visibility graph: the exact
max-weight one-to-many matching (globally informed coordination), the myopic
greedy baseline, seeded random link establishment, and an exhaustive
brute-force oracle for small instances. HAPs carry capacity 1, satellites
carry beam_cap; the objective is total (equivalently average) signal
strength, so leaving a HAP unassigned is allowed whenever that raises the
total.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .backend import active_kernels
from .errors import InvalidParameterError, SizeLimitError
from .geometry import elevation_angle, hap_positions, satellite_positions
from .scenario import ScenarioConfig

BRUTE_FORCE_MAX_HAPS = 8
BRUTE_FORCE_MAX_SATS = 4


@dataclass
class VisibilityGraph:
    """Weighted bipartite graph of visible (satellite, HAP) pairs at one t.

    Stored in CSR form keyed by HAP (see _kernels); edge weights are the
    normalized signal strengths in (0, 1].
    """

    num_sats: int
    num_haps: int
    timestamp_s: float
    hap_ptr: np.ndarray
    edge_sat: np.ndarray
    edge_weight: np.ndarray

    @classmethod
    def from_edges(cls, num_sats: int, num_haps: int, edges,
                   timestamp_s: float = 0.0) -> "VisibilityGraph":
        """Build from (sat_index, hap_id, weight) triples, validating invariants."""
        if num_sats < 0 or num_haps < 0:
            raise InvalidParameterError("num_sats and num_haps must be >= 0")
        triples = sorted((int(h), int(s), float(w)) for (s, h, w) in edges)
        seen = set()
        for h, s, w in triples:
            if not 0 <= s < num_sats:
                raise InvalidParameterError(f"sat_index {s} out of range")
            if not 0 <= h < num_haps:
                raise InvalidParameterError(f"hap_id {h} out of range")
            if not 0.0 < w <= 1.0:
                raise InvalidParameterError(f"edge weight {w} outside (0, 1]")
            if (h, s) in seen:
                raise InvalidParameterError(f"duplicate edge for pair ({s}, {h})")
            seen.add((h, s))
        hap_ptr = np.zeros(num_haps + 1, dtype=np.int64)
        for h, _, _ in triples:
            hap_ptr[h + 1] += 1
        np.cumsum(hap_ptr, out=hap_ptr)
        return cls(
            num_sats=num_sats,
            num_haps=num_haps,
            timestamp_s=float(timestamp_s),
            hap_ptr=hap_ptr,
            edge_sat=np.array([s for _, s, _ in triples], dtype=np.int64),
            edge_weight=np.array([w for _, _, w in triples], dtype=np.float64),
        )

    @property
    def num_edges(self) -> int:
        return int(self.edge_sat.shape[0])

    def edges(self) -> list[tuple[int, int, float]]:
        """Edge triples (sat_index, hap_id, weight), sorted by (hap, sat)."""
        out = []
        for h in range(self.num_haps):
            for e in range(self.hap_ptr[h], self.hap_ptr[h + 1]):
                out.append((int(self.edge_sat[e]), h, float(self.edge_weight[e])))
        return out

    def weight_of(self, hap_id: int, sat_index: int) -> float:
        for e in range(self.hap_ptr[hap_id], self.hap_ptr[hap_id + 1]):
            if self.edge_sat[e] == sat_index:
                return float(self.edge_weight[e])
        raise InvalidParameterError(f"no edge for pair ({sat_index}, {hap_id})")


@dataclass
class Assignment:
    """A feasible HAP-to-satellite matching produced by one scheme."""

    pairs: dict[int, int]  # hap_id -> sat_index
    scheme: str
    total_weight: float
    beam_cap: int

    @property
    def num_assigned(self) -> int:
        return len(self.pairs)


def _from_edge_choice(graph: VisibilityGraph, choice, scheme: str,
                      beam_cap: int) -> Assignment:
    # total is summed in ascending hap order in every scheme, so equal
    # assignments from different solvers yield bit-equal totals
    pairs = {}
    total = 0.0
    for h in range(graph.num_haps):
        e = int(choice[h])
        if e >= 0:
            pairs[h] = int(graph.edge_sat[e])
            total += float(graph.edge_weight[e])
    return Assignment(pairs=pairs, scheme=scheme, total_weight=total,
                      beam_cap=beam_cap)


def build_visibility_graph(scenario: ScenarioConfig, t: float) -> VisibilityGraph:
    """Visibility graph at time t from the scenario geometry."""
    if t < 0:
        raise InvalidParameterError("t must be >= 0")
    sat_xyz = satellite_positions(scenario.earth, scenario.constellation,
                                  [t], scenario.earth_rotation)[0]
    hap_xyz = hap_positions(scenario.earth, scenario.hap_sites())
    return _graph_from_positions(scenario, hap_xyz, sat_xyz, t)


def visibility_graphs(scenario: ScenarioConfig, times) -> list[VisibilityGraph]:
    """Visibility graphs for a whole time grid, vectorized over timesteps."""
    times = np.asarray(times, dtype=np.float64)
    sat_xyz = satellite_positions(scenario.earth, scenario.constellation,
                                  times, scenario.earth_rotation)
    hap_xyz = hap_positions(scenario.earth, scenario.hap_sites())
    return [
        _graph_from_positions(scenario, hap_xyz, sat_xyz[k], float(times[k]))
        for k in range(times.size)
    ]


def _graph_from_positions(scenario, hap_xyz, sat_xyz, t) -> VisibilityGraph:
    el = elevation_angle(hap_xyz[:, None, :], sat_xyz[None, :, :])
    visible = el >= scenario.min_elevation_deg
    hap_idx, sat_idx = np.nonzero(visible)  # row-major: sorted by (hap, sat)
    diff = sat_xyz[sat_idx] - hap_xyz[hap_idx]
    slant = np.linalg.norm(diff, axis=-1)
    weight = (scenario.reference_range_km / slant) ** 2
    hap_ptr = np.zeros(scenario.num_haps + 1, dtype=np.int64)
    np.add.at(hap_ptr, hap_idx + 1, 1)
    np.cumsum(hap_ptr, out=hap_ptr)
    return VisibilityGraph(
        num_sats=scenario.constellation.num_satellites,
        num_haps=scenario.num_haps,
        timestamp_s=t,
        hap_ptr=hap_ptr,
        edge_sat=sat_idx.astype(np.int64),
        edge_weight=weight.astype(np.float64),
    )


def optimal_assignment(graph: VisibilityGraph, beam_cap: int) -> Assignment:
    """Exact maximum-total-weight assignment (globally informed scheme)."""
    if beam_cap < 1:
        raise InvalidParameterError("beam_cap must be >= 1")
    kern = active_kernels()
    choice = kern.solve_optimal(graph.num_haps, graph.num_sats, graph.hap_ptr,
                                graph.edge_sat, graph.edge_weight, beam_cap)
    return _from_edge_choice(graph, choice, "optimal", beam_cap)


def greedy_assignment(graph: VisibilityGraph, beam_cap: int) -> Assignment:
    """Myopic baseline: each HAP, in id order, grabs its best free beam."""
    if beam_cap < 1:
        raise InvalidParameterError("beam_cap must be >= 1")
    kern = active_kernels()
    choice = kern.solve_greedy(graph.num_haps, graph.num_sats, graph.hap_ptr,
                               graph.edge_sat, graph.edge_weight, beam_cap)
    return _from_edge_choice(graph, choice, "greedy", beam_cap)


def random_assignment(graph: VisibilityGraph, beam_cap: int,
                      seed: int) -> Assignment:
    """Random baseline: each HAP picks uniformly among free beams, seeded."""
    if beam_cap < 1:
        raise InvalidParameterError("beam_cap must be >= 1")
    unit = np.random.default_rng(seed).random(graph.num_haps)
    kern = active_kernels()
    choice = kern.solve_random(graph.num_haps, graph.num_sats, graph.hap_ptr,
                               graph.edge_sat, graph.edge_weight, beam_cap,
                               unit)
    return _from_edge_choice(graph, choice, "random", beam_cap)


def brute_force_assignment(graph: VisibilityGraph, beam_cap: int) -> Assignment:
    """Independent optimality oracle: exhaustive search over all assignments.

    Guarded to tiny instances. Among equal-total optima it returns the
    lexicographically smallest pair map (compared as the hap-sorted sequence
    of (hap_id, sat_index) pairs).
    """
    if beam_cap < 1:
        raise InvalidParameterError("beam_cap must be >= 1")
    if graph.num_haps > BRUTE_FORCE_MAX_HAPS or graph.num_sats > BRUTE_FORCE_MAX_SATS:
        raise SizeLimitError(
            f"instance {graph.num_sats}x{graph.num_haps} exceeds the "
            f"enumeration guard ({BRUTE_FORCE_MAX_SATS} sats x "
            f"{BRUTE_FORCE_MAX_HAPS} HAPs)"
        )
    load = [0] * graph.num_sats
    choice = [-1] * graph.num_haps
    best = {"total": -1.0, "key": None, "choice": None}

    def recurse(h: int, running: float):
        if h == graph.num_haps:
            key = tuple(
                (hh, int(graph.edge_sat[choice[hh]]))
                for hh in range(graph.num_haps) if choice[hh] >= 0
            )
            if running > best["total"] or (
                running == best["total"] and key < best["key"]
            ):
                best["total"] = running
                best["key"] = key
                best["choice"] = list(choice)
            return
        recurse(h + 1, running)  # leave h unassigned
        for e in range(graph.hap_ptr[h], graph.hap_ptr[h + 1]):
            s = int(graph.edge_sat[e])
            if load[s] < beam_cap:
                load[s] += 1
                choice[h] = int(e)
                # adding in descent order keeps the hap-ascending float sum
                recurse(h + 1, running + float(graph.edge_weight[e]))
                choice[h] = -1
                load[s] -= 1

    recurse(0, 0.0)
    return _from_edge_choice(graph, best["choice"], "oracle", beam_cap)


def average_strength(assignment: Assignment, num_haps: int) -> float:
    """Mean signal strength over all HAPs; unassigned HAPs contribute 0."""
    if num_haps < 1:
        raise InvalidParameterError("num_haps must be >= 1")
    return assignment.total_weight / num_haps


def verify_assignment(assignment: Assignment, graph: VisibilityGraph) -> None:
    """Raise InvalidParameterError if any Assignment invariant is violated."""
    load = {}
    total = 0.0
    for h in sorted(assignment.pairs):
        s = assignment.pairs[h]
        if not 0 <= h < graph.num_haps:
            raise InvalidParameterError(f"assigned hap_id {h} out of range")
        total += graph.weight_of(h, s)  # raises if the pair is not an edge
        load[s] = load.get(s, 0) + 1
    for s, n in load.items():
        if n > assignment.beam_cap:
            raise InvalidParameterError(
                f"satellite {s} serves {n} HAPs, beam_cap {assignment.beam_cap}"
            )
    if abs(total - assignment.total_weight) > 1e-12 * max(1.0, abs(total)):
        raise InvalidParameterError(
            f"total_weight {assignment.total_weight} != recomputed {total}"
        )
