"""Contact plan over time: when is each satellite-HAP link available.

Vertices are the network elements (satellites, HAPs); each maximal interval
of mutual visibility becomes one window edge. Pass boundaries are located by
coarse sampling followed by bisection, so windows shorter than the coarse
step can be missed; at the default geometry the shortest pass lasts several
hundred seconds against a 60 s coarse step.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameterError
from .geometry import elevation_angle, hap_positions, satellite_positions
from .matching import VisibilityGraph
from .scenario import ScenarioConfig

DEFAULT_COARSE_STEP_S = 60.0
DEFAULT_REFINE_TOL_S = 0.1


@dataclass(frozen=True)
class ContactWindow:
    sat_index: int
    hap_id: int
    start_s: float
    end_s: float

    @property
    def duration_s(self) -> float:
        return self.end_s - self.start_s

    def contains(self, t: float) -> bool:
        return self.start_s <= t <= self.end_s


@dataclass
class Terg:
    """Time-evolving resource graph: elements plus availability windows."""

    elements: list[str]
    windows: list[ContactWindow]
    horizon_s: float
    weight_profile: dict[int, tuple[np.ndarray, np.ndarray]] | None = field(
        default=None, repr=False
    )

    def windows_for(self, sat_index: int, hap_id: int) -> list[ContactWindow]:
        return [w for w in self.windows
                if w.sat_index == sat_index and w.hap_id == hap_id]


def _coarse_grid(horizon_s: float, step_s: float) -> np.ndarray:
    n = int(np.floor(horizon_s / step_s + 1e-12))
    ts = np.arange(n + 1, dtype=np.float64) * step_s
    if ts[-1] < horizon_s * (1.0 - 1e-12):
        ts = np.append(ts, horizon_s)
    return ts


def _bisect_boundary(visible_at, lo: float, hi: float, tol_s: float) -> float:
    """Locate a visibility flip inside (lo, hi) to within tol_s."""
    lo_vis = visible_at(lo)
    while hi - lo > tol_s:
        mid = 0.5 * (lo + hi)
        if visible_at(mid) == lo_vis:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _extract_windows(ts: np.ndarray, vis: np.ndarray, visible_at,
                     tol_s: float, horizon_s: float):
    spans = []
    open_start = float(ts[0]) if vis[0] else None  # clipped at the horizon start
    for k in range(len(ts) - 1):
        if vis[k] == vis[k + 1]:
            continue
        b = _bisect_boundary(visible_at, float(ts[k]), float(ts[k + 1]), tol_s)
        if vis[k + 1]:
            open_start = b
        else:
            spans.append((open_start, b))
            open_start = None
    if open_start is not None:
        spans.append((open_start, float(horizon_s)))  # clipped at the end
    return spans


def _pair_visibility_fn(scenario: ScenarioConfig, hap_xyz_row, sat_index):
    def visible_at(t: float) -> bool:
        sat = satellite_positions(scenario.earth, scenario.constellation,
                                  [t], scenario.earth_rotation)[0, sat_index]
        return bool(elevation_angle(hap_xyz_row, sat) >= scenario.min_elevation_deg)

    return visible_at


def contact_windows(scenario: ScenarioConfig, sat_index: int, hap_id: int,
                    horizon_s: float,
                    coarse_step_s: float = DEFAULT_COARSE_STEP_S,
                    refine_tol_s: float = DEFAULT_REFINE_TOL_S) -> list[ContactWindow]:
    """All maximal visibility intervals of one pair within [0, horizon_s]."""
    if not 0 <= sat_index < scenario.constellation.num_satellites:
        raise InvalidParameterError(f"sat_index {sat_index} out of range")
    if not 0 <= hap_id < scenario.num_haps:
        raise InvalidParameterError(f"hap_id {hap_id} out of range")
    if horizon_s < 0:
        raise InvalidParameterError("horizon_s must be >= 0")
    if coarse_step_s <= 0 or refine_tol_s <= 0:
        raise InvalidParameterError("coarse_step_s and refine_tol_s must be > 0")
    if horizon_s == 0:
        return []
    hap_xyz = hap_positions(scenario.earth, [scenario.hap_sites()[hap_id]])[0]
    ts = _coarse_grid(horizon_s, coarse_step_s)
    sat_xyz = satellite_positions(scenario.earth, scenario.constellation, ts,
                                  scenario.earth_rotation)[:, sat_index, :]
    vis = elevation_angle(hap_xyz, sat_xyz) >= scenario.min_elevation_deg
    visible_at = _pair_visibility_fn(scenario, hap_xyz, sat_index)
    spans = _extract_windows(ts, vis, visible_at, refine_tol_s, horizon_s)
    return [ContactWindow(sat_index, hap_id, s, e) for s, e in spans]


def build_terg(scenario: ScenarioConfig, horizon_s: float | None = None,
               coarse_step_s: float = DEFAULT_COARSE_STEP_S,
               refine_tol_s: float = DEFAULT_REFINE_TOL_S,
               profile_step_s: float | None = None) -> Terg:
    """Contact windows for every pair, on a shared coarse sampling grid."""
    horizon = scenario.duration_s if horizon_s is None else float(horizon_s)
    if horizon < 0:
        raise InvalidParameterError("horizon_s must be >= 0")
    if coarse_step_s <= 0 or refine_tol_s <= 0:
        raise InvalidParameterError("coarse_step_s and refine_tol_s must be > 0")
    num_sats = scenario.constellation.num_satellites
    elements = [f"sat-{i}" for i in range(num_sats)]
    elements += [f"hap-{j}" for j in range(scenario.num_haps)]
    if horizon == 0:
        return Terg(elements=elements, windows=[], horizon_s=0.0)

    hap_xyz = hap_positions(scenario.earth, scenario.hap_sites())
    ts = _coarse_grid(horizon, coarse_step_s)
    sat_xyz = satellite_positions(scenario.earth, scenario.constellation, ts,
                                  scenario.earth_rotation)
    el = elevation_angle(hap_xyz[None, :, None, :], sat_xyz[:, None, :, :])
    vis = el >= scenario.min_elevation_deg

    windows = []
    for s in range(num_sats):
        for h in range(scenario.num_haps):
            visible_at = _pair_visibility_fn(scenario, hap_xyz[h], s)
            for a, b in _extract_windows(ts, vis[:, h, s], visible_at,
                                         refine_tol_s, horizon):
                windows.append(ContactWindow(s, h, a, b))
    windows.sort(key=lambda w: (w.sat_index, w.hap_id, w.start_s))

    profiles = None
    if profile_step_s is not None:
        if profile_step_s <= 0:
            raise InvalidParameterError("profile_step_s must be > 0")
        profiles = {}
        for i, w in enumerate(windows):
            n = int(np.floor(w.duration_s / profile_step_s)) + 1
            sample_ts = w.start_s + np.arange(n, dtype=np.float64) * profile_step_s
            sat = satellite_positions(scenario.earth, scenario.constellation,
                                      sample_ts, scenario.earth_rotation)[:, w.sat_index, :]
            slant = np.linalg.norm(sat - hap_xyz[w.hap_id], axis=-1)
            profiles[i] = (sample_ts, (scenario.reference_range_km / slant) ** 2)

    return Terg(elements=elements, windows=windows, horizon_s=horizon,
                weight_profile=profiles)


def terg_snapshot(terg: Terg, scenario: ScenarioConfig, t: float) -> VisibilityGraph:
    """Per-timestep graph slice: window containment decides the edge set.

    Edge weights are recomputed from geometry at t, so away from window
    boundaries the snapshot matches matching.build_visibility_graph edge for
    edge.
    """
    if not 0 <= t <= terg.horizon_s:
        raise InvalidParameterError(
            f"t {t} outside the TERG horizon [0, {terg.horizon_s}]"
        )
    sat_xyz = satellite_positions(scenario.earth, scenario.constellation,
                                  [t], scenario.earth_rotation)[0]
    hap_xyz = hap_positions(scenario.earth, scenario.hap_sites())
    present = sorted(
        {(w.hap_id, w.sat_index) for w in terg.windows if w.contains(t)}
    )
    hap_idx = np.array([h for h, _ in present], dtype=np.int64)
    sat_idx = np.array([s for _, s in present], dtype=np.int64)
    if hap_idx.size:
        slant = np.linalg.norm(sat_xyz[sat_idx] - hap_xyz[hap_idx], axis=-1)
        weight = (scenario.reference_range_km / slant) ** 2
    else:
        weight = np.empty(0, dtype=np.float64)
    hap_ptr = np.zeros(scenario.num_haps + 1, dtype=np.int64)
    np.add.at(hap_ptr, hap_idx + 1, 1)
    np.cumsum(hap_ptr, out=hap_ptr)
    return VisibilityGraph(
        num_sats=scenario.constellation.num_satellites,
        num_haps=scenario.num_haps,
        timestamp_s=float(t),
        hap_ptr=hap_ptr,
        edge_sat=sat_idx,
        edge_weight=weight.astype(np.float64),
    )


def contact_plan_records(terg: Terg) -> list[dict]:
    """One record per window; field names fixed by the export format."""
    return [
        {"sat_index": w.sat_index, "hap_id": w.hap_id,
         "start_s": w.start_s, "end_s": w.end_s}
        for w in terg.windows
    ]


def contact_plan_csv(terg: Terg) -> str:
    lines = ["sat_index,hap_id,start_s,end_s"]
    for w in terg.windows:
        lines.append(f"{w.sat_index},{w.hap_id},{w.start_s!r},{w.end_s!r}")
    return "\n".join(lines) + "\n"


def terg_to_dict(terg: Terg) -> dict:
    """Structured-object export of the TERG."""
    return {
        "horizon_s": terg.horizon_s,
        "elements": list(terg.elements),
        "windows": contact_plan_records(terg),
    }
