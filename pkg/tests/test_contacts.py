import json

import numpy as np
import pytest

from sagsim.contacts import (
    build_terg,
    contact_plan_csv,
    contact_plan_records,
    contact_windows,
    terg_snapshot,
    terg_to_dict,
)
from sagsim.errors import InvalidParameterError
from sagsim.geometry import (
    HapSite,
    elevation_angle,
    hap_positions,
    relative_period,
    satellite_positions,
)
from sagsim.matching import build_visibility_graph
from sagsim.scenario import ScenarioConfig

REFINE_TOL = 0.1


def small_scenario(**kwargs):
    defaults = dict(num_haps=4, placement_seed=21)
    defaults.update(kwargs)
    return ScenarioConfig(**defaults)


def pair_elevation(cfg, sat_index, hap_id, t):
    hap = hap_positions(cfg.earth, cfg.hap_sites())[hap_id]
    sat = satellite_positions(cfg.earth, cfg.constellation, [t],
                              cfg.earth_rotation)[0, sat_index]
    return float(elevation_angle(hap, sat))


class TestContactWindows:
    def test_zero_horizon(self):
        cfg = small_scenario()
        assert contact_windows(cfg, 0, 0, horizon_s=0.0) == []

    def test_out_of_band_hap_has_no_windows(self):
        cfg = small_scenario(num_haps=1)
        cfg._sites = [HapSite(0, 30.0, 200.0, 20.0)]  # beyond the ~26 deg limit
        assert contact_windows(cfg, 0, 0, horizon_s=cfg.duration_s) == []

    def test_bad_indices(self):
        cfg = small_scenario()
        with pytest.raises(InvalidParameterError):
            contact_windows(cfg, 6, 0, horizon_s=100.0)
        with pytest.raises(InvalidParameterError):
            contact_windows(cfg, 0, 99, horizon_s=100.0)

    def test_window_count_scales_with_periods(self):
        cfg = small_scenario(num_haps=1)
        cfg.constellation = type(cfg.constellation)(num_satellites=1)
        # site far from the satellite's start longitude: no window straddles t=0
        cfg._sites = [HapSite(0, 0.0, 180.0, 20.0)]
        t_rel = relative_period(cfg.earth, cfg.constellation.altitude_km, True)
        one = contact_windows(cfg, 0, 0, horizon_s=t_rel)
        three = contact_windows(cfg, 0, 0, horizon_s=3 * t_rel)
        assert len(one) >= 1
        assert len(three) == 3 * len(one)

    def test_periodic_shift(self):
        cfg = small_scenario(num_haps=1)
        cfg.constellation = type(cfg.constellation)(num_satellites=1)
        cfg._sites = [HapSite(0, 5.0, 170.0, 20.0)]
        t_rel = relative_period(cfg.earth, cfg.constellation.altitude_km, True)
        wins = contact_windows(cfg, 0, 0, horizon_s=2 * t_rel)
        first = [w for w in wins if w.end_s <= t_rel]
        second = [w for w in wins if w.start_s >= t_rel]
        assert len(first) == len(second) >= 1
        for a, b in zip(first, second):
            assert b.start_s - t_rel == pytest.approx(a.start_s, abs=3 * REFINE_TOL)
            assert b.end_s - t_rel == pytest.approx(a.end_s, abs=3 * REFINE_TOL)

    def test_boundaries_bracket_the_threshold(self):
        cfg = small_scenario()
        horizon = cfg.duration_s
        for sat in range(2):
            for hap in range(cfg.num_haps):
                for w in contact_windows(cfg, sat, hap, horizon):
                    for b in (w.start_s, w.end_s):
                        if b in (0.0, horizon):
                            continue  # clipped, not a threshold crossing
                        lo = pair_elevation(cfg, sat, hap, b - REFINE_TOL)
                        hi = pair_elevation(cfg, sat, hap, b + REFINE_TOL)
                        assert (lo >= 10.0) != (hi >= 10.0)

    def test_interior_samples_are_visible(self):
        cfg = small_scenario()
        for w in contact_windows(cfg, 0, 0, cfg.duration_s):
            for t in np.linspace(w.start_s + REFINE_TOL, w.end_s - REFINE_TOL, 7):
                assert pair_elevation(cfg, 0, 0, float(t)) >= 10.0 - 1e-6


class TestBuildTerg:
    def test_zero_horizon(self):
        terg = build_terg(small_scenario(), horizon_s=0.0)
        assert terg.windows == []
        assert len(terg.elements) == 6 + 4

    def test_windows_sorted_and_disjoint(self):
        cfg = small_scenario(num_haps=6)
        terg = build_terg(cfg)
        keys = [(w.sat_index, w.hap_id, w.start_s) for w in terg.windows]
        assert keys == sorted(keys)
        by_pair = {}
        for w in terg.windows:
            assert 0.0 <= w.start_s < w.end_s <= terg.horizon_s
            by_pair.setdefault((w.sat_index, w.hap_id), []).append(w)
        for wins in by_pair.values():
            for a, b in zip(wins, wins[1:]):
                assert a.end_s < b.start_s

    def test_matches_per_pair_computation(self):
        cfg = small_scenario()
        terg = build_terg(cfg, horizon_s=3000.0)
        for s in range(cfg.constellation.num_satellites):
            for h in range(cfg.num_haps):
                direct = contact_windows(cfg, s, h, horizon_s=3000.0)
                assert terg.windows_for(s, h) == direct

    def test_dense_sampling_agreement(self):
        # 1 s sampling as the independent oracle for window membership
        cfg = small_scenario(num_haps=3, placement_seed=8)
        cfg.constellation = type(cfg.constellation)(num_satellites=2)
        horizon = 6000.0
        terg = build_terg(cfg, horizon_s=horizon)
        ts = np.arange(0.0, horizon, 1.0)
        sats = satellite_positions(cfg.earth, cfg.constellation, ts,
                                   cfg.earth_rotation)
        haps = hap_positions(cfg.earth, cfg.hap_sites())
        el = elevation_angle(haps[None, :, None, :], sats[:, None, :, :])
        vis = el >= cfg.min_elevation_deg
        for s in range(2):
            for h in range(3):
                wins = terg.windows_for(s, h)
                for k, t in enumerate(ts):
                    near_boundary = any(
                        abs(t - w.start_s) <= 1.0 or abs(t - w.end_s) <= 1.0
                        for w in wins)
                    if near_boundary:
                        continue
                    in_window = any(w.contains(t) for w in wins)
                    assert in_window == bool(vis[k, h, s]), (s, h, t)
                # total coverage agrees with the sampled integral to step size
                covered = sum(w.duration_s for w in wins)
                sampled = float(np.sum(vis[:, h, s]))  # 1 s bins
                n_bounds = 2 * len(wins)
                assert abs(covered - sampled) <= n_bounds * 1.0 + 2.0

    def test_weight_profile_option(self):
        cfg = small_scenario(num_haps=2)
        terg = build_terg(cfg, horizon_s=4000.0, profile_step_s=30.0)
        if not terg.windows:
            pytest.skip("no windows in this placement")
        assert terg.weight_profile is not None
        for i, w in enumerate(terg.windows):
            sample_ts, strengths = terg.weight_profile[i]
            assert sample_ts[0] == w.start_s
            assert np.all(sample_ts <= w.end_s)
            assert np.all((strengths > 0.0) & (strengths <= 1.0))


class TestSnapshot:
    def test_inside_and_between_windows(self):
        cfg = small_scenario(num_haps=1)
        cfg.constellation = type(cfg.constellation)(num_satellites=1)
        cfg._sites = [HapSite(0, 0.0, 180.0, 20.0)]
        t_rel = relative_period(cfg.earth, cfg.constellation.altitude_km, True)
        terg = build_terg(cfg, horizon_s=2 * t_rel)
        w0, w1 = terg.windows[0], terg.windows[1]
        inside = terg_snapshot(terg, cfg, 0.5 * (w0.start_s + w0.end_s))
        assert inside.num_edges == 1
        between = terg_snapshot(terg, cfg, 0.5 * (w0.end_s + w1.start_s))
        assert between.num_edges == 0

    def test_outside_horizon_rejected(self):
        cfg = small_scenario()
        terg = build_terg(cfg, horizon_s=1000.0)
        with pytest.raises(InvalidParameterError):
            terg_snapshot(terg, cfg, 1000.1)
        with pytest.raises(InvalidParameterError):
            terg_snapshot(terg, cfg, -0.1)

    def test_agrees_with_direct_visibility(self):
        cfg = small_scenario(num_haps=5, placement_seed=13)
        terg = build_terg(cfg)
        rng = np.random.default_rng(0)
        checked = 0
        for t in rng.uniform(0.0, terg.horizon_s, 200):
            t = float(t)
            if any(abs(t - b) <= REFINE_TOL
                   for w in terg.windows for b in (w.start_s, w.end_s)):
                continue
            snap = terg_snapshot(terg, cfg, t)
            direct = build_visibility_graph(cfg, t)
            assert snap.edges() == direct.edges()
            checked += 1
        assert checked > 150


class TestExports:
    def test_csv_fields_and_stability(self):
        cfg = small_scenario()
        terg = build_terg(cfg, horizon_s=4000.0)
        csv1 = contact_plan_csv(terg)
        csv2 = contact_plan_csv(build_terg(cfg, horizon_s=4000.0))
        assert csv1 == csv2
        lines = csv1.strip().split("\n")
        assert lines[0] == "sat_index,hap_id,start_s,end_s"
        assert len(lines) == 1 + len(terg.windows)

    def test_records_and_dict(self):
        cfg = small_scenario()
        terg = build_terg(cfg, horizon_s=4000.0)
        recs = contact_plan_records(terg)
        for rec, w in zip(recs, terg.windows):
            assert list(rec) == ["sat_index", "hap_id", "start_s", "end_s"]
            assert rec["start_s"] == w.start_s
        d = terg_to_dict(terg)
        assert d["horizon_s"] == terg.horizon_s
        assert d["elements"][:2] == ["sat-0", "sat-1"]
        json.dumps(d)  # must be serializable as-is
