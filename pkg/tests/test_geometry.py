import numpy as np
import pytest
from scipy.optimize import brentq

from sagsim.errors import DegenerateGeometryError, InvalidParameterError
from sagsim.geometry import (
    ConstellationSpec,
    EarthModel,
    EcefPosition,
    HapSite,
    elevation_angle,
    hap_position,
    hap_positions,
    is_visible,
    orbital_period,
    relative_period,
    sample_hap_sites,
    satellite_position,
    satellite_positions,
    signal_strength,
    slant_range,
)

EARTH = EarthModel()
CONST = ConstellationSpec()
R_HAP = 6391.0   # 6371 + 20
R_SAT = 7785.0   # 6371 + 1414
ZENITH_RANGE = R_SAT - R_HAP


def closed_form_elevation(gamma_deg, r_obs, r_sat):
    # independent check: el = atan((cos g - r_obs/r_sat) / sin g)
    g = np.radians(gamma_deg)
    return np.degrees(np.arctan((np.cos(g) - r_obs / r_sat) / np.sin(g)))


def law_of_cosines_range(gamma_deg, r_obs, r_sat):
    g = np.radians(gamma_deg)
    return np.sqrt(r_obs**2 + r_sat**2 - 2.0 * r_obs * r_sat * np.cos(g))


def shell_pair(gamma_deg, r_obs, r_sat, rng):
    """Observer/target separated by an exact central angle on given shells."""
    u = rng.normal(size=3)
    u /= np.linalg.norm(u)
    v = rng.normal(size=3)
    v -= (v @ u) * u
    v /= np.linalg.norm(v)
    g = np.radians(gamma_deg)
    return r_obs * u, r_sat * (np.cos(g) * u + np.sin(g) * v)


class TestOrbitalPeriod:
    def test_value_at_default_altitude(self):
        t = orbital_period(EARTH, 1414.0)
        assert abs(t - 6836.0) <= 5.0
        # inside the configured period band
        assert 114 * 60 - 30 <= t <= 130 * 60

    def test_limit_at_vanishing_altitude(self):
        assert orbital_period(EARTH, 1e-9) == pytest.approx(5060.84, abs=0.5)

    def test_monotone_in_altitude(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            h1, h2 = sorted(rng.uniform(1.0, 40000.0, 2))
            if h1 == h2:
                continue
            assert orbital_period(EARTH, h1) < orbital_period(EARTH, h2)

    def test_rejects_nonpositive_altitude(self):
        with pytest.raises(InvalidParameterError):
            orbital_period(EARTH, 0.0)
        with pytest.raises(InvalidParameterError):
            orbital_period(EARTH, -100.0)


class TestSatellitePosition:
    def test_phase_origin(self):
        p = satellite_position(EARTH, CONST, 0, 0.0)
        assert (p.x_km, p.y_km, p.z_km) == (7785.0, 0.0, 0.0)

    def test_even_spacing(self):
        xyz = satellite_positions(EARTH, CONST, [1234.5])[0]
        for i in range(6):
            a, b = xyz[i], xyz[(i + 1) % 6]
            cosang = (a @ b) / (np.linalg.norm(a) * np.linalg.norm(b))
            assert np.degrees(np.arccos(np.clip(cosang, -1, 1))) == pytest.approx(60.0, abs=1e-9)

    @pytest.mark.parametrize("rotation", [True, False])
    def test_periodicity(self, rotation):
        t_rel = relative_period(EARTH, CONST.altitude_km, rotation)
        p0 = satellite_position(EARTH, CONST, 0, 0.0, rotation).as_array()
        p1 = satellite_position(EARTH, CONST, 0, t_rel, rotation).as_array()
        assert np.linalg.norm(p1 - p0) <= 1e-9 * np.linalg.norm(p0)

    def test_rotation_flag_changes_rate(self):
        on = satellite_position(EARTH, CONST, 0, 600.0, True)
        off = satellite_position(EARTH, CONST, 0, 600.0, False)
        assert on.as_array() != pytest.approx(off.as_array())

    def test_index_out_of_range(self):
        with pytest.raises(InvalidParameterError):
            satellite_position(EARTH, CONST, 6, 0.0)
        with pytest.raises(InvalidParameterError):
            satellite_position(EARTH, CONST, -1, 0.0)

    def test_negative_time_rejected(self):
        with pytest.raises(InvalidParameterError):
            satellite_position(EARTH, CONST, 0, -1.0)


class TestHapPosition:
    def test_equatorial_site(self):
        p = hap_position(EARTH, HapSite(0, 0.0, 0.0, 20.0))
        assert p.as_array() == pytest.approx([6391.0, 0.0, 0.0], abs=1e-9)

    def test_polar_site(self):
        p = hap_position(EARTH, HapSite(0, 90.0, 0.0, 20.0))
        assert p.as_array() == pytest.approx([0.0, 0.0, 6391.0], abs=1e-9)

    def test_radius_invariant(self):
        sites = sample_hap_sites(30, 20.0, 20.0, seed=7)
        radii = np.linalg.norm(hap_positions(EARTH, sites), axis=1)
        assert radii == pytest.approx(6391.0, rel=1e-12)

    def test_site_validation(self):
        with pytest.raises(InvalidParameterError):
            HapSite(0, 91.0, 0.0)
        with pytest.raises(InvalidParameterError):
            HapSite(0, 0.0, 360.0)
        with pytest.raises(InvalidParameterError):
            HapSite(0, 0.0, 0.0, altitude_km=0.0)


class TestElevation:
    def test_target_overhead(self):
        el = elevation_angle(EcefPosition(6391.0, 0, 0), EcefPosition(7785.0, 0, 0))
        assert el == pytest.approx(90.0, abs=1e-9)

    def test_at_26_degrees_central_angle(self):
        rng = np.random.default_rng(2)
        obs, tgt = shell_pair(26.0, R_HAP, R_SAT, rng)
        el = elevation_angle(obs, tgt)
        assert el == pytest.approx(closed_form_elevation(26.0, R_HAP, R_SAT), abs=1e-6)
        assert el == pytest.approx(10.07, abs=0.05)

    def test_below_horizon_at_90_degrees(self):
        rng = np.random.default_rng(3)
        obs, tgt = shell_pair(90.0, R_HAP, R_SAT, rng)
        assert elevation_angle(obs, tgt) < 0.0

    def test_coincident_raises(self):
        p = EcefPosition(7000.0, 0, 0)
        with pytest.raises(DegenerateGeometryError):
            elevation_angle(p, p)
        with pytest.raises(DegenerateGeometryError):
            elevation_angle(EcefPosition(0, 0, 0), p)

    def test_closed_form_agreement_bulk(self):
        rng = np.random.default_rng(4)
        for _ in range(2000):
            gamma = rng.uniform(0.5, 179.5)
            r_obs = rng.uniform(6371.0, 6421.0)
            r_sat = rng.uniform(6800.0, 9400.0)
            obs, tgt = shell_pair(gamma, r_obs, r_sat, rng)
            el = elevation_angle(obs, tgt)
            assert -90.0 <= el <= 90.0
            assert el == pytest.approx(
                closed_form_elevation(gamma, r_obs, r_sat), abs=1e-6)
            assert slant_range(obs, tgt) == pytest.approx(
                law_of_cosines_range(gamma, r_obs, r_sat), rel=1e-9)

    def test_visibility_limit_central_angle(self):
        root = brentq(lambda g: closed_form_elevation(g, R_HAP, R_SAT) - 10.0,
                      1.0, 89.0, xtol=1e-10)
        assert root == pytest.approx(26.0, abs=0.2)


class TestSlantRange:
    def test_overhead_is_shell_difference(self):
        d = slant_range(EcefPosition(6391.0, 0, 0), EcefPosition(7785.0, 0, 0))
        assert d == 1394.0

    def test_at_26_degrees(self):
        rng = np.random.default_rng(5)
        obs, tgt = shell_pair(26.0, R_HAP, R_SAT, rng)
        assert slant_range(obs, tgt) == pytest.approx(3466.0, abs=1.0)

    def test_symmetry(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            a, b = rng.uniform(-9000, 9000, 3), rng.uniform(-9000, 9000, 3)
            assert slant_range(a, b) == slant_range(b, a)


class TestSignalStrength:
    def test_zenith_normalization(self):
        s = signal_strength(EcefPosition(6391.0, 0, 0), EcefPosition(7785.0, 0, 0),
                            ZENITH_RANGE)
        assert s == 1.0

    def test_at_26_degrees(self):
        rng = np.random.default_rng(7)
        obs, tgt = shell_pair(26.0, R_HAP, R_SAT, rng)
        assert signal_strength(obs, tgt, ZENITH_RANGE) == pytest.approx(0.1618, abs=1e-3)

    def test_monotone_in_elevation(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            g1, g2 = sorted(rng.uniform(0.5, 80.0, 2))
            if g1 == g2:
                continue
            # smaller central angle -> higher elevation -> stronger signal
            o1, t1 = shell_pair(g1, R_HAP, R_SAT, rng)
            o2, t2 = shell_pair(g2, R_HAP, R_SAT, rng)
            assert elevation_angle(o1, t1) > elevation_angle(o2, t2)
            assert signal_strength(o1, t1, ZENITH_RANGE) > signal_strength(o2, t2, ZENITH_RANGE)

    def test_unit_interval_on_shells(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            obs, tgt = shell_pair(rng.uniform(0.0, 179.0), R_HAP, R_SAT, rng)
            assert 0.0 < signal_strength(obs, tgt, ZENITH_RANGE) <= 1.0

    def test_rejects_bad_reference(self):
        with pytest.raises(InvalidParameterError):
            signal_strength(EcefPosition(6391.0, 0, 0), EcefPosition(7785.0, 0, 0), 0.0)


class TestVisibility:
    @pytest.mark.parametrize("el,thresh,expected", [
        (10.0, 10.0, True),   # boundary is inclusive
        (9.99, 10.0, False),
        (90.0, 10.0, True),
        (-5.0, 10.0, False),
    ])
    def test_threshold(self, el, thresh, expected):
        assert is_visible(el, thresh) is expected


class TestHapSampling:
    def test_band_and_longitude_ranges(self):
        sites = sample_hap_sites(200, 20.0, 20.0, seed=11)
        lats = np.array([s.latitude_deg for s in sites])
        lons = np.array([s.longitude_deg for s in sites])
        assert np.all(np.abs(lats) <= 20.0)
        assert np.all((lons >= 0.0) & (lons < 360.0))
        assert [s.id for s in sites] == list(range(200))

    def test_seed_reproducibility(self):
        a = sample_hap_sites(20, 20.0, 20.0, seed=5)
        b = sample_hap_sites(20, 20.0, 20.0, seed=5)
        c = sample_hap_sites(20, 20.0, 20.0, seed=6)
        assert a == b
        assert a != c


class TestModelValidation:
    def test_earth_model(self):
        with pytest.raises(InvalidParameterError):
            EarthModel(radius_km=0.0)
        with pytest.raises(InvalidParameterError):
            EarthModel(mu_km3_s2=-1.0)

    def test_constellation(self):
        with pytest.raises(InvalidParameterError):
            ConstellationSpec(num_satellites=0)
        with pytest.raises(InvalidParameterError):
            ConstellationSpec(inclination_deg=53.0)
