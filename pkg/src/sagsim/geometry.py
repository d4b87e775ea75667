"""Orbit and line-of-sight geometry for the satellite-HAP relay scenario.

Everything lives in an Earth-centered Earth-fixed (ECEF) frame with km,
seconds, and degrees. HAP platforms are static in this frame; satellites on
the single equatorial plane move at the orbital rate minus the sidereal rate
(prograde orbit seen from the rotating Earth) unless Earth rotation is
switched off.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeometryError, InvalidParameterError

DEG2RAD = np.pi / 180.0
RAD2DEG = 180.0 / np.pi

# zenith slant range of the default shells: (6371 + 1414) - (6371 + 20)
DEFAULT_REFERENCE_RANGE_KM = 1394.0


@dataclass(frozen=True)
class EarthModel:
    """Spherical Earth with gravitational parameter and rotation rate."""

    radius_km: float = 6371.0
    mu_km3_s2: float = 398600.4418
    sidereal_rate_rad_s: float = 7.2921159e-5

    def __post_init__(self):
        if self.radius_km <= 0:
            raise InvalidParameterError("radius_km must be > 0")
        if self.mu_km3_s2 <= 0:
            raise InvalidParameterError("mu_km3_s2 must be > 0")
        if self.sidereal_rate_rad_s < 0:
            raise InvalidParameterError("sidereal_rate_rad_s must be >= 0")


@dataclass(frozen=True)
class ConstellationSpec:
    """Evenly spaced satellites on one circular equatorial plane."""

    num_satellites: int = 6
    altitude_km: float = 1414.0
    inclination_deg: float = 0.0
    initial_phase_deg: float = 0.0

    def __post_init__(self):
        if self.num_satellites < 1:
            raise InvalidParameterError("num_satellites must be >= 1")
        if self.altitude_km <= 0:
            raise InvalidParameterError("altitude_km must be > 0")
        if self.inclination_deg != 0.0:
            raise InvalidParameterError(
                "inclination_deg must be 0 (only the single equatorial plane "
                "is supported)"
            )


@dataclass(frozen=True)
class HapSite:
    """A quasi-stationary high-altitude platform pinned to the ECEF frame."""

    id: int
    latitude_deg: float
    longitude_deg: float
    altitude_km: float = 20.0

    def __post_init__(self):
        if not -90.0 <= self.latitude_deg <= 90.0:
            raise InvalidParameterError("latitude_deg must be in [-90, 90]")
        if not 0.0 <= self.longitude_deg < 360.0:
            raise InvalidParameterError("longitude_deg must be in [0, 360)")
        if self.altitude_km <= 0:
            raise InvalidParameterError("altitude_km must be > 0")


@dataclass(frozen=True)
class EcefPosition:
    """Cartesian position in the Earth-centered Earth-fixed frame, km."""

    x_km: float
    y_km: float
    z_km: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x_km, self.y_km, self.z_km], dtype=np.float64)


def _as_xyz(p) -> np.ndarray:
    if isinstance(p, EcefPosition):
        return p.as_array()
    return np.asarray(p, dtype=np.float64)


def orbital_period(earth: EarthModel, altitude_km: float) -> float:
    """Circular-orbit period in seconds: 2*pi*sqrt(a^3/mu), a = R + h."""
    if altitude_km <= 0:
        raise InvalidParameterError("altitude_km must be > 0")
    a = earth.radius_km + altitude_km
    return float(2.0 * np.pi * np.sqrt(a**3 / earth.mu_km3_s2))


def effective_rate(earth: EarthModel, altitude_km: float,
                   earth_rotation: bool = True) -> float:
    """Angular rate of a satellite as seen from the rotating Earth, rad/s."""
    rate = 2.0 * np.pi / orbital_period(earth, altitude_km)
    if earth_rotation:
        rate -= earth.sidereal_rate_rad_s
    if rate <= 0:
        raise InvalidParameterError(
            "orbit is not prograde-faster-than-Earth; relative rate <= 0"
        )
    return float(rate)


def relative_period(earth: EarthModel, altitude_km: float,
                    earth_rotation: bool = True) -> float:
    """Revolution period measured in the Earth-fixed frame, seconds."""
    return float(2.0 * np.pi / effective_rate(earth, altitude_km, earth_rotation))


def satellite_longitude_rad(earth: EarthModel, spec: ConstellationSpec,
                            sat_index: int, t: float,
                            earth_rotation: bool = True) -> float:
    """Equatorial longitude of one satellite at time t, radians."""
    if not 0 <= sat_index < spec.num_satellites:
        raise InvalidParameterError(
            f"sat_index {sat_index} out of range [0, {spec.num_satellites})"
        )
    if t < 0:
        raise InvalidParameterError("t must be >= 0")
    phase0 = spec.initial_phase_deg + sat_index * (360.0 / spec.num_satellites)
    rate = effective_rate(earth, spec.altitude_km, earth_rotation)
    return phase0 * DEG2RAD + rate * t


def satellite_position(earth: EarthModel, spec: ConstellationSpec,
                       sat_index: int, t: float,
                       earth_rotation: bool = True) -> EcefPosition:
    """ECEF position of one satellite at time t (z is always 0)."""
    lon = satellite_longitude_rad(earth, spec, sat_index, t, earth_rotation)
    r = earth.radius_km + spec.altitude_km
    return EcefPosition(float(r * np.cos(lon)), float(r * np.sin(lon)), 0.0)


def satellite_positions(earth: EarthModel, spec: ConstellationSpec,
                        times, earth_rotation: bool = True) -> np.ndarray:
    """Batch satellite positions; shape (len(times), num_satellites, 3)."""
    times = np.atleast_1d(np.asarray(times, dtype=np.float64))
    if np.any(times < 0):
        raise InvalidParameterError("t must be >= 0")
    idx = np.arange(spec.num_satellites)
    phase0 = (spec.initial_phase_deg + idx * (360.0 / spec.num_satellites)) * DEG2RAD
    rate = effective_rate(earth, spec.altitude_km, earth_rotation)
    lon = phase0[None, :] + rate * times[:, None]
    r = earth.radius_km + spec.altitude_km
    out = np.empty((times.size, spec.num_satellites, 3), dtype=np.float64)
    out[:, :, 0] = r * np.cos(lon)
    out[:, :, 1] = r * np.sin(lon)
    out[:, :, 2] = 0.0
    return out


def hap_position(earth: EarthModel, site: HapSite) -> EcefPosition:
    """ECEF position of a HAP site; time-invariant in this frame."""
    r = earth.radius_km + site.altitude_km
    lat = site.latitude_deg * DEG2RAD
    lon = site.longitude_deg * DEG2RAD
    return EcefPosition(
        float(r * np.cos(lat) * np.cos(lon)),
        float(r * np.cos(lat) * np.sin(lon)),
        float(r * np.sin(lat)),
    )


def hap_positions(earth: EarthModel, sites) -> np.ndarray:
    """Batch HAP positions; shape (len(sites), 3)."""
    out = np.empty((len(sites), 3), dtype=np.float64)
    for i, site in enumerate(sites):
        p = hap_position(earth, site)
        out[i, 0], out[i, 1], out[i, 2] = p.x_km, p.y_km, p.z_km
    return out


def elevation_angle(observer, target):
    """Elevation of target above the observer's local horizontal, degrees.

    Accepts EcefPosition or (..., 3) arrays (broadcast). The result is
    asin(u . d / |d|) with u the observer's zenith unit vector and
    d = target - observer, hence always in [-90, 90].
    """
    obs = _as_xyz(observer)
    tgt = _as_xyz(target)
    d = tgt - obs
    d_norm = np.linalg.norm(d, axis=-1)
    obs_norm = np.linalg.norm(obs, axis=-1)
    if np.any(obs_norm == 0.0):
        raise DegenerateGeometryError("observer at Earth center")
    if np.any(d_norm == 0.0):
        raise DegenerateGeometryError("observer and target coincide")
    sin_el = np.sum(obs * d, axis=-1) / (obs_norm * d_norm)
    el = np.arcsin(np.clip(sin_el, -1.0, 1.0)) * RAD2DEG
    return float(el) if np.ndim(el) == 0 else el


def slant_range(observer, target):
    """Euclidean observer-to-target distance, km."""
    d = np.linalg.norm(_as_xyz(target) - _as_xyz(observer), axis=-1)
    return float(d) if np.ndim(d) == 0 else d


def signal_strength(observer, satellite,
                    reference_range_km: float = DEFAULT_REFERENCE_RANGE_KM):
    """Normalized link weight (reference_range / slant_range)^2.

    Equals 1 at zenith when the reference range is the zenith slant range
    (the default covers the standard shells), and decreases monotonically
    with slant range, so it increases with elevation for fixed shells.
    """
    if reference_range_km <= 0:
        raise InvalidParameterError("reference_range_km must be > 0")
    rng = slant_range(observer, satellite)
    return (reference_range_km / rng) ** 2


def is_visible(elevation_deg, min_elevation_deg):
    """True when elevation meets the minimum, boundary inclusive."""
    vis = np.greater_equal(elevation_deg, min_elevation_deg)
    return bool(vis) if np.ndim(vis) == 0 else vis


def sample_hap_sites(num_haps: int, lat_band_deg: float, altitude_km: float,
                     seed: int) -> list[HapSite]:
    """Draw HAP sites uniformly in latitude band and longitude from a seed.

    Latitudes are uniform in [-lat_band_deg, +lat_band_deg]; an equatorial
    constellation at the default geometry cannot see above ~26 deg latitude,
    so the band keeps every site servable.
    """
    if num_haps < 1:
        raise InvalidParameterError("num_haps must be >= 1")
    if lat_band_deg < 0 or lat_band_deg > 90:
        raise InvalidParameterError("lat_band_deg must be in [0, 90]")
    rng = np.random.default_rng(seed)
    lats = rng.uniform(-lat_band_deg, lat_band_deg, num_haps)
    lons = rng.uniform(0.0, 360.0, num_haps)
    return [
        HapSite(id=i, latitude_deg=float(lats[i]), longitude_deg=float(lons[i]),
                altitude_km=altitude_km)
        for i in range(num_haps)
    ]
