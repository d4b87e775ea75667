"""Scenario configuration: one seeded, fully reproducible experiment setup."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameterError
from .geometry import (
    ConstellationSpec,
    EarthModel,
    HapSite,
    relative_period,
    sample_hap_sites,
)

KNOWN_SCHEMES = ("optimal", "greedy", "random")

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """SplitMix64 finalizer; the avalanche stage of the SplitMix64 RNG."""
    z = (x + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def mix_seed(base: int, k: int) -> int:
    """Derive child seed k from a base seed: splitmix64(base + k * golden).

    This is the documented rule for the random scheme's per-timestep seeds,
    so independent implementations can reproduce runs exactly.
    """
    return splitmix64((base + k * _GOLDEN) & _MASK64)


@dataclass
class ScenarioConfig:
    """All physical and experimental parameters of one seeded run.

    duration_s defaults to one revolution period measured in the Earth-fixed
    frame (the scenario is periodic, so longer horizons repeat).
    """

    earth: EarthModel = field(default_factory=EarthModel)
    constellation: ConstellationSpec = field(default_factory=ConstellationSpec)
    num_haps: int = 50
    hap_altitude_km: float = 20.0
    hap_lat_band_deg: float = 20.0
    min_elevation_deg: float = 10.0
    beam_cap: int = 3
    duration_s: float | None = None
    timestep_s: float = 60.0
    placement_seed: int = 0
    scheme_seeds: tuple[int, ...] = (0,)
    earth_rotation: bool = True
    schemes: tuple[str, ...] = KNOWN_SCHEMES

    def __post_init__(self):
        self.scheme_seeds = tuple(int(s) for s in self.scheme_seeds)
        self.schemes = tuple(self.schemes)
        if self.num_haps < 1:
            raise InvalidParameterError("num_haps must be >= 1")
        if self.hap_altitude_km <= 0:
            raise InvalidParameterError("hap_altitude_km must be > 0")
        if not 0.0 <= self.hap_lat_band_deg <= 90.0:
            raise InvalidParameterError("hap_lat_band_deg must be in [0, 90]")
        if not -90.0 <= self.min_elevation_deg <= 90.0:
            raise InvalidParameterError("min_elevation_deg must be in [-90, 90]")
        if self.beam_cap < 1:
            raise InvalidParameterError("beam_cap must be >= 1")
        if self.timestep_s <= 0:
            raise InvalidParameterError("timestep_s must be > 0")
        if self.duration_s is None:
            self.duration_s = relative_period(
                self.earth, self.constellation.altitude_km, self.earth_rotation
            )
        if self.duration_s < self.timestep_s:
            raise InvalidParameterError("duration_s must be >= timestep_s")
        if not self.schemes:
            raise InvalidParameterError("schemes must be non-empty")
        for s in self.schemes:
            if s not in KNOWN_SCHEMES:
                raise InvalidParameterError(
                    f"schemes entry {s!r} unknown; supported: {KNOWN_SCHEMES}"
                )
        if len(set(self.schemes)) != len(self.schemes):
            raise InvalidParameterError("schemes entries must be unique")
        if not self.scheme_seeds:
            raise InvalidParameterError("scheme_seeds must be non-empty")
        self._sites: list[HapSite] | None = None

    @property
    def sat_shell_radius_km(self) -> float:
        return self.earth.radius_km + self.constellation.altitude_km

    @property
    def hap_shell_radius_km(self) -> float:
        return self.earth.radius_km + self.hap_altitude_km

    @property
    def reference_range_km(self) -> float:
        """Zenith slant range: the normalization of the signal weight."""
        return self.sat_shell_radius_km - self.hap_shell_radius_km

    @property
    def random_seed(self) -> int:
        """Base seed of the random link-establishment scheme."""
        return self.scheme_seeds[0]

    def hap_sites(self) -> list[HapSite]:
        """HAP placement, sampled once from placement_seed and cached."""
        if self._sites is None:
            self._sites = sample_hap_sites(
                self.num_haps, self.hap_lat_band_deg, self.hap_altitude_km,
                self.placement_seed,
            )
        return self._sites

    def num_steps(self) -> int:
        return int(np.ceil(self.duration_s / self.timestep_s - 1e-12))

    def times(self) -> np.ndarray:
        """Timestep grid {0, timestep, ...} strictly below duration_s."""
        return np.arange(self.num_steps(), dtype=np.float64) * self.timestep_s
