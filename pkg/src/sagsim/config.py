"""Line-oriented key = value configuration with dotted section prefixes.

Unset keys fall back to the scenario defaults; `--set key=value` overrides
are applied after file values. The full key reference lives in README.md.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError, InvalidParameterError, SagsimError
from .geometry import ConstellationSpec, EarthModel
from .scenario import ScenarioConfig

_BOOL_WORDS = {
    "true": True, "yes": True, "on": True, "1": True,
    "false": False, "no": False, "off": False, "0": False,
}


def _to_bool(text: str) -> bool:
    try:
        return _BOOL_WORDS[text.strip().lower()]
    except KeyError:
        raise ConfigError(f"expected a boolean (true/false), got {text!r}") from None


def _to_int(text: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ConfigError(f"expected an integer, got {text!r}") from None


def _to_float(text: str) -> float:
    try:
        return float(text.strip())
    except ValueError:
        raise ConfigError(f"expected a number, got {text!r}") from None


def _to_int_list(text: str) -> tuple[int, ...]:
    return tuple(_to_int(tok) for tok in text.split(",") if tok.strip())


def _to_str_list(text: str) -> tuple[str, ...]:
    return tuple(tok.strip() for tok in text.split(",") if tok.strip())


def _to_str(text: str) -> str:
    return text.strip()


# key -> converter; dotted prefixes play the role of config sections
KEY_CONVERTERS = {
    "earth.radius_km": _to_float,
    "earth.mu_km3_s2": _to_float,
    "earth.sidereal_rate_rad_s": _to_float,
    "constellation.num_satellites": _to_int,
    "constellation.altitude_km": _to_float,
    "constellation.inclination_deg": _to_float,
    "constellation.initial_phase_deg": _to_float,
    "num_haps": _to_int,
    "hap_altitude_km": _to_float,
    "hap_lat_band_deg": _to_float,
    "min_elevation_deg": _to_float,
    "beam_cap": _to_int,
    "duration_s": _to_float,
    "timestep_s": _to_float,
    "placement_seed": _to_int,
    "scheme_seeds": _to_int_list,
    "earth_rotation": _to_bool,
    "schemes": _to_str_list,
    "sweep.param": _to_str,
    "sweep.values": _to_str,
    "sweep.replications": _to_int,
    "contacts.horizon_s": _to_float,
    "contacts.coarse_step_s": _to_float,
    "contacts.refine_tol_s": _to_float,
    "contacts.profile_step_s": _to_float,
}


@dataclass
class LoadedConfig:
    """A validated scenario plus the sweep/contacts settings read with it."""

    scenario: ScenarioConfig
    sweep_param: str | None = None
    sweep_values: str | None = None
    sweep_replications: int | None = None
    contacts_horizon_s: float | None = None
    contacts_coarse_step_s: float = 60.0
    contacts_refine_tol_s: float = 0.1
    contacts_profile_step_s: float | None = None


def read_key_values(path: str) -> dict[str, str]:
    """Parse a config file into raw key -> value text, with diagnostics."""
    items: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            raise ConfigError(
                f"{path}:{lineno}: section headers are not supported; "
                "use dotted keys like earth.radius_km"
            )
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, value = line.split("=", 1)
        items[key.strip()] = value.strip()
    return items


def apply_overrides(items: dict[str, str], overrides) -> dict[str, str]:
    """Apply repeatable key=value overrides on top of file values."""
    out = dict(items)
    for entry in overrides or ():
        if "=" not in entry:
            raise ConfigError(f"override {entry!r} is not of the form key=value")
        key, value = entry.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _convert(items: dict[str, str]) -> dict[str, object]:
    known = sorted(KEY_CONVERTERS)
    typed: dict[str, object] = {}
    for key, text in items.items():
        if key not in KEY_CONVERTERS:
            raise ConfigError(
                f"unknown config key {key!r}; known keys: {', '.join(known)}"
            )
        try:
            typed[key] = KEY_CONVERTERS[key](text)
        except ConfigError as exc:
            raise ConfigError(f"key {key}: {exc}") from None
    return typed


def load_config(path: str | None = None, overrides=()) -> LoadedConfig:
    """Load scenario + sweep/contacts settings from a file and overrides.

    path=None starts from the pure-default scenario; overrides always win
    over file values.
    """
    items = read_key_values(path) if path is not None else {}
    typed = _convert(apply_overrides(items, overrides))

    def pick(prefix: str, cls, defaults: dict):
        kwargs = dict(defaults)
        for key, value in typed.items():
            if key.startswith(prefix + "."):
                kwargs[key[len(prefix) + 1:]] = value
        return cls(**kwargs)

    try:
        earth = pick("earth", EarthModel, {})
        constellation = pick("constellation", ConstellationSpec, {})
        scenario_kwargs = {
            key: value for key, value in typed.items()
            if "." not in key
        }
        scenario = ScenarioConfig(earth=earth, constellation=constellation,
                                  **scenario_kwargs)
    except InvalidParameterError as exc:
        raise ConfigError(str(exc)) from exc
    except SagsimError:
        raise
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc

    loaded = LoadedConfig(scenario=scenario)
    if "sweep.param" in typed:
        loaded.sweep_param = typed["sweep.param"]
    if "sweep.values" in typed:
        loaded.sweep_values = typed["sweep.values"]
    if "sweep.replications" in typed:
        loaded.sweep_replications = typed["sweep.replications"]
    if "contacts.horizon_s" in typed:
        loaded.contacts_horizon_s = typed["contacts.horizon_s"]
    if "contacts.coarse_step_s" in typed:
        loaded.contacts_coarse_step_s = typed["contacts.coarse_step_s"]
    if "contacts.refine_tol_s" in typed:
        loaded.contacts_refine_tol_s = typed["contacts.refine_tol_s"]
    if "contacts.profile_step_s" in typed:
        loaded.contacts_profile_step_s = typed["contacts.profile_step_s"]
    return loaded


def parse_config(path: str | None = None, overrides=()) -> ScenarioConfig:
    """Validated ScenarioConfig from a config file plus overrides."""
    return load_config(path, overrides).scenario
