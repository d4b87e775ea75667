"""Exception types shared across the package."""


class SagsimError(Exception):
    """Base class for all sagsim errors."""


class InvalidParameterError(SagsimError, ValueError):
    """A parameter violates its documented constraint."""


class DegenerateGeometryError(SagsimError, ValueError):
    """Geometry query on coincident or zero-length vectors."""


class SizeLimitError(SagsimError, ValueError):
    """Instance exceeds the enumeration guard of the brute-force solver."""


class ConfigError(SagsimError, ValueError):
    """Config file or override could not be parsed or validated."""
