"""Exception types shared across the package."""


class CograteError(Exception):
    """Base class for all package-specific errors."""


class NonHermitianInput(CograteError):
    """Matrix asymmetry exceeds the defensive symmetrization tolerance."""


class ZeroVector(CograteError):
    """An orthonormal complement of the zero vector was requested."""


class ZeroDistance(CograteError):
    """Two nodes of the topology coincide, so a path-loss gain is undefined."""


class DegenerateDenominator(CograteError):
    """The listening-fraction denominator vanishes while the numerator does not."""


class NoValidRoot(CograteError):
    """Neither closed-form power-split root lies within the clamping tolerance of [0, 1]."""


class NonPositiveLogArgument(CograteError):
    """A log argument of the asymptotic gain is not positive on the chosen branch."""


class ConfigError(CograteError):
    """Invalid run configuration; carries the offending field name."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class ChannelFileError(CograteError):
    """A fixed-channel JSON file could not be parsed into a realization."""
