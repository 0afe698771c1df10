"""Exception hierarchy.

Errors raised while computing derive from :class:`ComputeError`; the CLI maps
them to exit status 3. Bad user input is a :class:`ConfigError` (exit 2).
"""


class RabiPatternError(Exception):
    """Base class for all package errors."""


class ConfigError(RabiPatternError, ValueError):
    """Malformed or inconsistent user configuration."""


class SchemaError(RabiPatternError, ValueError):
    """A CSV file does not match any declared schema."""


class ComputeError(RabiPatternError):
    """A numerical routine could not produce a trustworthy result."""


class TruncationInsufficient(ComputeError):
    pass


class NumericalInstability(ComputeError):
    pass


class NodePosition(ComputeError):
    pass


class GridTooCoarse(ComputeError):
    pass


class NoFringes(ComputeError):
    pass


class GridMismatch(ComputeError):
    pass


class NoFeasiblePoint(ComputeError):
    pass
