"""Exception types raised by the simulator."""


class EprTeleportError(Exception):
    """Base class for all package errors."""


class NegativeFrequencyError(EprTeleportError, ValueError):
    """Frequency grid would contain non-positive frequencies."""


class GridMismatchError(EprTeleportError, ValueError):
    """Operands live on different grids."""


class MassOutsideGridError(EprTeleportError, ValueError):
    """Too much Gaussian spectral mass falls outside the grid."""


class DegenerateCorrelationError(EprTeleportError, ValueError):
    """|mu| >= 1: the Gaussian joint amplitude is singular."""


class ZeroVectorError(EprTeleportError, ValueError):
    """Cannot normalize an (almost) zero vector."""


class OffGridOutcomeError(EprTeleportError, ValueError):
    """(t, omega_minus) does not lie on the measurement outcome lattice."""


class ZeroProbabilityOutcomeError(EprTeleportError, ValueError):
    """Conditioning on an outcome of (numerically) zero probability."""


class MirrorOffGridError(EprTeleportError, ValueError):
    """Frequency mirror of the input packet does not land on the grid."""


class WindowExceedsGridError(EprTeleportError, ValueError):
    """Acceptance window is larger than the outcome grid span."""


class ConfigError(EprTeleportError, ValueError):
    """Configuration file failed to parse or validate."""
