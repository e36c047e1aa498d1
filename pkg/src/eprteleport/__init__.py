"""Deterministic simulator of single-photon wave-packet teleportation through
an energy-time entangled photon pair: discrete POVMs, conditional states, and
the fidelity-versus-efficiency trade-off on Fourier-conjugate grids."""

from .errors import (
    ConfigError,
    DegenerateCorrelationError,
    EprTeleportError,
    GridMismatchError,
    MassOutsideGridError,
    MirrorOffGridError,
    NegativeFrequencyError,
    OffGridOutcomeError,
    WindowExceedsGridError,
    ZeroProbabilityOutcomeError,
    ZeroVectorError,
)
from .grid import (
    FrequencyGrid,
    TimeGrid,
    conjugate_time_grid,
    inner_product,
    make_frequency_grid,
)
from .states import (
    BiphotonAmplitude,
    GaussianEPRParams,
    WavePacket,
    gaussian_epr_amplitude,
    gaussian_packet,
    normalize,
    time_domain_amplitude,
)
from .povm import (
    MeasurementOutcome,
    OutcomeGridET,
    completeness_residual,
    completeness_vector_residual,
    energy_distribution,
    entangled_outcome_amplitude,
    joint_energy_distribution,
    joint_time_distribution,
    outcome_density,
    outcome_density_map,
    outcome_grid,
    time_distribution,
    total_outcome_probability,
)
from .teleport import (
    MIRROR_DERIVED,
    MIRROR_EQ17,
    ChannelMetrics,
    OutcomeTable,
    ReconstructionParams,
    TeleportResult,
    channel_metrics,
    fidelity,
    ideal_limit_state,
    outcome_table,
    reconstruction_map,
    teleport_once,
)

__version__ = "0.1.0"
