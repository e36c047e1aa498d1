"""Single-photon wave packets and the Gaussian biphoton EPR amplitude."""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateCorrelationError,
    GridMismatchError,
    MassOutsideGridError,
    ZeroVectorError,
)
from .grid import FrequencyGrid, inner_product, to_time_2d

# Maximum Gaussian spectral mass allowed outside the grid interval.
TAIL_TOLERANCE = 1e-8


def gaussian_mass_outside(center: float, width: float, lo: float, hi: float) -> float:
    """Probability mass of N(center, width^2) outside [lo, hi]."""
    s = math.sqrt(2.0) * width
    return 0.5 * (math.erfc((center - lo) / s) + math.erfc((hi - center) / s))


@dataclass(frozen=True, eq=False)
class WavePacket:
    """Spectral amplitude f(omega) of one photon, unit-normalized on its grid.

    The emission time offset t0 is folded into the phases of `amplitudes` at
    construction; the field only records the value used.
    """

    grid: FrequencyGrid
    amplitudes: np.ndarray
    t0: float = 0.0

    def norm(self) -> float:
        return float(np.sqrt(inner_product(self.amplitudes, self.amplitudes, self.grid).real))


@dataclass(frozen=True)
class GaussianEPRParams:
    """Parameters of the Gaussian joint amplitude (correlation mu, width sigma)."""

    mu: float
    sigma: float
    omega1_center: float
    omega2_center: float

    def __post_init__(self):
        if not abs(self.mu) < 1.0:
            raise DegenerateCorrelationError(
                f"|mu| must be < 1 (ideal correlations are a limit), got mu={self.mu}"
            )
        if self.sigma <= 0.0:
            raise ValueError(f"sigma must be > 0, got {self.sigma}")
        if self.omega1_center <= 0.0 or self.omega2_center <= 0.0:
            raise ValueError("marginal centers must be positive frequencies")

    @property
    def omega0(self) -> float:
        """Pump frequency, exactly omega1_center + omega2_center."""
        return self.omega1_center + self.omega2_center


@dataclass(frozen=True, eq=False)
class BiphotonAmplitude:
    """Joint spectral amplitude F(omega, omega') on grid1 x grid2, unit norm.

    norm_correction records the discrete norm of the raw continuum samples
    before renormalization (1.0 means the grid already resolved the continuum
    normalization exactly).
    """

    grid1: FrequencyGrid
    grid2: FrequencyGrid
    values: np.ndarray
    params: GaussianEPRParams = None
    norm_correction: float = 1.0

    def norm(self) -> float:
        w = self.grid1.delta_omega * self.grid2.delta_omega
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * w))


def normalize(f, g: FrequencyGrid) -> WavePacket:
    """Scale f to unit quadrature norm."""
    f = np.asarray(f, dtype=np.complex128)
    n = np.sqrt(inner_product(f, f, g).real)
    if not n > 0.0:
        raise ZeroVectorError("cannot normalize a zero vector")
    return WavePacket(g, f / n)


def gaussian_packet(center: float, width: float, t0: float, g: FrequencyGrid) -> WavePacket:
    """Normalized packet f(omega) ~ exp(-(omega-center)^2/(4 width^2)) e^{-i omega t0}."""
    if width <= 0.0:
        raise ValueError(f"width must be > 0, got {width}")
    if not (g.omega_min < center < g.omega_max):
        raise MassOutsideGridError(
            f"packet center {center} outside grid [{g.omega_min}, {g.omega_max}]"
        )
    out = gaussian_mass_outside(center, width, g.omega_min, g.omega_max)
    if out > TAIL_TOLERANCE:
        raise MassOutsideGridError(
            f"{out:.3e} of the packet's spectral mass lies outside the grid "
            f"(tolerance {TAIL_TOLERANCE:.1e})"
        )
    w = g.points
    amp = np.exp(-((w - center) ** 2) / (4.0 * width**2)) * np.exp(-1j * w * t0)
    packet = normalize(amp, g)
    return WavePacket(g, packet.amplitudes, t0=t0)


def epr_tail_mass(p: GaussianEPRParams, g1: FrequencyGrid, g2: FrequencyGrid) -> float:
    """Largest out-of-band mass of the two |F|^2 marginals (each has std sigma)."""
    return max(
        gaussian_mass_outside(p.omega1_center, p.sigma, g1.omega_min, g1.omega_max),
        gaussian_mass_outside(p.omega2_center, p.sigma, g2.omega_min, g2.omega_max),
    )


def gaussian_epr_amplitude(
    p: GaussianEPRParams, g1: FrequencyGrid, g2: FrequencyGrid
) -> BiphotonAmplitude:
    """Sample the correlated Gaussian joint amplitude and renormalize on the grid.

    F(w, w') = (2 pi s^2 sqrt(1-mu^2))^(-1/2) exp(-P/2) with
    P = [(w-W1)^2 + (w'-W2)^2 - 2 mu (w-W1)(w'-W2)] / (2 s^2 (1-mu^2)).
    The |F|^2 marginals have variance s^2 and Var(w +/- w') = 2 s^2 (1 +/- mu).
    """
    out = epr_tail_mass(p, g1, g2)
    if out > TAIL_TOLERANCE:
        raise MassOutsideGridError(
            f"{out:.3e} of an EPR marginal lies outside the grid "
            f"(tolerance {TAIL_TOLERANCE:.1e})"
        )
    x = (g1.points - p.omega1_center)[:, None]
    y = (g2.points - p.omega2_center)[None, :]
    s2 = p.sigma**2
    quad = (x**2 + y**2 - 2.0 * p.mu * x * y) / (2.0 * s2 * (1.0 - p.mu**2))
    vals = np.exp(-0.5 * quad) / np.sqrt(2.0 * np.pi * s2 * np.sqrt(1.0 - p.mu**2))
    vals = vals.astype(np.complex128)
    raw_norm = np.sqrt(np.sum(np.abs(vals) ** 2) * g1.delta_omega * g2.delta_omega)
    if not raw_norm > 0.0:
        raise ZeroVectorError("joint amplitude vanished on the grid")
    return BiphotonAmplitude(g1, g2, vals / raw_norm, params=p, norm_correction=float(raw_norm))


def time_domain_amplitude(F: BiphotonAmplitude) -> np.ndarray:
    """Joint temporal amplitude F(t1, t2): the 2-D unitary Fourier image."""
    return to_time_2d(F.values, F.grid1, F.grid2)


def input_on_grid(f: WavePacket, g: FrequencyGrid) -> np.ndarray:
    """Amplitudes of f checked against grid g."""
    if f.amplitudes.shape != (g.n_points,):
        raise GridMismatchError("wave packet does not live on the expected grid")
    return f.amplitudes
