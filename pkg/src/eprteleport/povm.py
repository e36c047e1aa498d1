"""Energy, time, and entangled energy+time measurements as exact discrete
identity resolutions.

Discretization of the entangled measurement: two-photon basis pairs
(i1, i3) are partitioned into difference-frequency sectors d = i1 - i3, so
omega_minus = d * delta_omega / 2 on a lattice of spacing delta_omega / 2,
and within a sector the sum frequency Omega_plus runs uniformly in steps of
delta_omega.  The time outcomes are the full conjugate TimeGrid; within a
sector the t-transform is a zero-padded DFT, which keeps the per-sector
resolution complete.  Because the Omega_minus lattice is twice as dense as
the underlying frequency lattice, the cells double-cover the two-photon
space relative to the continuum measure dt dOmega_minus / (2 pi); the
discrete outcome density therefore carries 1/pi, which is the unique choice
making the summed POVM exactly the identity (checked by
completeness_residual).  Only positive grid frequencies ever enter, so the
positivity constraint on the Fock-state arguments holds by construction.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import GridMismatchError, OffGridOutcomeError
from .grid import (
    FrequencyGrid,
    TimeGrid,
    conjugate_time_grid,
    grids_equal,
    to_time,
)
from .states import BiphotonAmplitude, WavePacket, time_domain_amplitude

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True, eq=False)
class OutcomeGridET:
    """Outcome lattice (t_k, omega_minus_d) of the entangled measurement."""

    fgrid: FrequencyGrid
    tgrid: TimeGrid
    d_values: np.ndarray = field(default=None, repr=False)
    omega_minus_values: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        n = self.fgrid.n_points
        if self.d_values is None:
            d = np.arange(-(n - 1), n)
            d.setflags(write=False)
            object.__setattr__(self, "d_values", d)
        if self.omega_minus_values is None:
            om = self.d_values * (0.5 * self.fgrid.delta_omega)
            om.setflags(write=False)
            object.__setattr__(self, "omega_minus_values", om)

    @property
    def delta_omega_minus(self) -> float:
        return 0.5 * self.fgrid.delta_omega

    @property
    def n_sectors(self) -> int:
        return 2 * self.fgrid.n_points - 1

    @property
    def sector_lengths(self) -> np.ndarray:
        return self.fgrid.n_points - np.abs(self.d_values)

    def cell_count_check(self) -> bool:
        """Each two-photon basis pair belongs to exactly one sector."""
        return int(self.sector_lengths.sum()) == self.fgrid.n_points**2


@dataclass(frozen=True)
class MeasurementOutcome:
    """One (t, omega_minus) result with its probability density per dt dOmega_minus."""

    t: float
    omega_minus: float
    probability_density: float


def outcome_grid(g: FrequencyGrid) -> OutcomeGridET:
    return OutcomeGridET(g, conjugate_time_grid(g))


def sector_span(n: int, d: int):
    """(i1_start, i3_start, length) of the diagonal i1 - i3 = d."""
    return max(d, 0), max(-d, 0), n - abs(d)


def omega_plus_values(g: FrequencyGrid, d: int) -> np.ndarray:
    """Uniform Omega_plus = (omega_1 + omega_3)/2 values along sector d."""
    _, _, length = sector_span(g.n_points, d)
    j = np.arange(length)
    return g.omega_min + (abs(d) + 1 + 2 * j) * (0.5 * g.delta_omega)


def locate_outcome(og: OutcomeGridET, t: float, omega_minus: float):
    """Snap (t, omega_minus) to lattice indices (k, d); OffGridOutcome otherwise."""
    g = og.fgrid
    kf = t / og.tgrid.delta_t + og.tgrid.center_index
    k = int(round(kf))
    if abs(kf - k) > 1e-9 * (1.0 + abs(kf)) or not (0 <= k < og.tgrid.n_points):
        raise OffGridOutcomeError(f"t={t} is not on the time-outcome grid")
    df = omega_minus / og.delta_omega_minus
    d = int(round(df))
    if abs(df - d) > 1e-9 * (1.0 + abs(df)) or abs(d) > g.n_points - 1:
        raise OffGridOutcomeError(
            f"omega_minus={omega_minus} is not on the difference-frequency lattice"
        )
    return k, d


# ---------------------------------------------------------------------------
# Single-photon and joint distributions


def energy_distribution(f: WavePacket) -> np.ndarray:
    """|f(omega_i)|^2; sums (x delta_omega) to 1."""
    return np.abs(f.amplitudes) ** 2


def time_distribution(f: WavePacket) -> np.ndarray:
    """|ftilde(t_k)|^2; sums (x delta_t) to 1 by DFT unitarity."""
    return np.abs(to_time(f.amplitudes, f.grid)) ** 2


def joint_energy_distribution(F: BiphotonAmplitude) -> np.ndarray:
    """|F(omega_1, omega_2)|^2; sums (x delta_omega^2) to 1."""
    return np.abs(F.values) ** 2


def joint_time_distribution(F: BiphotonAmplitude) -> np.ndarray:
    """|F(t_1, t_2)|^2; sums (x delta_t^2) to 1."""
    return np.abs(time_domain_amplitude(F)) ** 2


# ---------------------------------------------------------------------------
# Entangled energy+time measurement


def _check_pipeline_grids(F: BiphotonAmplitude, f: WavePacket):
    if not grids_equal(F.grid1, f.grid):
        raise GridMismatchError("photon-1 grid must equal the input-photon grid")


def entangled_outcome_amplitude(
    F: BiphotonAmplitude, f: WavePacket, t: float, omega_minus: float
) -> np.ndarray:
    """Unnormalized conditional amplitude of photon 2 for outcome (t, omega_minus).

    psi2(omega_2) = sum_{Omega_plus} e^{-i Omega_plus t}
                    F(Omega_plus + Omega_minus, omega_2)
                    f(Omega_plus - Omega_minus) * delta_omega,
    where the sum runs over the Omega_plus values keeping both mode arguments
    on the positive-frequency grid.
    """
    _check_pipeline_grids(F, f)
    g = F.grid1
    og = outcome_grid(g)
    _, d = locate_outcome(og, t, omega_minus)
    i1, i3, length = sector_span(g.n_points, d)
    w_plus = omega_plus_values(g, d)
    coeff = np.exp(-1j * w_plus * t) * f.amplitudes[i3 : i3 + length]
    return g.delta_omega * (coeff @ F.values[i1 : i1 + length, :])


def outcome_density(
    F: BiphotonAmplitude, f: WavePacket, t: float, omega_minus: float
) -> float:
    """Probability density per (dt dOmega_minus); 1/pi measure (module docstring)."""
    amp = entangled_outcome_amplitude(F, f, t, omega_minus)
    return float(np.sum(np.abs(amp) ** 2) * F.grid2.delta_omega / np.pi)


def outcome_density_map(F: BiphotonAmplitude, f: WavePacket, backend=None):
    """Density over the full outcome lattice, shape (n_sectors, n_t)."""
    _check_pipeline_grids(F, f)
    g = F.grid1
    og = outcome_grid(g)
    norm2 = kernels.density_reductions(
        np.ascontiguousarray(F.values),
        np.ascontiguousarray(f.amplitudes),
        og.tgrid.center_index,
        backend=backend,
    )
    dw = g.delta_omega
    density = norm2 * (dw**2 * F.grid2.delta_omega / np.pi)
    return og, density


def total_outcome_probability(F: BiphotonAmplitude, f: WavePacket, backend=None) -> float:
    og, density = outcome_density_map(F, f, backend=backend)
    return float(density.sum() * og.tgrid.delta_t * og.delta_omega_minus)


# ---------------------------------------------------------------------------
# Completeness checks


def completeness_residual(
    g: FrequencyGrid, kind: str = "entangled", time_fraction: float = 1.0
) -> float:
    """Operator-norm residual of (sum of POVM elements - identity).

    kind="entangled": dense brute-force summation of every (t, omega_minus)
    element on the two-photon space (n_points <= 32).
    kind="energy": orthogonal bin projectors; residual is exactly 0.
    kind="time": single-photon time POVM summed over the conjugate TimeGrid.
    time_fraction < 1 deliberately truncates the t-range (incompleteness
    detection; the residual is reported, not hidden).
    """
    n = g.n_points
    tg = conjugate_time_grid(g)
    n_t = max(1, int(round(tg.n_points * time_fraction)))
    if kind == "energy":
        s = np.zeros((n, n))
        for i in range(n):
            s[i, i] += 1.0
        return float(np.max(np.abs(np.linalg.eigvalsh(s - np.eye(n)))))
    if kind == "time":
        s = np.zeros((n, n), dtype=np.complex128)
        w = g.delta_omega * tg.delta_t / TWO_PI
        for k in range(n_t):
            m = np.exp(1j * g.points * tg.points[k])
            s += w * np.outer(m, m.conj())
        return float(np.max(np.abs(np.linalg.eigvalsh(s - np.eye(n)))))
    if kind != "entangled":
        raise ValueError(f"unknown POVM kind {kind!r}")
    if n > 32:
        raise ValueError("dense entangled completeness is limited to n_points <= 32")
    dim = n * n
    s = np.zeros((dim, dim), dtype=np.complex128)
    # weight = quadrature (dw^2) x measure (dt dOmega_minus / 2 pi) x |m|^2 scale (2/dw^2)
    weight = 2.0 * tg.delta_t * (0.5 * g.delta_omega) / TWO_PI
    for d in range(-(n - 1), n):
        i1, i3, length = sector_span(n, d)
        idx = (i1 + np.arange(length)) * n + (i3 + np.arange(length))
        w_plus = omega_plus_values(g, d)
        for k in range(n_t):
            m = np.exp(1j * w_plus * tg.points[k])
            s[np.ix_(idx, idx)] += weight * np.outer(m, m.conj())
    return float(np.max(np.abs(np.linalg.eigvalsh(s - np.eye(dim)))))


def completeness_vector_residual(g: FrequencyGrid, seed: int = 0) -> float:
    """|| (sum of POVM elements) v - v || for a random normalized two-photon v.

    Applies every element explicitly (per-sector phase matrices, no FFT), so
    it is an independent check of the kernel discretization at any grid size.
    """
    n = g.n_points
    tg = conjugate_time_grid(g)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    v /= np.sqrt(np.sum(np.abs(v) ** 2)) * g.delta_omega  # unit two-photon norm
    out = np.zeros_like(v)
    weight = 2.0 * tg.delta_t * (0.5 * g.delta_omega) / TWO_PI
    for d in range(-(n - 1), n):
        i1s, i3s, length = sector_span(n, d)
        rows = i1s + np.arange(length)
        cols = i3s + np.arange(length)
        vec = v[rows, cols]
        e = np.exp(1j * np.outer(tg.points, omega_plus_values(g, d)))
        coeff = e.conj() @ vec
        out[rows, cols] += weight * (e.T @ coeff)
    diff = out - v
    return float(np.sqrt(np.sum(np.abs(diff) ** 2)) * g.delta_omega)


def dense_element(g: FrequencyGrid, k: int, d: int):
    """Dense (n^2 x n^2) matrix of one entangled POVM element (small grids)."""
    n = g.n_points
    tg = conjugate_time_grid(g)
    i1, i3, length = sector_span(n, d)
    idx = (i1 + np.arange(length)) * n + (i3 + np.arange(length))
    m = np.zeros(n * n, dtype=np.complex128)
    m[idx] = np.exp(1j * omega_plus_values(g, d) * tg.points[k])
    weight = 2.0 * tg.delta_t * (0.5 * g.delta_omega) / TWO_PI
    return weight * np.outer(m, m.conj())
