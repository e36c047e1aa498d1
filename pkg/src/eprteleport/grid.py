"""Uniform frequency/time grids and the unitary discrete Fourier bridge.

The frequency grid is a midpoint discretization of [omega_min, omega_max]
with all points strictly positive (the mode continuum lives on (0, inf)).
Its conjugate time grid obeys delta_t * delta_omega * n_points = 2*pi, so the
quadrature-weighted transform between the two grids is exactly unitary and
Parseval holds to machine precision.

All quantities are in angular frequency units (rad/s) and seconds; any
consistent pair of reciprocal units works the same way.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import GridMismatchError, NegativeFrequencyError

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True, eq=False)
class FrequencyGrid:
    """Midpoint grid omega_i = omega_min + (i + 1/2) * delta_omega."""

    omega_min: float
    delta_omega: float
    n_points: int
    points: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        if self.omega_min < 0.0:
            raise NegativeFrequencyError(
                f"omega_min must be >= 0, got {self.omega_min}"
            )
        if self.delta_omega <= 0.0:
            raise ValueError(f"delta_omega must be > 0, got {self.delta_omega}")
        if self.n_points < 2:
            raise ValueError(f"n_points must be >= 2, got {self.n_points}")
        if self.points is None:
            pts = self.omega_min + (np.arange(self.n_points) + 0.5) * self.delta_omega
            pts.setflags(write=False)
            object.__setattr__(self, "points", pts)

    @property
    def omega_max(self) -> float:
        return self.omega_min + self.n_points * self.delta_omega


@dataclass(frozen=True, eq=False)
class TimeGrid:
    """DFT-conjugate time grid t_k = (k - n_points//2) * delta_t, centered on 0."""

    n_points: int
    delta_t: float
    points: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        if self.points is None:
            pts = (np.arange(self.n_points) - self.n_points // 2) * self.delta_t
            pts.setflags(write=False)
            object.__setattr__(self, "points", pts)

    @property
    def center_index(self) -> int:
        return self.n_points // 2


def make_frequency_grid(omega_min: float, omega_max: float, n_points: int) -> FrequencyGrid:
    """Build the midpoint grid covering [omega_min, omega_max]."""
    if omega_min < 0.0:
        raise NegativeFrequencyError(f"omega_min must be >= 0, got {omega_min}")
    if not omega_max > omega_min:
        raise ValueError(f"need omega_min < omega_max, got [{omega_min}, {omega_max}]")
    if n_points < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points}")
    delta = (omega_max - omega_min) / n_points
    return FrequencyGrid(float(omega_min), float(delta), int(n_points))


def conjugate_time_grid(g: FrequencyGrid) -> TimeGrid:
    """Time grid conjugate to g: delta_t = 2*pi / (n_points * delta_omega)."""
    return TimeGrid(g.n_points, TWO_PI / (g.n_points * g.delta_omega))


def grids_equal(a: FrequencyGrid, b: FrequencyGrid, rtol: float = 1e-12) -> bool:
    """Same discretization up to floating representation."""
    if a is b:
        return True
    scale = max(abs(a.omega_min), a.delta_omega, 1e-300)
    return (
        a.n_points == b.n_points
        and abs(a.omega_min - b.omega_min) <= rtol * scale
        and abs(a.delta_omega - b.delta_omega) <= rtol * a.delta_omega
    )


def inner_product(a: np.ndarray, b: np.ndarray, g: FrequencyGrid) -> complex:
    """Quadrature inner product sum_i conj(a_i) b_i * delta_omega."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != (g.n_points,) or b.shape != (g.n_points,):
        raise GridMismatchError(
            f"vectors of shape {a.shape}, {b.shape} do not match grid size {g.n_points}"
        )
    return complex(np.vdot(a, b) * g.delta_omega)


def norm(a: np.ndarray, g: FrequencyGrid) -> float:
    return float(np.sqrt(inner_product(a, a, g).real))


def to_time(values, g: FrequencyGrid, tg: TimeGrid = None) -> np.ndarray:
    """Unitary bridge f(omega_i) -> (dw/sqrt(2pi)) * sum_i f_i exp(-i omega_i t_k).

    Computed with an FFT plus the phase factors that account for the grid
    offsets; agrees with the explicit kernel matrix to machine precision.
    """
    if tg is None:
        tg = conjugate_time_grid(g)
    f = np.asarray(values, dtype=np.complex128)
    if f.shape != (g.n_points,):
        raise GridMismatchError(f"shape {f.shape} does not match grid size {g.n_points}")
    x = np.roll(np.fft.fft(f), tg.center_index)
    phase = np.exp(-1j * g.points[0] * tg.points)
    return (g.delta_omega / np.sqrt(TWO_PI)) * phase * x


def from_time(values, g: FrequencyGrid, tg: TimeGrid = None) -> np.ndarray:
    """Inverse of to_time: (dt/sqrt(2pi)) * sum_k ftilde_k exp(+i omega_i t_k)."""
    if tg is None:
        tg = conjugate_time_grid(g)
    ft = np.asarray(values, dtype=np.complex128)
    if ft.shape != (tg.n_points,):
        raise GridMismatchError(f"shape {ft.shape} does not match grid size {tg.n_points}")
    y = ft * np.exp(1j * g.points[0] * tg.points)
    x = tg.n_points * np.fft.ifft(y)
    i = np.arange(g.n_points)
    x *= np.exp(-2j * np.pi * i * tg.center_index / g.n_points)
    return (tg.delta_t / np.sqrt(TWO_PI)) * x


def to_time_2d(values, g1: FrequencyGrid, g2: FrequencyGrid) -> np.ndarray:
    """2-D unitary bridge F(omega, omega') -> F(t1, t2), one axis per grid."""
    v = np.asarray(values, dtype=np.complex128)
    if v.shape != (g1.n_points, g2.n_points):
        raise GridMismatchError(
            f"shape {v.shape} does not match grids ({g1.n_points}, {g2.n_points})"
        )
    t1 = conjugate_time_grid(g1)
    t2 = conjugate_time_grid(g2)
    x = np.roll(np.fft.fft(v, axis=0), t1.center_index, axis=0)
    x *= np.exp(-1j * g1.points[0] * t1.points)[:, None]
    x = np.roll(np.fft.fft(x, axis=1), t2.center_index, axis=1)
    x *= np.exp(-1j * g2.points[0] * t2.points)[None, :]
    return (g1.delta_omega * g2.delta_omega / TWO_PI) * x


def dft_matrix(g: FrequencyGrid, tg: TimeGrid = None) -> np.ndarray:
    """Explicit kernel U[k, i] = (dw/sqrt(2pi)) exp(-i omega_i t_k).

    Independent of the FFT path; used by tests and small dense oracles.
    """
    if tg is None:
        tg = conjugate_time_grid(g)
    return (g.delta_omega / np.sqrt(TWO_PI)) * np.exp(
        -1j * np.outer(tg.points, g.points)
    )
