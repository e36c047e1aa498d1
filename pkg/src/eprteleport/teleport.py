"""Teleportation protocol: condition photon 2 on an entangled-measurement
outcome, apply the classically-informed reconstruction, score fidelity and
efficiency.

The reconstruction mirror center supports two conventions for turning the
broadcast (t, omega_minus) into omega_mirror:

  "eq17"    -> omega0 - omega_minus      (printed ideal-limit form)
  "derived" -> omega0 - 2 * omega_minus  (delta-substitution form)

They coincide at omega_minus = 0 and are discriminated empirically by the
verify suite; the reconstruction map itself is a scoring diagnostic, not a
physically realizable correction.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    GridMismatchError,
    MirrorOffGridError,
    WindowExceedsGridError,
    ZeroProbabilityOutcomeError,
)
from .grid import FrequencyGrid, grids_equal, inner_product
from .povm import (
    MeasurementOutcome,
    OutcomeGridET,
    entangled_outcome_amplitude,
    locate_outcome,
    omega_plus_values,
    outcome_grid,
    sector_span,
)
from .states import BiphotonAmplitude, WavePacket, normalize

TWO_PI = 2.0 * np.pi

MIRROR_EQ17 = "eq17"
MIRROR_DERIVED = "derived"
MIRROR_CONVENTIONS = (MIRROR_EQ17, MIRROR_DERIVED)


def mirror_center(omega0: float, omega_minus: float, convention: str) -> float:
    """Mirror center from the public pump frequency and the broadcast outcome."""
    if convention == MIRROR_EQ17:
        return omega0 - omega_minus
    if convention == MIRROR_DERIVED:
        return omega0 - 2.0 * omega_minus
    raise ValueError(f"unknown mirror convention {convention!r}")


@dataclass(frozen=True)
class ReconstructionParams:
    """Classically-informed reconstruction: frequency mirror + time phase."""

    mirror_center: float
    phase_time: float


@dataclass(frozen=True)
class TeleportResult:
    outcome: MeasurementOutcome
    conditional_state: WavePacket
    fidelity_raw: float
    fidelity_corrected: float
    reconstruction: ReconstructionParams
    mirror_interpolated: bool = False


def _mirror_nodes(g: FrequencyGrid, mc: float):
    """Mirrored value at omega_i sits at fractional grid index Q - i.

    Returns (qint, alpha) with Q = qint + alpha; alpha is snapped to 0 when
    the mirror lands on the lattice within 1e-9 * delta_omega.
    """
    q = (mc - 2.0 * g.omega_min) / g.delta_omega - 1.0
    qint = int(np.floor(q))
    alpha = q - qint
    if alpha <= 1e-9:
        alpha = 0.0
    elif alpha >= 1.0 - 1e-9:
        qint += 1
        alpha = 0.0
    return qint, float(alpha)


def _mirrored_values(values: np.ndarray, qint: int, alpha: float) -> np.ndarray:
    """values(mc - omega_i) with linear interpolation; zero off the grid."""
    n = values.shape[0]
    i = np.arange(n)
    jlo = qint - i
    lo_ok = (jlo >= 0) & (jlo < n)
    out = np.zeros(n, dtype=np.complex128)
    out[lo_ok] = (1.0 - alpha) * values[jlo[lo_ok]]
    if alpha > 0.0:
        jhi = jlo + 1
        hi_ok = (jhi >= 0) & (jhi < n)
        out[hi_ok] += alpha * values[jhi[hi_ok]]
    return out


def reconstruction_map(g_state: WavePacket, r: ReconstructionParams) -> WavePacket:
    """Normalized e^{+i omega t} * g(mirror_center - omega).

    Exact index flip when the mirror lands on the lattice; linear
    interpolation otherwise (flagged by the caller via mirror_interpolated).
    """
    g = g_state.grid
    qint, alpha = _mirror_nodes(g, r.mirror_center)
    vals = _mirrored_values(g_state.amplitudes, qint, alpha)
    vals *= np.exp(1j * g.points * r.phase_time)
    return normalize(vals, g)


def fidelity(a: WavePacket, b: WavePacket) -> float:
    """Pure-state fidelity |<a|b>|^2."""
    if not grids_equal(a.grid, b.grid):
        raise GridMismatchError("fidelity requires both packets on the same grid")
    return min(1.0, abs(inner_product(a.amplitudes, b.amplitudes, a.grid)) ** 2)


def ideal_limit_state(
    f_in: WavePacket, outcome, omega0: float, convention: str = MIRROR_EQ17
) -> WavePacket:
    """Analytic ideal-EPR teleported state g(omega_2) ~ e^{+i omega_2 t} f(mc - omega_2).

    The omega_2-dependent phase sign follows from conjugating the e^{i Omega_+ t}
    measurement kernel, making reconstruction_map its exact inverse.
    """
    t, om = outcome
    g = f_in.grid
    mc = mirror_center(omega0, om, convention)
    qint, alpha = _mirror_nodes(g, mc)
    if alpha != 0.0:
        raise MirrorOffGridError(
            f"mirror center {mc} is off the grid lattice by {alpha} bins"
        )
    mirrored = _mirrored_values(f_in.amplitudes, qint, 0.0)
    total = float(np.sum(np.abs(f_in.amplitudes) ** 2))
    kept = float(np.sum(np.abs(mirrored) ** 2))
    if total <= 0.0 or kept < (1.0 - 1e-8) * total:
        raise MirrorOffGridError("mirror image of the packet support falls off the grid")
    return normalize(mirrored * np.exp(1j * g.points * t), g)


def _resolve_omega0(F: BiphotonAmplitude, omega0):
    if omega0 is not None:
        return float(omega0)
    if F.params is None:
        raise ValueError("raw biphoton amplitude: pass omega0 (pump frequency) explicitly")
    return F.params.omega0


def _check_pipeline(F: BiphotonAmplitude, f_in: WavePacket):
    if not grids_equal(F.grid1, f_in.grid):
        raise GridMismatchError("photon-1 grid must equal the input-photon grid")
    if not grids_equal(F.grid2, F.grid1):
        raise GridMismatchError(
            "teleportation metrics need grid2 == grid1 (fidelities compare across them)"
        )


def teleport_once(
    F: BiphotonAmplitude,
    f_in: WavePacket,
    outcome,
    convention: str = MIRROR_EQ17,
    omega0: float = None,
) -> TeleportResult:
    """Condition photon 2 on one (t, omega_minus) outcome and score it."""
    _check_pipeline(F, f_in)
    g = F.grid1
    og = outcome_grid(g)
    k, d = locate_outcome(og, *outcome)
    t = float(og.tgrid.points[k])
    om = float(og.omega_minus_values[d + g.n_points - 1])
    amp = entangled_outcome_amplitude(F, f_in, t, om)
    density = float(np.sum(np.abs(amp) ** 2) * g.delta_omega / np.pi)
    if density < 1e-300:
        raise ZeroProbabilityOutcomeError(
            f"outcome (t={t}, omega_minus={om}) has zero probability density"
        )
    psi = normalize(amp, g)
    params = ReconstructionParams(
        mirror_center(_resolve_omega0(F, omega0), om, convention), t
    )
    _, alpha = _mirror_nodes(g, params.mirror_center)
    recon = reconstruction_map(psi, params)
    return TeleportResult(
        outcome=MeasurementOutcome(t, om, density),
        conditional_state=psi,
        fidelity_raw=fidelity(f_in, psi),
        fidelity_corrected=fidelity(f_in, recon),
        reconstruction=params,
        mirror_interpolated=alpha > 0.0,
    )


# ---------------------------------------------------------------------------
# Bulk outcome table (hot path)


@dataclass(frozen=True, eq=False)
class OutcomeTable:
    """Per-outcome density/probability/fidelity over the full (omega_minus, t) lattice."""

    ogrid: OutcomeGridET
    density: np.ndarray  # (n_sectors, n_t), per dt dOmega_minus
    probability: np.ndarray  # density * dt * dOmega_minus
    fidelity_raw: np.ndarray
    fidelity_corrected: np.ndarray
    alpha: np.ndarray  # per-sector mirror interpolation offset (0 = on-lattice)
    convention: str

    def argmax_outcome(self):
        """(k, d) indices of the maximum-density outcome."""
        dd, k = np.unravel_index(int(np.argmax(self.density)), self.density.shape)
        return int(k), int(self.ogrid.d_values[dd])

    @property
    def total_probability(self) -> float:
        return float(self.probability.sum())


def outcome_table(
    F: BiphotonAmplitude,
    f_in: WavePacket,
    convention: str = MIRROR_EQ17,
    omega0: float = None,
    backend=None,
) -> OutcomeTable:
    """Density and raw/corrected fidelity for every outcome in one kernel pass.

    Matches teleport_once outcome-by-outcome (same interpolation, same
    normalization of the reconstructed state) to floating-point accuracy.
    """
    _check_pipeline(F, f_in)
    g = F.grid1
    og = outcome_grid(g)
    n = g.n_points
    m = og.tgrid.center_index
    w0 = _resolve_omega0(F, omega0)

    fin = f_in.amplitudes
    n_d = og.n_sectors
    vlo_conj = np.zeros((n_d, n), dtype=np.complex128)
    vhi_conj = np.zeros((n_d, n), dtype=np.complex128)
    w_lo = np.zeros((n_d, n))
    w_hi = np.zeros((n_d, n))
    w_x = np.zeros((n_d, n))
    alpha = np.zeros(n_d)
    idx = np.arange(n)
    for dd in range(n_d):
        mc = mirror_center(w0, og.omega_minus_values[dd], convention)
        qint, a = _mirror_nodes(g, mc)
        alpha[dd] = a
        jlo = qint - idx
        ok = (jlo >= 0) & (jlo < n)
        vlo_conj[dd, ok] = fin[jlo[ok]].conj()
        w_lo[dd, ok] = 1.0
        jhi = jlo + 1
        ok_hi = (jhi >= 0) & (jhi < n)
        vhi_conj[dd, ok_hi] = fin[jhi[ok_hi]].conj()
        w_hi[dd, ok_hi] = 1.0
        w_x[dd, : n - 1] = w_lo[dd, : n - 1] * (ok & (jhi < n) & (jhi >= 0))[: n - 1]

    km = np.arange(n) - m
    phase = np.exp(-2j * np.pi * np.outer(km, idx + 0.5) / n)
    tau = np.exp(2j * np.pi * km / n)

    norm2, rawC, CA, CB, nA, nB, xC = kernels.outcome_reductions(
        np.ascontiguousarray(F.values),
        np.ascontiguousarray(fin),
        m,
        np.ascontiguousarray(fin.conj()),
        vlo_conj,
        vhi_conj,
        w_lo,
        w_hi,
        w_x,
        np.ascontiguousarray(phase),
        backend=backend,
    )

    dw = g.delta_omega
    density = norm2 * (dw**3 / np.pi)
    probability = density * (og.tgrid.delta_t * og.delta_omega_minus)
    pos = norm2 > 0.0
    fid_raw = np.zeros_like(norm2)
    np.divide(dw * np.abs(rawC) ** 2, norm2, out=fid_raw, where=pos)
    a = alpha[:, None]
    numer = np.abs((1.0 - a) * CA + a * tau[None, :] * CB) ** 2
    denom = (1.0 - a) ** 2 * nA + a**2 * nB + 2.0 * a * (1.0 - a) * xC.real
    fid_corr = np.zeros_like(norm2)
    np.divide(dw * numer, denom, out=fid_corr, where=denom > 0.0)
    np.clip(fid_raw, 0.0, 1.0, out=fid_raw)
    np.clip(fid_corr, 0.0, 1.0, out=fid_corr)
    return OutcomeTable(og, density, probability, fid_raw, fid_corr, alpha, convention)


@dataclass(frozen=True)
class ChannelMetrics:
    avg_fidelity_corrected: float
    efficiency: float
    avg_fidelity_raw: float
    total_probability: float


def _best_window_mass(p: np.ndarray, wd: int, wt: int) -> float:
    c = np.zeros((p.shape[0] + 1, p.shape[1] + 1))
    c[1:, 1:] = p.cumsum(axis=0).cumsum(axis=1)
    wins = c[wd:, wt:] - c[:-wd, wt:] - c[wd:, :-wt] + c[:-wd, :-wt]
    return float(wins.max())


def channel_metrics(
    F: BiphotonAmplitude,
    f_in: WavePacket,
    acceptance_window,
    convention: str = MIRROR_EQ17,
    omega0: float = None,
    backend=None,
    table: OutcomeTable = None,
) -> ChannelMetrics:
    """Efficiency = best-placed T x W window mass; fidelities are
    probability-weighted means over all outcomes."""
    if table is None:
        table = outcome_table(F, f_in, convention=convention, omega0=omega0, backend=backend)
    og = table.ogrid
    T, W = acceptance_window
    if T <= 0.0 or W <= 0.0:
        raise WindowExceedsGridError("acceptance window dimensions must be positive")
    t_span = og.tgrid.n_points * og.tgrid.delta_t
    w_span = og.n_sectors * og.delta_omega_minus
    if T > t_span * (1.0 + 1e-9) or W > w_span * (1.0 + 1e-9):
        raise WindowExceedsGridError(
            f"window ({T}, {W}) exceeds outcome-grid span ({t_span}, {w_span})"
        )
    wt = min(og.tgrid.n_points, max(1, int(round(T / og.tgrid.delta_t))))
    wd = min(og.n_sectors, max(1, int(round(W / og.delta_omega_minus))))
    eff = _best_window_mass(table.probability, wd, wt)
    total = table.total_probability
    avg_raw = float((table.probability * table.fidelity_raw).sum() / total)
    avg_corr = float((table.probability * table.fidelity_corrected).sum() / total)
    return ChannelMetrics(avg_corr, eff, avg_raw, total)


# ---------------------------------------------------------------------------
# Dense small-grid oracles (Eq.-16-style density-matrix evaluation)


def photon2_marginal(F: BiphotonAmplitude) -> np.ndarray:
    """Reduced state of photon 2, rho[i, j] with trace sum_i rho[i, i] dw = 1."""
    return F.grid1.delta_omega * (F.values.T @ F.values.conj())


def photon2_mixture(F: BiphotonAmplitude, f_in: WavePacket) -> np.ndarray:
    """Probability-weighted mixture of conditional photon-2 states (all outcomes).

    Built from per-outcome amplitudes directly (no kernel); O(n^4), so keep
    n_points small (<= 24).  Equals photon2_marginal by no-signaling.
    """
    _check_pipeline(F, f_in)
    g = F.grid1
    og = outcome_grid(g)
    rho = np.zeros((g.n_points, g.n_points), dtype=np.complex128)
    w = og.tgrid.delta_t * og.delta_omega_minus / np.pi
    for d in og.d_values:
        for t in og.tgrid.points:
            amp = entangled_outcome_amplitude(
                F, f_in, float(t), float(d * og.delta_omega_minus)
            )
            rho += w * np.outer(amp, amp.conj())
    return rho * g.delta_omega


def trace_distance(rho_a: np.ndarray, rho_b: np.ndarray, dw: float) -> float:
    """(1/2) * sum |eig(rho_a - rho_b)| * dw on the quadrature space."""
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(rho_a - rho_b))) * dw)


def _dense_m_matrix(g: FrequencyGrid, k: int, d: int) -> np.ndarray:
    og = outcome_grid(g)
    i1, i3, length = sector_span(g.n_points, d)
    m = np.zeros((g.n_points, g.n_points), dtype=np.complex128)
    j = np.arange(length)
    m[i1 + j, i3 + j] = (np.sqrt(2.0) / g.delta_omega) * np.exp(
        1j * omega_plus_values(g, d) * og.tgrid.points[k]
    )
    return m


def conditional_dense(F: BiphotonAmplitude, f_in: WavePacket, k: int, d: int):
    """Conditional photon-2 state via the dense three-photon contraction.

    Returns (psi2 normalized on the grid, probability density).  Independent
    of the sector kernels: contracts the full three-photon product tensor
    with the dense measurement matrix.
    """
    _check_pipeline(F, f_in)
    g = F.grid1
    m = _dense_m_matrix(g, k, d)
    tens = np.einsum("ab,c->abc", F.values, f_in.amplitudes)
    w = g.delta_omega**2 * np.einsum("ac,abc->b", m.conj(), tens)
    density = float(np.sum(np.abs(w) ** 2) * g.delta_omega / TWO_PI)
    return normalize(w, g), density


def conditional_dense_rho(F: BiphotonAmplitude, f_in: WavePacket, k: int, d: int):
    """Eq.-16-style density-matrix evaluation with an explicit partial trace.

    Embeds everything in the orthonormal l2 space, applies the POVM element
    as a dense matrix on photons (1, 3), traces them out, and converts back.
    Memory is O(n^4); keep n_points <= 8.  Returns (rho2, probability density)
    with trace(rho2) * dw = 1.
    """
    _check_pipeline(F, f_in)
    g = F.grid1
    n = g.n_points
    og = outcome_grid(g)
    dw = g.delta_omega
    tens = np.einsum("ab,c->abc", F.values, f_in.amplitudes) * dw**1.5
    v132 = np.transpose(tens, (0, 2, 1)).reshape(-1)  # ordering (1, 3, 2)
    m_l2 = (_dense_m_matrix(g, k, d) * dw).reshape(-1)
    e13 = np.outer(m_l2, m_l2.conj()) * (og.tgrid.delta_t * og.delta_omega_minus / TWO_PI)
    big = np.kron(e13, np.eye(n))
    x = np.outer(v132, v132.conj()) @ big
    rho2_l2 = np.einsum("pbpc->bc", x.reshape(n * n, n, n * n, n))
    pr = float(np.trace(rho2_l2).real)
    density = pr / (og.tgrid.delta_t * og.delta_omega_minus)
    return rho2_l2 / (dw * pr), density
