import numpy as np

from eprteleport import *
from eprteleport.grid import dft_matrix, to_time, grids_equal
from eprteleport.povm import outcome_grid, locate_outcome
from eprteleport.teleport import (
    photon2_marginal, photon2_mixture, trace_distance,
    conditional_dense, conditional_dense_rho,
)
import eprteleport.kernels as K

rng = np.random.default_rng(0)

# 1. grid transforms: FFT path vs explicit matrix, Parseval
g = make_frequency_grid(0.0, 10.0, 48)
tg = conjugate_time_grid(g)
v = rng.standard_normal(48) + 1j * rng.standard_normal(48)
ft_fft = to_time(v, g)
ft_mat = dft_matrix(g) @ v
print("1a matrix-vs-fft:", np.abs(ft_fft - ft_mat).max())
p_in = np.sum(np.abs(v) ** 2) * g.delta_omega
p_out = np.sum(np.abs(ft_fft) ** 2) * tg.delta_t
print("1b parseval:", abs(p_in - p_out))

# 2. total probability = 1
g = make_frequency_grid(0.0, 20.0, 64)
p = GaussianEPRParams(mu=-0.7, sigma=1.3, omega1_center=10.0, omega2_center=10.0)
F = gaussian_epr_amplitude(p, g, g)
f = gaussian_packet(9.0, 0.8, 0.3, g)
print("2 total prob - 1:", total_outcome_probability(F, f) - 1.0)

# 3. dense completeness N=16
g16 = make_frequency_grid(0.0, 8.0, 16)
print("3 dense completeness:", completeness_residual(g16))
print("3b energy:", completeness_residual(g16, kind="energy"))
print("3c time:", completeness_residual(g16, kind="time"))
print("3d truncated:", completeness_residual(g16, time_fraction=0.5))

# 4. vector completeness
print("4 vector residual N=64:", completeness_vector_residual(g))

# 5. mirror conventions at an off-center outcome, near-ideal EPR
g = make_frequency_grid(0.0, 25.6, 256)
dw = g.delta_omega
w_in = 4 * dw
mu = -0.999
sig = 2.1 * w_in
pp = GaussianEPRParams(mu=mu, sigma=sig, omega1_center=12.8, omega2_center=12.8)
F = gaussian_epr_amplitude(pp, g, g)
f_in = gaussian_packet(12.8 - 6 * dw, w_in, 0.0, g)  # off-center on purpose
og, dens = outcome_density_map(F, f_in)
dd, kk = np.unravel_index(np.argmax(dens), dens.shape)
d_star = og.d_values[dd]
print("5 argmax outcome: d=", d_star, " k=", kk, " t=", og.tgrid.points[kk])
for conv in ("eq17", "derived"):
    r = teleport_once(F, f_in, (og.tgrid.points[kk], og.omega_minus_values[dd]), convention=conv)
    print(f"   {conv}: fid_corr={r.fidelity_corrected:.6f} fid_raw={r.fidelity_raw:.6f} interp={r.mirror_interpolated}")
# a nonzero-t outcome, same sector
knz = kk + 40
for conv in ("eq17", "derived"):
    r = teleport_once(F, f_in, (og.tgrid.points[knz], og.omega_minus_values[dd]), convention=conv)
    print(f"   t!=0 {conv}: fid_corr={r.fidelity_corrected:.6f}")
# ideal-limit state overlap at that outcome
r = teleport_once(F, f_in, (og.tgrid.points[knz], og.omega_minus_values[dd]), convention="derived")
ideal = ideal_limit_state(f_in, (og.tgrid.points[knz], og.omega_minus_values[dd]), pp.omega0, convention="derived")
print("   ideal-form overlap:", fidelity(ideal, r.conditional_state))

# 6. outcome_table vs teleport_once (both conventions)
g = make_frequency_grid(0.0, 12.0, 48)
pp = GaussianEPRParams(mu=-0.8, sigma=1.0, omega1_center=6.0, omega2_center=6.0)
F = gaussian_epr_amplitude(pp, g, g)
f_in = gaussian_packet(5.5, 0.5, 0.2, g)
for conv in ("eq17", "derived"):
    tab = outcome_table(F, f_in, convention=conv)
    og = tab.ogrid
    errs = []
    for dd in (10, 47, 48, 60):
        for k in (0, 17, 30):
            t = og.tgrid.points[k]; om = og.omega_minus_values[dd]
            if tab.density[dd, k] < 1e-280:
                continue
            r = teleport_once(F, f_in, (t, om), convention=conv)
            errs.append(abs(r.fidelity_corrected - tab.fidelity_corrected[dd, k]))
            errs.append(abs(r.fidelity_raw - tab.fidelity_raw[dd, k]))
            errs.append(abs(r.outcome.probability_density - tab.density[dd, k]))
    print(f"6 {conv} table-vs-single max err:", max(errs))
    print(f"6 {conv} total prob:", tab.total_probability - 1.0)

# 7. no-signaling + dense oracles (N=8)
g8 = make_frequency_grid(0.0, 8.0, 8)
pp8 = GaussianEPRParams(mu=-0.5, sigma=0.9, omega1_center=4.0, omega2_center=4.0)
F8 = gaussian_epr_amplitude(pp8, g8, g8)
f8 = gaussian_packet(4.0, 0.7, 0.1, g8)
mix = photon2_mixture(F8, f8)
marg = photon2_marginal(F8)
print("7 no-signaling trace distance:", trace_distance(mix, marg, g8.delta_omega))
amp = entangled_outcome_amplitude(F8, f8, conjugate_time_grid(g8).points[3], 1.0 * g8.delta_omega / 2)
psi = normalize(amp, g8)
dens = outcome_density(F8, f8, conjugate_time_grid(g8).points[3], 1.0 * g8.delta_omega / 2)
psi_d, dens_d = conditional_dense(F8, f8, 3, 1)
rho_d, dens_r = conditional_dense_rho(F8, f8, 3, 1)
print("7b dense psi overlap:", abs(inner_product(psi.amplitudes, psi_d.amplitudes, g8)))
print("7c dense density ratios:", dens_d / dens, dens_r / dens)
rho_fast = np.outer(psi.amplitudes, psi.amplitudes.conj())
print("7d dense rho vs fast:", np.abs(rho_d - rho_fast).max())

# 8. backend parity
g = make_frequency_grid(0.0, 12.0, 32)
pp = GaussianEPRParams(mu=-0.6, sigma=1.1, omega1_center=6.0, omega2_center=6.0)
F = gaussian_epr_amplitude(pp, g, g)
f_in = gaussian_packet(5.8, 0.5, 0.4, g)
t_py = outcome_table(F, f_in, convention="eq17", backend="python")
t_cy = outcome_table(F, f_in, convention="eq17", backend="cython")
print("8 backend parity density:", np.abs(t_py.density - t_cy.density).max())
print("8 backend parity fid:", np.abs(t_py.fidelity_corrected - t_cy.fidelity_corrected).max())

# 9. acceptance schedule study (criterion 5/6)
g = make_frequency_grid(0.0, 25.6, 256)
dw = g.delta_omega
w_in = 4 * dw
center = 12.8
f_in = gaussian_packet(center, w_in, 0.0, g)
mus = [-0.9, -0.99, -0.999]
sigs = [1.9 * w_in, 2.1 * w_in, 2.3 * w_in]
window = (10.0, 1.0)
import time
for conv in ("derived", "eq17"):
    print(f"9 schedule ({conv}):")
    for mu, s in zip(mus, sigs):
        t0 = time.time()
        ppx = GaussianEPRParams(mu=mu, sigma=s, omega1_center=center, omega2_center=center)
        Fx = gaussian_epr_amplitude(ppx, g, g)
        tab = outcome_table(Fx, f_in, convention=conv)
        met = channel_metrics(Fx, f_in, window, convention=conv, table=tab)
        k, dstar = tab.argmax_outcome()
        r = teleport_once(Fx, f_in, (tab.ogrid.tgrid.points[k], dstar * dw / 2), convention=conv)
        ideal = ideal_limit_state(f_in, (tab.ogrid.tgrid.points[k], dstar * dw / 2), ppx.omega0,
                                  convention="derived")
        ov = fidelity(ideal, r.conditional_state)
        el = time.time() - t0
        print(f"   mu={mu} s2(1-mu2)={s*s*(1-mu*mu):.4g} fid*={r.fidelity_corrected:.5f} "
              f"avg_corr={met.avg_fidelity_corrected:.5f} eff={met.efficiency:.5f} "
              f"ideal_ov={ov:.5f} [{el:.2f}s]")

# flatness near-ideal config
mu = -0.9999985
sig = 20 * dw
ppf = GaussianEPRParams(mu=mu, sigma=sig, omega1_center=center, omega2_center=center)
Ff = gaussian_epr_amplitude(ppf, g, g)
f8w = gaussian_packet(center, 8 * dw, 0.0, g)
og, dens = outcome_density_map(Ff, f8w)
dd = np.argmax(dens.sum(axis=1))
row = dens[dd]
print("9b flatness config: s2(1-mu2)/dw2 =", sig**2 * (1 - mu**2) / dw**2,
      "max/min =", row.max() / row.min())
r = teleport_once(Ff, f8w, (og.tgrid.points[128], og.omega_minus_values[dd]), convention="derived")
print("9b fid_corr at that sector:", r.fidelity_corrected)
