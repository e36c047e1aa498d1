import numpy as np
from eprteleport import *
from eprteleport.teleport import outcome_table, teleport_once

g = make_frequency_grid(0.0, 12.0, 48)
pp = GaussianEPRParams(mu=-0.8, sigma=1.0, omega1_center=6.0, omega2_center=6.0)
F = gaussian_epr_amplitude(pp, g, g)
f_in = gaussian_packet(5.5, 0.5, 0.2, g)

conv = "eq17"
tab = outcome_table(F, f_in, convention=conv, backend="python")
og = tab.ogrid
worst = (0, None)
for dd in (10, 47, 48, 60):
    for k in (0, 17, 30):
        t = og.tgrid.points[k]; om = og.omega_minus_values[dd]
        if tab.density[dd, k] < 1e-280:
            continue
        r = teleport_once(F, f_in, (t, om), convention=conv)
        e1 = abs(r.fidelity_corrected - tab.fidelity_corrected[dd, k])
        e2 = abs(r.fidelity_raw - tab.fidelity_raw[dd, k])
        e3 = abs(r.outcome.probability_density - tab.density[dd, k]) / max(tab.density[dd, k], 1e-300)
        print(f"dd={dd} k={k} dens={tab.density[dd,k]:.3e} e_corr={e1:.3e} e_raw={e2:.3e} e_dens_rel={e3:.3e} "
              f"fidc(single)={r.fidelity_corrected:.12f} fidc(tab)={tab.fidelity_corrected[dd,k]:.12f}")
