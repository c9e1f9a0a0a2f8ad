"""Virtual photoelasticity vs. pump power in a 1.2 um waveguide mode.

Contracting q_eff with the classical pump field produces an effective
first-order photoelasticity p_virt = (2/3) eps0 q_eff eps_R |E| that grows as
sqrt(P).  This script walks the power axis from 1 mW up to the damage-limited
power of barium titanate, printing the field, intensity, p_virt, its ratio to
the nominal photoelasticity (0.77), and the proportionally scaled coupling
against a published transducer benchmark (an extrapolation, not a device
prediction).  Writes the same table to pump_power_sweep.csv for plotting.
"""

from pathlib import Path

import numpy as np

from transduce import (MixingBands, PumpGeometry, damage_limited_power,
                       default_db, peak_field_from_power, peak_intensity,
                       power_sweep)

MFD = 1.2e-6
N_MODE = 2.26

db = default_db()
bto = db.get("BaTiO3")
bands = MixingBands.from_vacuum_wavelengths(2600e-9, 2600e-9, phonon_hz=2e9)

p_damage = damage_limited_power(bto, MFD)
print(f"damage threshold       : {bto.damage_threshold:.3g} W/m^2 (0.54 GW/cm^2)")
print(f"damage-limited power   : {p_damage:.3f} W for MFD {MFD * 1e6:.1f} um")

e_1mw = peak_field_from_power(PumpGeometry(1e-3, MFD, N_MODE))
print(f"\nat 1 mW: |E| = {e_1mw:.3e} V/m, "
      f"I = {peak_intensity(1e-3, MFD) / 1e7:.1f} kW/cm^2")

powers = np.geomspace(1e-3, p_damage, 12)
report = power_sweep(bto, bands, powers, MFD, N_MODE)
print(f"\nq_eff = {report.chain.q_eff:.4e} m^2/C, "
      f"p_nominal = {report.p_nominal}")
for note in report.notes:
    print(f"note: {note}")

print(f"\n{'P (W)':>10s} {'|E| (V/m)':>12s} {'I (W/m^2)':>12s} "
      f"{'p_virt':>12s} {'p_virt/p_nom':>13s} {'I/threshold':>12s} "
      f"{'g_scaled (rad/s)':>17s}")
for r in report.rows:
    print(f"{r.power_w:>10.4g} {r.peak_field_v_per_m:>12.4e} "
          f"{r.intensity_w_per_m2:>12.4e} {r.p_virt:>12.4e} "
          f"{r.p_virt_over_p_nominal:>13.4e} {r.intensity_over_threshold:>12.4e} "
          f"{r.g_scaled_rad_per_s:>17.4e}")

out = Path(__file__).with_name("pump_power_sweep.csv")
out.write_text(report.to_csv())
print(f"\nwrote {out.name}")
