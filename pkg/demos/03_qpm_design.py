"""Quasi-phase-matching design for the four-wave process, and what happens to
the competing three-wave channel.

The four-wave mismatch in barium titanate (pumps 2600 nm, phonon 2 GHz,
longitudinal sound at the fixture's 5000 m/s) is about -2.46e6 rad/m; a
first-order grating with a ~2.55 um period cancels it.  The same grating does
not cancel the single-pump three-wave channel, whose output sits at a very
different wavelength, so that channel keeps a ~5e4 rad/m residual and its
efficiency collapses with length as sinc^2.  A short poling-period sweep
around the solution shows the acceptance bandwidth.
"""

import numpy as np

from transduce import (MixingBands, PhaseMatchInput, default_db, delta_k,
                       pm_efficiency, poling_period, sweep,
                       three_wave_residual)

LENGTH = 100e-6

db = default_db()
bto = db.get("BaTiO3")
bands = MixingBands.from_vacuum_wavelengths(2600e-9, 2600e-9, phonon_hz=2e9)
pm = PhaseMatchInput(bands=bands, material=bto, length=LENGTH)

bare = delta_k(pm)
print(f"k_t  = {bare.k_t:.6e} rad/m")
print(f"k_p1 = {bare.k_p1:.6e} rad/m")
print(f"k_p2 = {bare.k_p2:.6e} rad/m")
print(f"k_m  = {bare.k_m:.6e} rad/m")
print(f"unpoled delta_k = {bare.delta_k:.6e} rad/m, "
      f"efficiency over {LENGTH * 1e6:.0f} um: {bare.efficiency:.3e}")

lam, sign = poling_period(pm)
print(f"\npoling period   = {lam * 1e6:.4f} um, sign {sign:+d}")
poled = PhaseMatchInput(bands=bands, material=bto, length=LENGTH,
                        poling_period=lam, poling_sign=sign)
res = delta_k(poled)
print(f"poled delta_k   = {res.delta_k:.3e} rad/m, efficiency {res.efficiency:.6f}")

tw = three_wave_residual(poled)
print(f"\nthree-wave residual with the same grating: {tw.delta_k_3wm:.4e} rad/m")
print(f"three-wave suppression at {LENGTH * 1e6:.0f} um: {tw.suppression:.4f}")
for length in (200e-6, 500e-6, 1e-3, 5e-3):
    s = pm_efficiency(tw.delta_k_3wm, length)
    print(f"  at {length * 1e3:6.2f} mm: {s:.3e}")

print("\npoling-period acceptance around the solution:")
rows = sweep(poled, "poling-period", np.linspace(0.98 * lam, 1.02 * lam, 9))
for value, r in rows:
    bar = "#" * int(round(40 * r.efficiency))
    print(f"  {value * 1e6:.4f} um  eff {r.efficiency:.4f} {bar}")
