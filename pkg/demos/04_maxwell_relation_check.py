"""Numerically certify the Maxwell-relation ladder behind the coupling chain.

Any constitutive model whose stress and field derive from one free energy
must satisfy dX/dD = dE/dx (piezoelectricity), d2X/dD2 = d2E/dxdD
(electrostriction equals photoelasticity over eps0), and
d3X/dD3 = 2 d(eta2)/dx (cubic electrostriction equals twice the strain
derivative of the second-order inverse susceptibility).  Here every relation
is evaluated by finite differences on random polynomial models: residuals at
the rounding floor for genuine potentials, and an order-one residual for a
deliberately mismatched stress/field pair, which is how the checker earns its
keep.
"""

import numpy as np

from transduce import (FreeEnergyModel, VectorFreeEnergyModel, verify_relations,
                       verify_relations_pair, verify_relations_vector)
from transduce.thermo import efield_of, extract_eta2, stress_of
from transduce.units import EPS0

rng = np.random.default_rng(7)

print("100 random scalar models, coefficients uniform in [-10, 10]:")
worst = [0.0] * 4
for _ in range(100):
    rep = verify_relations(FreeEnergyModel(*rng.uniform(-10, 10, size=6)))
    worst = [max(w, r) for w, r in zip(worst, (
        rep.order1_residual, rep.order2_residual,
        rep.order3_residual, rep.factor2_residual))]
for name, w in zip(("order1", "order2", "order3", "factor2"), worst):
    print(f"  {name:8s} worst residual {w:.3e}")

m = FreeEnergyModel(c=2.0, h=1.5, eta1=3.0, eta2=-2.0, p=4.0, q=5.0)
print(f"\none model in detail (q = {m.q}):")
print(f"  eta2 at zero strain      : {extract_eta2(m, 0.0):.6f}")
print(f"  eta2 slope vs strain     : "
      f"{(extract_eta2(m, 1e-3) - extract_eta2(m, -1e-3)) / 2e-3:.6e}")
print(f"  q/eps0 for comparison    : {m.q / EPS0:.6e}")

print("\nmismatched pair (field taken from a model with a different piezo "
      "coefficient):")
m2 = FreeEnergyModel(c=2.0, h=3.0, eta1=3.0, eta2=-2.0, p=4.0, q=5.0)
bad = verify_relations_pair(lambda x, D: stress_of(m, x, D),
                            lambda x, D: efield_of(m2, x, D))
print(f"  order1 residual {bad.order1_residual:.3e} -> "
      f"{'detected' if not bad.order1_passed else 'missed'}")

print("\ntwo-component model (checks the index symmetry bookkeeping):")
vec = VectorFreeEnergyModel(c=rng.uniform(-10, 10),
                            h=rng.uniform(-10, 10, 2),
                            eta1=rng.uniform(-10, 10, (2, 2)),
                            eta2=rng.uniform(-10, 10, (2, 2, 2)),
                            p=rng.uniform(-10, 10, (2, 2)),
                            q=rng.uniform(-10, 10, (2, 2, 2)))
vrep = verify_relations_vector(vec)
print(f"  residuals: {vrep.order1_residual:.2e}, {vrep.order2_residual:.2e}, "
      f"{vrep.order3_residual:.2e}, {vrep.factor2_residual:.2e} "
      f"-> all passed: {vrep.all_passed}")
