"""Topological charge measurement through arcs and loops, and its statistics.

Run: python3 demos/03_charge_measurement.py
"""

from collections import Counter

import numpy as np

from gapbound.boundary import build_ground_space, lagrangian_by_key
from gapbound.charge import CurveLabel, charge_projector, effective_hamiltonian, measure
from gapbound.cyclotomic import omega
from gapbound.linalg import charpoly, distinct_root_count, to_complex
from gapbound.serialize import pretty_matrix
from gapbound.theory import build_theory

z3 = build_theory(3)
e = lagrangian_by_key(z3, "e")
qutrit = build_ground_space([e, e])

arc = CurveLabel.arc(1, 2)
vac = charge_projector(qutrit, 0, arc)
print("vacuum charge through the arc between the holes:")
print(pretty_matrix(vac.projector.entries))

for a in range(3):
    p = charge_projector(qutrit, a, CurveLabel.loop(2)).projector
    print(f"charge {a} around hole 2:", [p.entries[i, i].pretty() for i in range(3)])

rng = np.random.default_rng(7)
state = np.array([1, 0, 0], dtype=complex)
counts = Counter(measure(state, vac, rng=rng)[0] for _ in range(3000))
print("3000 arc measurements on |0>:", dict(counts), "(expect about 1/3 vs 2/3)")

# A hopping term along the arc: real hopping leaves a degenerate pair,
# imaginary hopping splits it.  Hopping by a cube root of unity does not.
for label, t in (("1", 1), ("w", omega(3)), ("i", omega(4))):
    h = effective_hamiltonian(qutrit, z3.e, arc, t).entries
    ev = np.linalg.eigvalsh(to_complex(h))
    print(f"t={label}: eigenvalues {np.round(ev, 6).tolist()}, distinct {distinct_root_count(charpoly(h))}")
