"""Boundary types of D(Z_N) and the qudits they encode.

Run: python3 demos/01_boundaries_and_ground_spaces.py
"""

from gapbound.boundary import build_ground_space, enumerate_lagrangians, lagrangian_by_key, qudit_registers
from gapbound.serialize import pretty_matrix
from gapbound.theory import build_theory, verify_modular_relations

z3 = build_theory(3)
print(f"D(Z_3): {len(z3.labels)} anyons, total quantum dimension {z3.global_dimension}")
print("unnormalized S matrix:")
print(pretty_matrix(z3.S))
print("modular relations hold:", verify_modular_relations(z3).ok)

# Each gapped boundary condenses a Lagrangian subgroup.  Z_4 has a third,
# "diagonal" one besides the e and m boundaries.
for n in (2, 3, 4, 5):
    names = [a.name for a in enumerate_lagrangians(build_theory(n))]
    print(f"N={n}: {names}")

e, m = lagrangian_by_key(z3, "e"), lagrangian_by_key(z3, "m")
for holes in ([e, e], [e, e, m, m], [e, m], [e, e, e, e]):
    sp = build_ground_space(holes)
    print(f"{sp.describe():>10}: dim {sp.dim}")

# Two e holes give a qutrit with basis (|1>, |e>, |ebar>).
qutrit = build_ground_space([e, e])
for k, lab in enumerate(qutrit.basis):
    print(f"|{k}> = ({', '.join(str(a) for a in lab)})")

two = build_ground_space([e, e, m, m])
regs = qudit_registers(two, [(1, 2), (3, 4)])
print("register dims on [e,e,m,m]:", regs.dims)
