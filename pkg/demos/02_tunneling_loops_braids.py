"""Wilson operators and braiding act as qutrit Paulis and a controlled phase.

Run: python3 demos/02_tunneling_loops_braids.py
"""

from gapbound.boundary import build_ground_space, lagrangian_by_key
from gapbound.braid import BraidGenerator, braid_squared, group_order_generated
from gapbound.linalg import equal, identity, matpow
from gapbound.serialize import pretty_matrix
from gapbound.theory import build_theory
from gapbound.wilson import loop, tunnel

z3 = build_theory(3)
e, m = lagrangian_by_key(z3, "e"), lagrangian_by_key(z3, "m")
qutrit = build_ground_space([e, e])

X = tunnel(qutrit, z3.e, 1, 2)
print("tunneling e from hole 1 to hole 2 (Pauli X):")
print(pretty_matrix(X.entries))
print("X^3 = I:", equal(matpow(X.entries, 3), identity(3)))

Z = loop(qutrit, z3.m, 2)
print("m loop around hole 2 (a clock matrix):")
print(pretty_matrix(Z.entries))

two = build_ground_space([e, e, m, m])
cz = braid_squared(two, BraidGenerator(2, 3))
print("hole 2 taken once around hole 3 on [e,e,m,m]:")
print(pretty_matrix(cz.entries))
print("order of the pure braid image (mod phases):", group_order_generated(two))
