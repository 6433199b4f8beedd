"""The qutrit gate set and the ancilla-mediated SUM between two e-qutrits.

Run: python3 demos/04_gates_and_circuits.py
"""

from gapbound.circuit import channel_matrix, run, sum_protocol_circuit
from gapbound.gates import GATE_NAMES, compile_gate
from gapbound.serialize import gate_pretty, pretty_matrix

for name in GATE_NAMES:
    g = compile_gate(name)
    steps = " ; ".join(str(s) for s in g.recipe)
    print(f"{name:8} {len(g.recipe)} step(s): {steps[:90]}")

print()
print(gate_pretty(compile_gate("Q3")))
print()
print(gate_pretty(compile_gate("M")))

circ = sum_protocol_circuit()
print("\nSUM protocol instructions:")
for ins in circ.instruction_json():
    print("  ", ins)

channel = channel_matrix(circ)
print("channel is unitary:", channel.unitary)
print(pretty_matrix(channel.matrix))

record = run(circ, [2, 1], shots=5, seed=11)
for shot in record.shots:
    print("ancilla outcome", shot.outcomes["mout"], "-> final (ctrl, tgt, anc) =", shot.final_label)

bare = channel_matrix(sum_protocol_circuit(correct=False))
print("without the correction the channel is unitary:", bare.unitary, "witness input", bare.witness["input"])
