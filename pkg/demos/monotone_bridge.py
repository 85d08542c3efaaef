"""From a UR-representation to a monotone circuit and back.

f = (a | b | c) & (-a | -b | -c).  Doubling each variable into (v0, v1),
where 0 means "v has been ruled out for that value", turns the question
"is f still satisfiable under this partial assignment" into a monotone function.

Run: python demos/monotone_bridge.py
"""

from xorcnf.circuits import (
    emit_circuit,
    nae3_circuit,
    monotone_to_ur,
    to_forcing,
    ur_to_monotone_layers,
)
from xorcnf.core import format_clause_set
from xorcnf.verify import SemanticFunction, check

F = frozenset({frozenset({1, 2, 3}), frozenset({-1, -2, -3})})
f = SemanticFunction.from_cnf(F)

C, names = nae3_circuit()
print("hand-written monotone formula:")
print(emit_circuit(C))

print("reduced translation back to CNF:")
print(format_clause_set(monotone_to_ur(C, reduced=True)))

layered = ur_to_monotone_layers(F, [1, 2, 3])
print(f"\ncompiled circuit: {layered.layers} layers, {layered.layer_nodes} layer nodes, "
      f"size {layered.circuit.size()}")

G = monotone_to_ur(layered.circuit)
H = to_forcing(C)
for label, rep in (("round trip", G), ("forcing", H)):
    verdicts = ", ".join(check(p, rep, f).to_text() for p in ("representation", "UR", "forcing"))
    print(f"{label:>10}: {len(rep)} clauses; {verdicts}")
