"""The T_n family: unsatisfiable, short clauses, yet width 3 suffices.

Run: python demos/tn_widths.py
"""

from xorcnf.core import n_clauses, n_literals, n_vars
from xorcnf.measures import asymmetric_width, hardness, symmetric_width
from xorcnf.resolution import build_Tn_refutation, check_proof, proof_clauses, proof_width
from xorcnf.xortrans import generate_Tn

print(f"{'n':>2} {'vars':>5} {'clauses':>8} {'lits':>5} {'whd':>4} {'wid':>4} {'proof':>6}")
for n in range(3, 9):
    T = generate_Tn(n)
    proof = build_Tn_refutation(n)
    assert check_proof(proof, T, frozenset()) and proof_width(proof) == 3
    print(f"{n:>2} {n_vars(T):>5} {n_clauses(T):>8} {n_literals(T):>5} "
          f"{asymmetric_width(T).value:>4} {symmetric_width(T).value:>4} {len(proof_clauses(proof)):>6}")

# plain hardness, for comparison; it rises above the width for n = 4 and 5
for n in (3, 4, 5):
    print(f"hd(T_{n}) = {hardness(generate_Tn(n)).value}")
