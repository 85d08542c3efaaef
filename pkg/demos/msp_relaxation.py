"""A monotone span program for x1 | x2 | x3 and its XOR relaxation.

Each input switches on one small linear system; f(x) = 0 exactly when the
switched-on systems contradict each other.  Relaxation variables turn the
whole program into one XOR system, and a GAC translation of that system
decides f by unit propagation once the right relaxation variables are set.

Run: python demos/msp_relaxation.py
"""

import itertools
from pathlib import Path

from xorcnf.core import apply_literals
from xorcnf.reductions import r_k
from xorcnf.xortrans import X_star, format_xor, msp_eval, msp_protocol, msp_relax, parse_msp

M = parse_msp((Path(__file__).parent.parent / "tests" / "data" / "msp_or3.msp").read_text())
relaxed = msp_relax(M)
print("relaxed XOR system:")
for c in sorted(relaxed, key=sorted):
    print("  ", format_xor(c))

G = X_star(relaxed)
print(f"GAC translation: {len(G)} clauses\n")
print(" x1 x2 x3 | f | r_1 refutes")
for x in itertools.product((0, 1), repeat=3):
    refuted = r_k(1, apply_literals(msp_protocol(M, x), G)).refuted
    print(f"  {x[0]}  {x[1]}  {x[2]} | {msp_eval(M, x)} | {refuted}")
