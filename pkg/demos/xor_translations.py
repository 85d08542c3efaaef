"""Four ways to write two overlapping XOR constraints as CNF.

The pair x1+x2+x3 = 0, x2+x3+x4 = 1 shares two variables.  Translating each
clause on its own (x1) loses propagation power; adding the sum clause (xstar)
or splitting off the shared part (x2) restores it.

Run: python demos/xor_translations.py
"""

from xorcnf.measures import hardness, p_hardness
from xorcnf.verify import SemanticFunction, check
from xorcnf.xortrans import X0_set, X1_set, X2, X_star

F = [frozenset({1, 2, 3}), frozenset({2, 3, -4})]
f = SemanticFunction.from_xor(F)

translations = {
    "x0": X0_set(F),
    "x1": X1_set(F),
    "xstar": X_star(F),
    "x2": X2(*F),
}

for name, G in translations.items():
    verdicts = [check(p, G, f) for p in ("representation", "UR", "GAC", "absolute-forcing")]
    line = " ".join(v.to_text().split(" counterexample")[0] for v in verdicts)
    print(f"{name:>6}: {len(G):>3} clauses  hd={hardness(G).value} phd={p_hardness(G).value}  {line}")

bad = check("GAC", translations["x1"], f)
print("x1 misses a forced literal under", bad.counterexample.to_dimacs())
