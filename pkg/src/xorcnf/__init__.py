"""CNF representations of XOR systems and circuits, with propagation-quality measures."""

from .core import (
    BOTTOM_SET,
    EMPTY_CLAUSE,
    TOP,
    CapExceeded,
    FormatError,
    PartialAssignment,
    apply,
    apply_literals,
    emit_dimacs,
    emit_xnf,
    make_clause,
    make_clause_set,
    parse_dimacs,
    parse_xnf,
)
from .measures import (
    asymmetric_width,
    hardness,
    measure,
    p_hardness,
    prime_implicates,
    symmetric_width,
)
from .reductions import r_k, sat_decide, unit_propagate
from .xortrans import X0, X0_set, X1, X1_set, X2, X_star, generate_Tn

__all__ = [
    "BOTTOM_SET",
    "EMPTY_CLAUSE",
    "TOP",
    "CapExceeded",
    "FormatError",
    "PartialAssignment",
    "X0",
    "X0_set",
    "X1",
    "X1_set",
    "X2",
    "X_star",
    "apply",
    "apply_literals",
    "asymmetric_width",
    "emit_dimacs",
    "emit_xnf",
    "generate_Tn",
    "hardness",
    "make_clause",
    "make_clause_set",
    "measure",
    "p_hardness",
    "parse_dimacs",
    "parse_xnf",
    "prime_implicates",
    "r_k",
    "sat_decide",
    "symmetric_width",
    "unit_propagate",
]
