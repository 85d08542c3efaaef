"""XOR-clause-sets: GF(2) semantics, sums, the X0/X1/X*/X2 translations and generators.

An XOR-clause {x1,...,xk} states x1 + ... + xk = 0 over GF(2), where a
negative literal -v stands for v + 1.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .core import (
    EMPTY_CLAUSE,
    Clause,
    ClauseSet,
    FormatError,
    clause_variables,
    make_clause,
    max_var,
    sorted_clauses,
    sorted_literals,
    var,
    variables,
)


class _Inconsistent:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INCONSISTENT"


INCONSISTENT = _Inconsistent()


def xor_parity(C: Iterable[int]) -> int:
    """Number of negative literals mod 2, i.e. the right-hand side."""
    return sum(1 for x in C if x < 0) % 2


def xor_from_equation(vs: Iterable[int], rhs: int) -> Clause:
    """XOR-clause for sum(vs) = rhs; the minimal variable carries the sign."""
    ordered = sorted(set(vs))
    if not ordered:
        if rhs:
            raise ValueError("0 = 1 is not an XOR-clause")
        return EMPTY_CLAUSE
    lits = list(ordered)
    if rhs % 2:
        lits[0] = -lits[0]
    return frozenset(lits)


def canonical_xor(C: Iterable[int]) -> Clause:
    C = frozenset(C)
    return xor_from_equation(clause_variables(C), xor_parity(C))


def xor_equivalent(C: Iterable[int], D: Iterable[int]) -> bool:
    return canonical_xor(C) == canonical_xor(D)


def xor_sum(G: Iterable[Iterable[int]]):
    """The reduced sum of XOR-clauses, or INCONSISTENT when it is 1 = 0."""
    counts: dict[int, int] = {}
    for c in G:
        for x in c:
            counts[x] = counts.get(x, 0) + 1
    odd = {x for x, n in counts.items() if n % 2}
    pairs = {var(x) for x in odd if -x in odd}
    rest = sorted((x for x in odd if var(x) not in pairs), key=var)
    if len(pairs) % 2:
        if not rest:
            return INCONSISTENT
        rest[0] = -rest[0]
    return frozenset(rest)


def xor_value(C: Iterable[int], lits: frozenset) -> int | None:
    """Value of x1+...+xk under a total assignment on var(C) (true literals)."""
    total = 0
    for x in C:
        if x in lits:
            total ^= 1
        elif -x not in lits:
            return None
    return total


def xor_satisfied(F: Iterable[Clause], lits: frozenset) -> bool:
    return all(xor_value(c, lits) == 0 for c in F)


def xor_instantiate(lits: Iterable[int], F: Iterable[Clause]):
    """Apply a partial assignment to an XOR-clause-set.

    Returns the residual XOR-clause-set (without tautologies) or INCONSISTENT.
    """
    t = frozenset(lits)
    out = set()
    for c in F:
        rest = [x for x in c if x not in t and -x not in t]
        ones = sum(1 for x in c if x in t) % 2
        if not rest:
            if ones:
                return INCONSISTENT
            continue
        parity = (xor_parity(rest) + ones) % 2
        out.add(xor_from_equation((var(x) for x in rest), parity))
    return frozenset(out)


# GF(2)

@dataclass(frozen=True)
class GF2System:
    A: np.ndarray
    b: np.ndarray
    column_vars: tuple[int, ...]

    def rows(self) -> list[list[int]]:
        return self.A.astype(int).tolist()


def _xset(F: Iterable[Iterable[int]]) -> ClauseSet:
    return frozenset(frozenset(c) for c in F)


def to_linear_system(F: Iterable[Iterable[int]], columns: Sequence[int] | None = None) -> GF2System:
    """Rows follow the order of a list or tuple argument; sets are sorted canonically."""
    if isinstance(F, (list, tuple)):
        clauses = [frozenset(c) for c in F]
    else:
        clauses = sorted_clauses(_xset(F))
    cols = tuple(sorted(variables(clauses))) if columns is None else tuple(columns)
    index = {v: j for j, v in enumerate(cols)}
    A = np.zeros((len(clauses), len(cols)), dtype=np.uint8)
    b = np.zeros(len(clauses), dtype=np.uint8)
    for i, c in enumerate(clauses):
        for x in c:
            A[i, index[var(x)]] = 1
        b[i] = xor_parity(c)
    return GF2System(A, b, cols)


def gf2_rank(M: np.ndarray) -> int:
    """Rank over GF(2) by Gaussian elimination."""
    M = (np.array(M, dtype=np.uint8) & 1).copy()
    rows, cols = M.shape if M.ndim == 2 else (0, 0)
    rank = 0
    for j in range(cols):
        if rank == rows:
            break
        pivots = np.nonzero(M[rank:, j])[0]
        if pivots.size == 0:
            continue
        p = rank + pivots[0]
        if p != rank:
            M[[rank, p]] = M[[p, rank]]
        below = np.nonzero(M[:, j])[0]
        below = below[below != rank]
        M[below] ^= M[rank]
        rank += 1
    return rank


def _augmented(F: Iterable[Clause], extra: Iterable[int] = ()) -> tuple[np.ndarray, tuple[int, ...]]:
    cols = tuple(sorted(variables(F) | clause_variables(extra)))
    system = to_linear_system(F, cols)
    return np.hstack([system.A, system.b[:, None]]), cols


def xor_sat(F: Iterable[Clause]) -> int:
    """1 iff the XOR-clause-set has a solution."""
    F = _xset(F)
    if not F:
        return 1
    M, _ = _augmented(F)
    return int(gf2_rank(M[:, :-1]) == gf2_rank(M))


def xor_implies(F: Iterable[Clause], C: Iterable[int]) -> int:
    """1 iff every solution of F satisfies the XOR-clause C."""
    F, C = _xset(F), frozenset(C)
    if not xor_sat(F):
        return 1
    M, cols = _augmented(F, C)
    row = to_linear_system([C], cols)
    extended = np.hstack([row.A, row.b[:, None]])
    return int(gf2_rank(M) == gf2_rank(np.vstack([M, extended])))


def xor_solutions(F: Iterable[Clause], V: Iterable[int] | None = None) -> list[frozenset]:
    """All total assignments over V (default var(F)) satisfying F; for small V."""
    F = _xset(F)
    vs = sorted(variables(F) if V is None else set(V))
    out = []
    for bits in itertools.product((0, 1), repeat=len(vs)):
        lits = frozenset(v if b else -v for v, b in zip(vs, bits))
        if xor_satisfied(F, lits):
            out.append(lits)
    return out


# Translations

def X0(C: Iterable[int]) -> ClauseSet:
    """All full clauses over var(C) whose complement parity differs from C's."""
    C = frozenset(C)
    if not C:
        return frozenset()
    vs = sorted(clause_variables(C))
    target = 1 - xor_parity(C)
    out = set()
    for signs in itertools.product((1, -1), repeat=len(vs)):
        if sum(1 for s in signs if s < 0) % 2 == target:
            out.add(frozenset(s * v for s, v in zip(signs, vs)))
    return frozenset(out)


def X0_set(F: Iterable[Clause]) -> ClauseSet:
    return frozenset(c for C in F for c in X0(C))


def _ordered_literals(C: Clause, order: Sequence[int] | None) -> list[int]:
    if order is None:
        return sorted(C, key=var)
    rank = {v: i for i, v in enumerate(order)}
    return sorted(C, key=lambda x: (rank.get(var(x), len(rank)), var(x)))


def natural_splitting(C: Iterable[int], order: Sequence[int] | None = None, first_fresh: int | None = None):
    """Chain split of C into XOR-clauses of length <= 3.

    Returns (pieces, auxiliary variables y_2..y_{n-1}, next fresh variable).
    """
    C = frozenset(C)
    fresh = max_var([C]) + 1 if first_fresh is None else first_fresh
    if len(C) <= 2:
        return [C], [], fresh
    xs = _ordered_literals(C, order)
    n = len(xs)
    ys = list(range(fresh, fresh + n - 2))
    pieces = [frozenset({xs[0], xs[1], ys[0]})]
    for i in range(2, n - 1):
        pieces.append(frozenset({ys[i - 2], xs[i], ys[i - 1]}))
    pieces.append(frozenset({ys[-1], xs[-1]}))
    return pieces, ys, fresh + n - 2


def X1(C: Iterable[int], order: Sequence[int] | None = None, first_fresh: int | None = None) -> ClauseSet:
    pieces, _, _ = natural_splitting(C, order, first_fresh)
    return X0_set(pieces)


@dataclass(frozen=True)
class Splitting:
    pieces: ClauseSet
    auxiliary: tuple[tuple[Clause, tuple[int, ...]], ...]
    next_fresh: int


def split_xor_set(F: Iterable[Clause], order: Sequence[int] | None = None, first_fresh: int | None = None) -> Splitting:
    """Natural splitting of every clause with disjoint fresh variables."""
    clauses = sorted_clauses(_xset(F))
    fresh = max_var(clauses) + 1 if first_fresh is None else first_fresh
    pieces: set[Clause] = set()
    aux = []
    for C in clauses:
        parts, ys, fresh = natural_splitting(C, order, fresh)
        pieces.update(p for p in parts if p)
        if ys:
            aux.append((C, tuple(ys)))
    return Splitting(frozenset(pieces), tuple(aux), fresh)


def X1_set(F: Iterable[Clause], order: Sequence[int] | None = None, first_fresh: int | None = None) -> ClauseSet:
    return X0_set(split_xor_set(F, order, first_fresh).pieces)


def _subsets_in_order(n: int):
    for size in range(n + 1):
        yield from itertools.combinations(range(n), size)


def F_star(F: Iterable[Clause]) -> ClauseSet:
    """All subset sums modulo equivalence, tautologies dropped.

    The first subset (by size, then indices in canonical clause order)
    producing a class is its representative, so input clauses survive.
    """
    clauses = sorted_clauses(_xset(F))
    if not xor_sat(clauses):
        raise ValueError("precondition: satisfiable XOR system")
    seen: dict[Clause, Clause] = {}
    for idx in _subsets_in_order(len(clauses)):
        s = xor_sum(clauses[i] for i in idx)
        if s is INCONSISTENT:
            raise AssertionError("inconsistent sum from a satisfiable system")
        if not s:
            continue
        seen.setdefault(canonical_xor(s), s)
    return frozenset(seen.values())


def X_star(F: Iterable[Clause], order: Sequence[int] | None = None) -> ClauseSet:
    F = _xset(F)
    return X1_set(F_star(F), order, max_var(F) + 1)


@dataclass(frozen=True)
class X2Parts:
    shared: Clause
    left: Clause
    right: Clause
    s: int
    normalized_right: Clause
    flipped: tuple[int, ...] = field(default=())


def x2_parts(C: Iterable[int], D: Iterable[int]) -> X2Parts:
    """Split two XOR-clauses sharing at least two variables through a fresh s."""
    C, D = frozenset(C), frozenset(D)
    I = clause_variables(C) & clause_variables(D)
    if len(I) < 2:
        raise ValueError(f"bound |I| >= 2 failed: |I| = {len(I)}")
    if len(C) <= len(I):
        raise ValueError(f"bound |C| > |I| failed: |C| = {len(C)}, |I| = {len(I)}")
    if len(D) <= len(I):
        raise ValueError(f"bound |D| > |I| failed: |D| = {len(D)}, |I| = {len(I)}")
    c_sign = {var(x): x for x in C}
    flipped = [var(x) for x in D if var(x) in I and c_sign[var(x)] != x]
    normalized = {c_sign[var(x)] if var(x) in I else x for x in D}
    if len(flipped) % 2:
        private = min((x for x in normalized if var(x) not in I), key=var)
        normalized = (normalized - {private}) | {-private}
        flipped.append(var(private))
    s = max_var([C, D]) + 1
    shared_lits = frozenset(x for x in C if var(x) in I)
    return X2Parts(
        shared=shared_lits | {s},
        left=frozenset(x for x in C if var(x) not in I) | {s},
        right=frozenset(x for x in normalized if var(x) not in I) | {s},
        s=s,
        normalized_right=frozenset(normalized),
        flipped=tuple(sorted(flipped)),
    )


def X2(C: Iterable[int], D: Iterable[int]) -> ClauseSet:
    parts = x2_parts(C, D)
    return X1_set([parts.shared, parts.left, parts.right], first_fresh=parts.s + 1)


def hd_two_xor_expected(C: Iterable[int], D: Iterable[int]) -> int:
    """Predicted hardness of X1 of two XOR-clauses: max(1, shared variables)."""
    C, D = frozenset(C), frozenset(D)
    if not C or not D:
        raise ValueError("precondition: both XOR-clauses must be nonempty")
    vc, vd = clause_variables(C), clause_variables(D)
    unsat = vc == vd and xor_parity(C) != xor_parity(D)
    if not unsat and (vc | vd) == (vc & vd):
        raise ValueError("precondition: need an unsatisfiable pair or a proper union of variables")
    return max(1, len(vc & vd))


# Acyclicity

def incidence_graph(family: Sequence[Iterable[Clause]]) -> nx.Graph:
    G = nx.Graph()
    for i, member in enumerate(family):
        G.add_node(("member", i))
        for v in variables(member):
            G.add_edge(("member", i), ("var", v))
    return G


def incidence_acyclic(family: Sequence[Iterable[Clause]]) -> bool:
    G = incidence_graph(family)
    return G.number_of_nodes() == 0 or nx.is_forest(G)


def xor_acyclic(F: Iterable[Clause]) -> bool:
    """Acyclicity of the family of single XOR-clauses."""
    return incidence_acyclic([[c] for c in sorted_clauses(F)])


def variable_interaction_graph(family: Sequence[Iterable[Clause]]) -> nx.Graph:
    G = nx.Graph()
    vs = [variables(m) for m in family]
    G.add_nodes_from(range(len(family)))
    for i, j in itertools.combinations(range(len(family)), 2):
        if vs[i] & vs[j]:
            G.add_edge(i, j)
    return G


# Tseitin graph formulas

@dataclass(frozen=True)
class GeneralGraph:
    """Graph whose edges are literals; loops have one end, other edges two."""

    vertices: tuple
    edges: Mapping[int, tuple]
    charge: Mapping[object, int]

    def __post_init__(self):
        labels = list(self.edges)
        make_clause(labels)
        if len({var(x) for x in labels}) != len(labels):
            raise ValueError("edge labels must use distinct variables")
        vs = set(self.vertices)
        for label, ends in self.edges.items():
            if not 1 <= len(set(ends)) <= 2 or not set(ends) <= vs:
                raise ValueError(f"edge {label} must join one or two known vertices")
        touched = {w for ends in self.edges.values() for w in ends}
        for w in self.vertices:
            if self.charge.get(w, 0) not in (0, 1):
                raise ValueError(f"charge of {w!r} must be 0 or 1")
            if w not in touched and self.charge.get(w, 0):
                raise ValueError(f"isolated vertex {w!r} must have charge 0")


def tseitin_xor(G: GeneralGraph) -> ClauseSet:
    """One XOR-clause per vertex: incident edge literals sum to the charge."""
    out = set()
    for w in G.vertices:
        lits = sorted((x for x, ends in G.edges.items() if w in ends), key=var)
        if G.charge.get(w, 0):
            lits[0] = -lits[0]
        out.add(frozenset(lits))
    return frozenset(c for c in out if c)


def tseitin_formula(G: GeneralGraph) -> ClauseSet:
    return X0_set(tseitin_xor(G))


def bouquet(C: Iterable[int]) -> GeneralGraph:
    return GeneralGraph((0,), {x: (0,) for x in frozenset(C)}, {0: 0})


def dipole(n: int) -> GeneralGraph:
    return GeneralGraph((0, 1), {v: (0, 1) for v in range(1, n + 1)}, {0: 0, 1: 1})


# T_n

def tn_layout(n: int) -> dict:
    """Variables of T_n: x_1..x_n, then the two chains y_2..y_{n-1} and y'_2..y'_{n-1}."""
    if n < 2:
        raise ValueError("n must be at least 2")
    y = {i: n + i - 1 for i in range(2, n)}
    y2 = {i: 2 * n - 4 + i + 1 for i in range(2, n)}
    return {"x": list(range(1, n + 1)), "y": y, "y_prime": y2}


def tn_xor(n: int) -> ClauseSet:
    if n < 2:
        raise ValueError("n must be at least 2")
    base = list(range(1, n))
    return frozenset({frozenset(base + [n]), frozenset(base + [-n])})


def generate_Tn(n: int) -> ClauseSet:
    return X1_set(tn_xor(n))


# Monotone span programs

@dataclass(frozen=True)
class MSP:
    """Systems A_i y = b_i over shared y_1..y_m, switched on by x_i = 0."""

    m: int
    systems: tuple[tuple[np.ndarray, np.ndarray], ...]

    @property
    def n(self) -> int:
        return len(self.systems)

    def __post_init__(self):
        for i, (A, b) in enumerate(self.systems, start=1):
            if A.ndim != 2 or A.shape[1] != self.m or A.shape[0] != b.shape[0]:
                raise ValueError(f"system {i} has inconsistent shape")
            try:
                ok = xor_sat(_rows_to_xor(A, b, None))
            except ValueError:
                ok = 0
            if not ok:
                raise ValueError(f"system {i} is unsatisfiable")


def _rows_to_xor(A: np.ndarray, b: np.ndarray, first_z: int | None) -> list[Clause]:
    """Rows as XOR-clauses; with first_z, row r also gets relaxation variable first_z + r."""
    out = []
    for r, (row, rhs) in enumerate(zip(A.tolist(), b.tolist())):
        support = [j + 1 for j, a in enumerate(row) if a]
        if first_z is not None:
            support.append(first_z + r)
        if not support:
            if rhs:
                raise ValueError("row 0 = 1 is unsatisfiable")
            continue
        out.append(xor_from_equation(support, rhs))
    return out


def msp_relax(M: MSP) -> ClauseSet:
    """Relaxed XOR-clause-set: one fresh z per row, numbered after y_1..y_m."""
    return frozenset(c for group in msp_relax_groups(M) for c in group[1])


def msp_relax_groups(M: MSP) -> list[tuple[tuple[int, ...], list[Clause]]]:
    """Per system: (its relaxation variables, its relaxed XOR-clauses)."""
    z = M.m + 1
    groups = []
    for A, b in M.systems:
        clauses = _rows_to_xor(A, b, z)
        zs = tuple(range(z, z + A.shape[0]))
        z += A.shape[0]
        groups.append((zs, clauses))
    return groups


def msp_active_system(M: MSP, x: Sequence[int]) -> list[Clause]:
    if len(x) != M.n:
        raise ValueError(f"expected {M.n} input bits")
    out = []
    for xi, (A, b) in zip(x, M.systems):
        if xi == 0:
            out.extend(_rows_to_xor(A, b, None))
    return out


def msp_eval(M: MSP, x: Sequence[int]) -> int:
    """0 iff the systems switched on (x_i = 0) are jointly unsatisfiable."""
    return xor_sat(msp_active_system(M, x))


def msp_protocol(M: MSP, x: Sequence[int]) -> frozenset:
    """Relaxation variables of every switched-on system set to 0 (as true literals)."""
    out = set()
    for xi, (zs, _) in zip(x, msp_relax_groups(M)):
        if xi == 0:
            out.update(-z for z in zs)
    return frozenset(out)


def parse_msp(text: str) -> MSP:
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("c ") and ln != "c"]
    if not lines:
        raise FormatError("empty MSP file")
    lineno, head = lines[0]
    parts = head.split()
    if len(parts) != 3 or parts[0] != "msp":
        raise FormatError("expected header 'msp n m'", lineno)
    try:
        n, m = int(parts[1]), int(parts[2])
    except ValueError:
        raise FormatError("non-integer in header", lineno) from None
    blocks: list[list[tuple[list[int], int]]] = []
    for lineno, ln in lines[1:]:
        if ln.startswith("sys"):
            try:
                index = int(ln.split()[1])
            except (IndexError, ValueError):
                raise FormatError("expected 'sys i'", lineno) from None
            if index != len(blocks) + 1:
                raise FormatError(f"expected system {len(blocks) + 1}", lineno)
            blocks.append([])
            continue
        if not blocks:
            raise FormatError("row before the first 'sys' line", lineno)
        left, sep, right = ln.partition("|")
        try:
            bits = [int(t) for t in left.split()]
            rhs = int(right)
        except ValueError:
            raise FormatError("row must be 'bits | b'", lineno) from None
        if not sep or len(bits) != m or any(b not in (0, 1) for b in bits + [rhs]):
            raise FormatError(f"row must have {m} bits, '|', and a bit", lineno)
        blocks[-1].append((bits, rhs))
    if len(blocks) != n:
        raise FormatError(f"expected {n} systems, found {len(blocks)}")
    systems = []
    for rows in blocks:
        A = np.array([r for r, _ in rows], dtype=np.uint8).reshape(len(rows), m)
        b = np.array([rhs for _, rhs in rows], dtype=np.uint8)
        systems.append((A, b))
    return MSP(m, tuple(systems))


def emit_msp(M: MSP) -> str:
    lines = [f"msp {M.n} {M.m}"]
    for i, (A, b) in enumerate(M.systems, start=1):
        lines.append(f"sys {i}")
        for row, rhs in zip(A.tolist(), b.tolist()):
            lines.append(" ".join(str(a) for a in row) + f" | {rhs}")
    return "\n".join(lines) + "\n"


def format_xor(C: Iterable[int]) -> str:
    return "x " + " ".join(str(x) for x in sorted_literals(C) + [0])
