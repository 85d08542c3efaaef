"""Boolean circuits, Tseitin translations, and the bridge between UR-representations
and monotone circuits over doubled variables.

Doubled inputs: for an original variable v the pair (v0, v1) reads
(1,1) unassigned, (0,1) v = 0, (1,0) v = 1, (0,0) contradiction.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

import numpy as np

from .core import (
    EMPTY_CLAUSE,
    Clause,
    ClauseSet,
    FormatError,
    apply_literals,
    literals_of,
    max_var,
    pure_clause,
    var,
    variables,
)
from .measures import primes_within
from .reductions import sat_decide, unit_propagate

OPS = ("AND", "OR", "XOR", "NOT", "TT")
MAX_TT_FANIN = 8


@dataclass(frozen=True)
class Gate:
    """A gate; for TT, bit i of ``table`` is the value where bit j of i is args[j]."""

    op: str
    args: tuple[int, ...]
    table: int | None = None

    def __post_init__(self):
        if self.op not in OPS:
            raise ValueError(f"unknown gate type {self.op!r}")
        if len(set(self.args)) != len(self.args):
            raise ValueError(f"{self.op} gate has duplicate arguments")
        if self.op == "NOT" and len(self.args) != 1:
            raise ValueError("NOT takes exactly one argument")
        if self.op == "TT":
            if len(self.args) > MAX_TT_FANIN:
                raise ValueError(f"truth-table gates allow at most {MAX_TT_FANIN} arguments")
            if self.table is None or not 0 <= self.table < 1 << (1 << len(self.args)):
                raise ValueError("truth table does not fit the fan-in")
        elif self.table is not None:
            raise ValueError("only TT gates carry a table")

    def value(self, bits: list[int]) -> int:
        if self.op == "AND":
            return int(all(bits))
        if self.op == "OR":
            return int(any(bits))
        if self.op == "XOR":
            return sum(bits) % 2
        if self.op == "NOT":
            return 1 - bits[0]
        index = sum(b << j for j, b in enumerate(bits))
        return (self.table >> index) & 1


def AND(*args: int) -> Gate:
    return Gate("AND", tuple(args))


def OR(*args: int) -> Gate:
    return Gate("OR", tuple(args))


def XOR(*args: int) -> Gate:
    return Gate("XOR", tuple(args))


def NOT(a: int) -> Gate:
    return Gate("NOT", (a,))


def TT(args: Iterable[int], table: int) -> Gate:
    return Gate("TT", tuple(args), table)


@dataclass(frozen=True)
class Circuit:
    """A dag of gates over input variables with one output node.

    ``doubling`` maps an original variable v to its input pair (v0, v1).
    """

    inputs: tuple[int, ...]
    gates: Mapping[int, Gate]
    output: int
    doubling: Mapping[int, tuple[int, int]] | None = field(default=None)

    def __post_init__(self):
        ins = set(self.inputs)
        if len(ins) != len(self.inputs) or any(not isinstance(i, int) or i <= 0 for i in ins):
            raise ValueError("inputs must be distinct positive integers")
        for v, g in self.gates.items():
            if not isinstance(v, int) or v <= 0:
                raise ValueError(f"node id {v!r} must be a positive integer")
            if v in ins:
                raise ValueError(f"node {v} is both an input and a gate")
            for a in g.args:
                if a not in ins and a not in self.gates:
                    raise ValueError(f"node {v} uses undefined node {a}")
        if self.output not in ins and self.output not in self.gates:
            raise ValueError(f"output {self.output} is not a node")
        if self.doubling is not None:
            seen = [i for pair in self.doubling.values() for i in pair]
            if len(set(seen)) != len(seen) or not set(seen) <= ins:
                raise ValueError("doubling pairs must be distinct inputs")
        self.topological_order()

    def topological_order(self) -> list[int]:
        """Gates in dependency order, smallest ready id first."""
        import heapq

        pending = {v: sum(1 for a in g.args if a in self.gates) for v, g in self.gates.items()}
        users: dict[int, list[int]] = {}
        for v, g in self.gates.items():
            for a in g.args:
                if a in self.gates:
                    users.setdefault(a, []).append(v)
        ready = [v for v, n in pending.items() if n == 0]
        heapq.heapify(ready)
        order = []
        while ready:
            v = heapq.heappop(ready)
            order.append(v)
            for u in users.get(v, ()):
                pending[u] -= 1
                if pending[u] == 0:
                    heapq.heappush(ready, u)
        if len(order) != len(self.gates):
            raise ValueError("circuit contains a cycle")
        return order

    def size(self) -> int:
        """l(C) = nodes + edges + inputs."""
        edges = sum(len(g.args) for g in self.gates.values())
        return len(self.inputs) + len(self.gates) + edges + len(self.inputs)

    def is_monotone(self) -> bool:
        return all(g.op in ("AND", "OR") for g in self.gates.values())

    def reachable(self) -> set[int]:
        seen = set()
        stack = [self.output]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            if v in self.gates:
                stack.extend(self.gates[v].args)
        return seen


def evaluate(C: Circuit, phi: Mapping[int, int]) -> int:
    """Value of the output under a total assignment to the inputs."""
    values = {i: int(phi[i]) for i in C.inputs}
    for v in C.topological_order():
        g = C.gates[v]
        values[v] = g.value([values[a] for a in g.args])
    return values[C.output]


def evaluate_all(C: Circuit) -> np.ndarray:
    """Output on all 2^|inputs| assignments; bit j of the index is inputs[j]."""
    size = 1 << len(C.inputs)
    idx = np.arange(size, dtype=np.int64)
    values: dict[int, np.ndarray] = {
        i: ((idx >> j) & 1).astype(bool) for j, i in enumerate(C.inputs)
    }
    for v in C.topological_order():
        g = C.gates[v]
        args = [values[a] for a in g.args]
        if g.op == "AND":
            out = np.ones(size, dtype=bool)
            for a in args:
                out &= a
        elif g.op == "OR":
            out = np.zeros(size, dtype=bool)
            for a in args:
                out |= a
        elif g.op == "XOR":
            out = np.zeros(size, dtype=bool)
            for a in args:
                out ^= a
        elif g.op == "NOT":
            out = ~args[0]
        else:
            table = np.array([(g.table >> i) & 1 for i in range(1 << len(args))], dtype=bool)
            index = np.zeros(size, dtype=np.int64)
            for j, a in enumerate(args):
                index |= a.astype(np.int64) << j
            out = table[index]
        values[v] = out
    return values[C.output].astype(np.uint8)


# Gate prime implicates

def _falsified_rows(args: tuple[int, ...], fn) -> list[Clause]:
    """One full clause per row of the table where fn is 0."""
    rows = []
    for bits in itertools.product((0, 1), repeat=len(args)):
        if not fn(list(bits)):
            rows.append(frozenset(-a if b else a for a, b in zip(args, bits)))
    return rows


def _function_primes(args: tuple[int, ...], fn) -> ClauseSet:
    return primes_within(_falsified_rows(args, fn))


def gate_primes(gate: Gate) -> ClauseSet:
    """primec_0(b_v) as clauses over the argument nodes."""
    if gate.op == "AND":
        return frozenset(frozenset({a}) for a in gate.args)
    if gate.op == "OR":
        return frozenset({frozenset(gate.args)})
    if gate.op == "NOT":
        return frozenset({frozenset({-gate.args[0]})})
    if gate.op == "XOR":
        # parity functions have only full prime implicates
        return frozenset(_falsified_rows(gate.args, gate.value))
    return _function_primes(gate.args, gate.value)


def equivalence_primes(v: int, gate: Gate) -> ClauseSet:
    """primec_0(v <-> b_v)."""
    if gate.op == "AND":
        return frozenset(
            [frozenset({-v, a}) for a in gate.args] + [frozenset([v] + [-a for a in gate.args])]
        )
    if gate.op == "OR":
        return frozenset(
            [frozenset({v, -a}) for a in gate.args] + [frozenset([-v] + list(gate.args))]
        )
    if gate.op == "NOT":
        a = gate.args[0]
        return frozenset({frozenset({v, a}), frozenset({-v, -a})})
    if gate.op == "XOR":
        return frozenset(_falsified_rows((v,) + gate.args, lambda bits: int(bits[0] == gate.value(bits[1:]))))
    return _function_primes((v,) + gate.args, lambda bits: int(bits[0] == gate.value(bits[1:])))


def forward_primes(v: int, gate: Gate) -> ClauseSet:
    """primec_0(v -> b_v)."""
    return frozenset(frozenset({-v}) | P for P in gate_primes(gate))


def nnf_violation(C: Circuit) -> int | None:
    """First gate whose prime implicates have a negative literal on a non-input."""
    for v in C.topological_order():
        for P in gate_primes(C.gates[v]):
            if any(x < 0 and var(x) in C.gates for x in P):
                return v
    return None


def tseitin(C: Circuit) -> ClauseSet:
    clauses = {frozenset({C.output})}
    for v, g in C.gates.items():
        clauses.update(equivalence_primes(v, g))
    return frozenset(clauses)


def reduced_tseitin(C: Circuit) -> ClauseSet:
    bad = nnf_violation(C)
    if bad is not None:
        raise ValueError(f"gate {bad} violates the general NNF condition")
    clauses = {frozenset({C.output})}
    for v, g in C.gates.items():
        clauses.update(forward_primes(v, g))
    return frozenset(clauses)


def ropl(F: Iterable[Clause]) -> ClauseSet:
    """Unit-clause propagation followed by pure-literal elimination, to a fixpoint."""
    F = frozenset(F)
    while True:
        F = unit_propagate(F).reduced
        if EMPTY_CLAUSE in F:
            return F
        pure = pure_clause(F)
        if not pure:
            return F
        F = apply_literals(pure, F)


# Monotonisation

def monotonisation_oracle(F: Iterable[Clause], pairs: Mapping[int, tuple[int, int]]) -> int:
    """f-hat on doubled inputs: 0 on a contradiction, else satisfiability of phi * F."""
    lits = []
    for v, (b0, b1) in pairs.items():
        if (b0, b1) == (0, 0):
            return 0
        if (b0, b1) == (0, 1):
            lits.append(-v)
        elif (b0, b1) == (1, 0):
            lits.append(v)
    return sat_decide(apply_literals(lits, frozenset(F)))


class CircuitBuilder:
    """Allocates node ids and records gates."""

    def __init__(self, first_id: int):
        self.next_id = first_id
        self.gates: dict[int, Gate] = {}
        self.inputs: list[int] = []

    def new_input(self) -> int:
        v = self.next_id
        self.next_id += 1
        self.inputs.append(v)
        return v

    def add(self, gate: Gate) -> int:
        v = self.next_id
        self.next_id += 1
        self.gates[v] = gate
        return v

    def build(self, output: int, doubling=None) -> Circuit:
        return Circuit(tuple(self.inputs), dict(self.gates), output, doubling)


@dataclass(frozen=True)
class LayeredCircuit:
    """Result of the UR-to-monotone construction with its layer bookkeeping."""

    circuit: Circuit
    layers: int
    layer_nodes: int


def ur_to_monotone(F: Iterable[Clause], V: Iterable[int]) -> Circuit:
    return ur_to_monotone_layers(F, V).circuit


def ur_to_monotone_layers(F: Iterable[Clause], V: Iterable[int]) -> LayeredCircuit:
    """Monotone circuit over doubled V simulating N rounds of unit propagation.

    Node v0[i][j] is 0 iff v_i = 0 has been derived after j rounds, and
    v1[i][j] likewise for v_i = 1; auxiliary variables start unassigned.
    """
    F = frozenset(F)
    V = sorted(set(V))
    fv = variables(F)
    if not set(V) <= fv:
        raise ValueError(f"scope variables {sorted(set(V) - fv)} do not occur in F")
    b = CircuitBuilder(max_var(F) + 1)
    doubling = {v: (b.new_input(), b.new_input()) for v in V}
    if EMPTY_CLAUSE in F:
        out = b.add(OR())
        return LayeredCircuit(b.build(out, doubling), 0, 1)
    if not F:
        out = b.add(AND())
        return LayeredCircuit(b.build(out, doubling), 0, 1)
    order = sorted(fv)
    N = len(order)
    current: dict[tuple[int, int], int] = {}
    for v in order:
        for eps in (0, 1):
            current[(v, eps)] = doubling[v][eps] if v in doubling else b.add(AND())
    layer_nodes = 2 * N
    by_literal: dict[int, list[Clause]] = {}
    for c in sorted(F, key=lambda c: sorted(c)):
        for x in c:
            by_literal.setdefault(x, []).append(c)

    def alive(x: int, layer: dict) -> int:
        # 1 iff literal x has not been derived false
        return layer[(var(x), 0)] if x > 0 else layer[(var(x), 1)]

    for _ in range(N):
        nxt: dict[tuple[int, int], int] = {}
        ors: dict[tuple[int, ...], int] = {}
        for v in order:
            for eps, lit in ((0, -v), (1, v)):
                args = [current[(v, eps)]]
                for c in by_literal.get(lit, ()):
                    key = tuple(sorted(alive(x, current) for x in c if x != lit))
                    if key not in ors:
                        ors[key] = b.add(OR(*key))
                    args.append(ors[key])
                nxt[(v, eps)] = b.add(AND(*args))
                layer_nodes += 1
        current = nxt
    finals = [b.add(OR(current[(v, 0)], current[(v, 1)])) for v in order]
    out = b.add(AND(*finals))
    return LayeredCircuit(b.build(out, doubling), N, layer_nodes + 1)


def _renumber(C: Circuit, start: int) -> tuple[Circuit, dict[int, int]]:
    """Give gates consecutive ids from ``start`` in topological order."""
    mapping = {i: i for i in C.inputs}
    gates = {}
    nxt = start
    for v in C.topological_order():
        mapping[v] = nxt
        nxt += 1
    for v in C.topological_order():
        g = C.gates[v]
        gates[mapping[v]] = Gate(g.op, tuple(mapping[a] for a in g.args), g.table)
    return Circuit(C.inputs, gates, mapping[C.output], C.doubling), mapping


def _substitution(doubling: Mapping[int, tuple[int, int]]) -> dict[int, int]:
    sub = {}
    for v, (in0, in1) in doubling.items():
        sub[in0], sub[-in0] = v, -v
        sub[in1], sub[-in1] = -v, v
    return sub


def _substitute(F: Iterable[Clause], sub: Mapping[int, int]) -> ClauseSet:
    out = set()
    for c in F:
        lits = {sub.get(x, x) for x in c}
        if not any(-x in lits for x in lits):
            out.add(frozenset(lits))
    return frozenset(out)


def _require_doubling(C: Circuit) -> Mapping[int, tuple[int, int]]:
    if C.doubling is None:
        raise ValueError("circuit has no doubled-input map")
    doubled = {i for pair in C.doubling.values() for i in pair}
    if doubled != set(C.inputs):
        raise ValueError("every input must belong to a doubled pair")
    return C.doubling


def monotone_to_ur(C: Circuit, reduced: bool = False) -> ClauseSet:
    """Tseitin-translate, replace v0 by v and v1 by -v, drop clashing clauses."""
    doubling = _require_doubling(C)
    R, _ = _renumber(C, max(list(doubling) + list(C.inputs), default=0) + 1)
    F = reduced_tseitin(R) if reduced else tseitin(R)
    return _substitute(F, _substitution(doubling))


def _fold(C: Circuit, consts: Mapping[int, int]):
    """Constant-propagate fixed inputs through an AND/OR circuit.

    Returns (gates over surviving nodes, output node or constant 0/1).
    """
    value: dict[int, int] = dict(consts)
    gates: dict[int, Gate] = {}
    for v in C.topological_order():
        g = C.gates[v]
        if g.op not in ("AND", "OR"):
            raise ValueError(f"gate {v} is not monotone ({g.op})")
        absorbing = 0 if g.op == "AND" else 1
        args = []
        result = None
        for a in g.args:
            if a in value:
                if value[a] == absorbing:
                    result = absorbing
                    break
            else:
                args.append(a)
        if result is None and not args:
            result = 1 - absorbing
        if result is not None:
            value[v] = result
        else:
            gates[v] = Gate(g.op, tuple(args))
    out = value.get(C.output, C.output)
    return gates, out, value


def _side_clauses(C: Circuit, x: int, in0: int, in1: int, fresh: int) -> tuple[ClauseSet, int]:
    """Clauses making unit propagation derive x once f-hat with x = 0 is refuted."""
    consts = {in0: 0, in1: 1} if x > 0 else {in0: 1, in1: 0}
    gates, out, value = _fold(C, consts)
    if out in (0, 1):
        return (frozenset({frozenset({x})}) if out == 0 else frozenset()), fresh
    keep = set()
    stack = [out]
    while stack:
        v = stack.pop()
        if v in keep or v not in gates:
            continue
        keep.add(v)
        stack.extend(gates[v].args)
    rename = {}
    for v in sorted(keep):
        rename[v] = fresh
        fresh += 1
    clauses = set()
    for v in keep:
        g = gates[v]
        h = Gate(g.op, tuple(rename.get(a, a) for a in g.args))
        if v == out:
            clauses.update(frozenset({x}) | P for P in gate_primes(h))
        else:
            clauses.update(equivalence_primes(rename[v], h))
    if out not in gates:
        clauses.add(frozenset({x, out}))
    return frozenset(clauses), fresh


def to_forcing(C: Circuit) -> ClauseSet:
    """The UR-representation from C plus one side translation per literal of f."""
    doubling = _require_doubling(C)
    base = monotone_to_ur(C)
    fresh = max([max_var(base)] + list(doubling) + list(C.inputs)) + 1
    sub = _substitution(doubling)
    out = set(base)
    for v in sorted(doubling):
        in0, in1 = doubling[v]
        for x in (v, -v):
            clauses, fresh = _side_clauses(C, x, in0, in1, fresh)
            out.update(_substitute(clauses, sub))
    return frozenset(out)


def ur_rep_to_forcing(F: Iterable[Clause], V: Iterable[int]) -> ClauseSet:
    return to_forcing(ur_to_monotone(F, V))


# Examples and text format

def nae3_circuit() -> tuple[Circuit, dict[str, int]]:
    """Monotone formula for f-hat of not-all-equal (a|b|c) & (-a|-b|-c), a, b, c = 1, 2, 3."""
    b = CircuitBuilder(4)
    pairs = {v: (b.new_input(), b.new_input()) for v in (1, 2, 3)}
    a0, b0, c0 = (pairs[v][0] for v in (1, 2, 3))
    a1, b1, c1 = (pairs[v][1] for v in (1, 2, 3))
    w = [b.add(OR(a0, b0, c0)), b.add(OR(a1, b1, c1)), b.add(OR(a0, a1)), b.add(OR(b0, b1)), b.add(OR(c0, c1))]
    o = b.add(AND(*w))
    names = {"a": 1, "b": 2, "c": 3, "o": o}
    names.update({f"w{i + 1}": g for i, g in enumerate(w)})
    return b.build(o, pairs), names


def xor_chain_circuit(n: int) -> Circuit:
    """Inputs 1..n; y_2 = x1 xor x2, y_i = y_{i-1} xor x_i, output = not (y_{n-1} xor x_n)."""
    if n < 3:
        raise ValueError("n must be at least 3")
    gates: dict[int, Gate] = {}
    prev = n + 1
    gates[prev] = XOR(1, 2)
    for i in range(3, n):
        gates[prev + 1] = XOR(prev, i)
        prev += 1
    out = prev + 1
    gates[out] = TT((prev, n), 0b1001)
    return Circuit(tuple(range(1, n + 1)), gates, out)


_NODE_RE = re.compile(r"^(\d+)\s*=\s*([A-Z]+)\s*\((.*)\)$")


def parse_circuit(text: str) -> Circuit:
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#") and not ln.startswith("c ")]
    if not lines:
        raise FormatError("empty circuit file")
    lineno, head = lines[0]
    fields = dict(tok.split(":", 1) for tok in head.split()[1:] if ":" in tok)
    if not head.startswith("circuit") or "inputs" not in fields or "output" not in fields:
        raise FormatError("expected 'circuit inputs:<list> output:<node>'", lineno)
    try:
        inputs = tuple(int(t) for t in fields["inputs"].split(",") if t)
        output = int(fields["output"])
        doubling = None
        if "doubled" in fields:
            doubling = {}
            for item in fields["doubled"].split(","):
                v, pair = item.split("=")
                a, b = pair.split("/")
                doubling[int(v)] = (int(a), int(b))
    except ValueError:
        raise FormatError("malformed header field", lineno) from None
    gates: dict[int, Gate] = {}
    for lineno, ln in lines[1:]:
        m = _NODE_RE.match(ln)
        if not m:
            raise FormatError("expected 'node = OP(args)'", lineno)
        node, op, body = int(m.group(1)), m.group(2), m.group(3)
        if node in gates:
            raise FormatError(f"node {node} defined twice", lineno)
        try:
            if op == "TT":
                arg_part, _, hex_part = body.partition(";")
                args = tuple(int(t) for t in arg_part.replace(",", " ").split())
                gates[node] = TT(args, int(hex_part.strip(), 16))
            else:
                args = tuple(int(t) for t in body.replace(",", " ").split())
                gates[node] = Gate(op, args)
        except ValueError as exc:
            raise FormatError(str(exc), lineno) from None
    try:
        return Circuit(inputs, gates, output, doubling)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def emit_circuit(C: Circuit) -> str:
    head = f"circuit inputs:{','.join(map(str, C.inputs))} output:{C.output}"
    if C.doubling is not None:
        pairs = ",".join(f"{v}={a}/{b}" for v, (a, b) in sorted(C.doubling.items()))
        head += f" doubled:{pairs}"
    lines = [head]
    for v in C.topological_order():
        g = C.gates[v]
        args = ",".join(map(str, g.args))
        if g.op == "TT":
            lines.append(f"{v} = TT({args}; {g.table:x})")
        else:
            lines.append(f"{v} = {g.op}({args})")
    return "\n".join(lines) + "\n"


def ur_horn_form(F: Iterable[Clause], V: Iterable[int]) -> ClauseSet:
    """UR-representation whose clauses become Horn once positive V-literals are dropped.

    Reduced translation of the compiled monotone circuit (dual Horn on the
    auxiliary variables), with every auxiliary variable flipped.
    """
    V = set(V)
    G = monotone_to_ur(ur_to_monotone(F, V), reduced=True)
    return frozenset(frozenset(x if var(x) in V else -x for x in c) for c in G)


def horn_after_dropping_positive(F: Iterable[Clause], V: Iterable[int]) -> bool:
    """Removing positive literals over V leaves a Horn clause-set."""
    V = set(V)
    return all(sum(1 for x in c if x > 0 and x not in V) <= 1 for c in F)


def literal_names(F: Iterable[Clause]) -> frozenset[int]:
    return literals_of(F)
