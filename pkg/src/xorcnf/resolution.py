"""Resolution trees, proof checking, Horton-Strahler numbers and bounded saturation."""

from __future__ import annotations

import heapq
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from typing import Union

from .core import (
    EMPTY_CLAUSE,
    Clause,
    ClauseSet,
    FormatError,
    clause_key,
    lit_key,
    make_clause,
    sorted_literals,
    subsumption_eliminate,
)


class NotResolvable(ValueError):
    def __init__(self, C: Clause, D: Clause, clashes: int):
        self.clashes = clashes
        super().__init__(f"clauses clash in {clashes} literals, need exactly 1")


def clash_literals(C: Clause, D: Clause) -> frozenset[int]:
    """Literals of C whose complement lies in D."""
    return frozenset(x for x in C if -x in D)


def resolve(C: Clause, D: Clause) -> Clause:
    clashes = clash_literals(C, D)
    if len(clashes) != 1:
        raise NotResolvable(C, D, len(clashes))
    (x,) = clashes
    return frozenset((C | D) - {x, -x})


@dataclass(frozen=True, eq=False)
class Axiom:
    clause: Clause


@dataclass(frozen=True, eq=False)
class Step:
    """Resolution step; pivot occurs in left.clause, its complement in right.clause."""

    left: "Node"
    right: "Node"
    clause: Clause
    pivot: int


Node = Union[Axiom, Step]


def derive(left: Node, right: Node) -> Step:
    """Resolve two nodes, orienting the pivot by the left clause."""
    clashes = clash_literals(left.clause, right.clause)
    if len(clashes) != 1:
        raise NotResolvable(left.clause, right.clause, len(clashes))
    (x,) = clashes
    return Step(left, right, frozenset((left.clause | right.clause) - {x, -x}), x)


def axiom(lits: Iterable[int]) -> Axiom:
    return Axiom(make_clause(lits))


def nodes_postorder(root: Node) -> list[Node]:
    """Distinct nodes of the dag, children before parents."""
    seen: set[int] = set()
    order: list[Node] = []
    stack: list[tuple[Node, bool]] = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in seen:
            continue
        if isinstance(node, Step) and not expanded:
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))
            continue
        seen.add(id(node))
        order.append(node)
    return order


def proof_clauses(root: Node) -> set[Clause]:
    return {n.clause for n in nodes_postorder(root)}


def proof_problems(root: Node, F: Iterable[Clause], target: Clause | None) -> list[str]:
    """Structural problems, each prefixed with a node path like root.L.R."""
    axioms = frozenset(F)
    problems: list[str] = []
    paths: dict[int, str] = {}
    stack: list[tuple[Node, str]] = [(root, "root")]
    while stack:
        node, path = stack.pop()
        if id(node) in paths:
            continue
        paths[id(node)] = path
        if isinstance(node, Axiom):
            if node.clause not in axioms:
                problems.append(f"{path}: axiom {sorted_literals(node.clause)} not in the clause-set")
            continue
        left, right = node.left.clause, node.right.clause
        clashes = clash_literals(left, right)
        if clashes != {node.pivot}:
            problems.append(f"{path}: parents clash in {sorted_literals(clashes)}, pivot {node.pivot}")
        elif node.clause != (left | right) - {node.pivot, -node.pivot}:
            problems.append(f"{path}: resolvent {sorted_literals(node.clause)} is wrong")
        stack.append((node.right, path + ".R"))
        stack.append((node.left, path + ".L"))
    if target is not None and root.clause != frozenset(target):
        problems.append(f"root: derives {sorted_literals(root.clause)}, expected {sorted_literals(target)}")
    return problems


def check_proof(root: Node, F: Iterable[Clause], target: Clause | None) -> bool:
    return not proof_problems(root, F, target)


def horton_strahler(root: Node) -> int:
    memo: dict[int, int] = {}
    for node in nodes_postorder(root):
        if isinstance(node, Axiom):
            memo[id(node)] = 0
        else:
            a, b = memo[id(node.left)], memo[id(node.right)]
            memo[id(node)] = max(a, b) if a != b else a + 1
    return memo[id(root)]


def proof_width(root: Node) -> int:
    return max(len(n.clause) for n in nodes_postorder(root))


def is_k_resolution(root: Node, k: int) -> bool:
    """Every step has a parent of length at most k."""
    return all(
        min(len(n.left.clause), len(n.right.clause)) <= k
        for n in nodes_postorder(root)
        if isinstance(n, Step)
    )


def emit_proof(root: Node) -> str:
    ids: dict[int, int] = {}
    lines = []
    for i, node in enumerate(nodes_postorder(root), start=1):
        ids[id(node)] = i
        lits = " ".join(str(x) for x in sorted_literals(node.clause) + [0])
        if isinstance(node, Axiom):
            lines.append(f"{i}: {lits}")
        else:
            lines.append(f"{i}: {lits} <- {ids[id(node.left)]} {ids[id(node.right)]} {node.pivot}")
    return "\n".join(lines) + "\n"


def parse_proof(text: str) -> Node:
    """Parse the numbered proof format; the last line is the root."""
    nodes: dict[int, Node] = {}
    last = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        try:
            head, body = line.split(":", 1)
            ident = int(head)
            clause_part, _, source = body.partition("<-")
            values = [int(t) for t in clause_part.split()]
        except ValueError:
            raise FormatError("malformed proof line", lineno) from None
        if not values or values[-1] != 0 or 0 in values[:-1]:
            raise FormatError("clause must end with a single 0", lineno)
        try:
            clause = make_clause(values[:-1])
        except ValueError as exc:
            raise FormatError(str(exc), lineno) from None
        if ident in nodes:
            raise FormatError(f"duplicate id {ident}", lineno)
        if source.strip():
            try:
                a, b, pivot = (int(t) for t in source.split())
            except ValueError:
                raise FormatError("resolvent needs 'id1 id2 pivot'", lineno) from None
            if a not in nodes or b not in nodes:
                raise FormatError("reference to an undefined id", lineno)
            nodes[ident] = Step(nodes[a], nodes[b], clause, pivot)
        else:
            nodes[ident] = Axiom(clause)
        last = nodes[ident]
    if last is None:
        raise FormatError("empty proof")
    return last


# Saturation

Allowed = Callable[[int, int, int], bool]


def _first(c: Clause) -> int:
    return min(c, key=lit_key)


class _Saturator:
    """Given-clause saturation with forward and backward subsumption."""

    def __init__(self, F: Iterable[Clause], allowed: Allowed, keep: Callable[[Clause], bool]):
        self.allowed = allowed
        self.keep = keep
        self.active: dict[Clause, None] = {}
        self.occurs: dict[int, set[Clause]] = {}
        self.first: dict[int, set[Clause]] = {}
        self.passive: list[tuple[int, tuple, Clause]] = []
        self.queued: set[Clause] = set()
        for c in subsumption_eliminate(c for c in F if keep(c)):
            self._enqueue(c)

    def _enqueue(self, c: Clause) -> None:
        if c not in self.queued:
            self.queued.add(c)
            heapq.heappush(self.passive, (len(c), clause_key(c), c))

    def _subsumed(self, c: Clause) -> bool:
        if not c:
            return EMPTY_CLAUSE in self.active
        # a subset of c has its canonical first literal inside c
        return any(a <= c for x in c for a in self.first.get(x, ()))

    def _remove(self, a: Clause) -> None:
        del self.active[a]
        for x in a:
            self.occurs[x].discard(a)
        self.first[_first(a)].discard(a)

    def run(self, stop_on_empty: bool) -> bool:
        """Saturate; returns True iff the empty clause was derived."""
        while self.passive:
            _, _, c = heapq.heappop(self.passive)
            self.queued.discard(c)
            if self._subsumed(c):
                continue
            if not c:
                self.active = {EMPTY_CLAUSE: None}
                self.occurs = {}
                self.first = {}
                self.passive = []
                return True
            # backward subsumption: active clauses containing all of c
            rarest = min(c, key=lambda x: len(self.occurs.get(x, ())))
            for a in [a for a in self.occurs.get(rarest, ()) if c < a]:
                self._remove(a)
            self.active[c] = None
            for x in c:
                self.occurs.setdefault(x, set()).add(c)
            self.first.setdefault(_first(c), set()).add(c)
            for x in c:
                for d in list(self.occurs.get(-x, ())):
                    if d is c:
                        continue
                    if sum(1 for y in c if -y in d) != 1:
                        continue
                    r = (c | d) - {x, -x}
                    if not self.allowed(len(c), len(d), len(r)):
                        continue
                    if self.keep(r) and not self._subsumed(r):
                        if not r and stop_on_empty:
                            return True
                        self._enqueue(r)
        return EMPTY_CLAUSE in self.active

    def result(self) -> ClauseSet:
        return subsumption_eliminate(self.active)


def _k_allowed(k: int) -> Allowed:
    return lambda a, b, r: min(a, b) <= k


def _width_allowed(k: int) -> Allowed:
    return lambda a, b, r: a <= k and b <= k and r <= k


def resolution_closure(F: Iterable[Clause]) -> ClauseSet:
    """Unrestricted resolution closure with subsumption (the prime implicates)."""
    s = _Saturator(F, lambda a, b, r: True, lambda c: True)
    s.run(stop_on_empty=False)
    return s.result()


def k_resolution_saturate(F: Iterable[Clause], k: int) -> ClauseSet:
    """Closure under steps with a parent of length <= k, subsumption-reduced.

    Exponential in general; intended for small inputs or small k.
    """
    s = _Saturator(F, _k_allowed(k), lambda c: True)
    s.run(stop_on_empty=False)
    return s.result()


def k_refutes(F: Iterable[Clause], k: int) -> bool:
    """Does k-resolution derive the empty clause?  Stops at the first refutation."""
    return _Saturator(F, _k_allowed(k), lambda c: True).run(stop_on_empty=True)


def width_saturate(F: Iterable[Clause], k: int) -> ClauseSet:
    """Closure using only axioms and resolvents of length <= k."""
    s = _Saturator(F, _width_allowed(k), lambda c: len(c) <= k)
    s.run(stop_on_empty=False)
    return s.result()


def width_refutes(F: Iterable[Clause], k: int) -> bool:
    return _Saturator(F, _width_allowed(k), lambda c: len(c) <= k).run(stop_on_empty=True)


def build_Tn_refutation(n: int) -> Node:
    """Explicit width-3 refutation of T_n with 18n-29 distinct clauses.

    Works down the two chains from y_{n-1}: at each level the pair
    {-y,-y'}, {y,y'} (y and y' differ) is pushed one step towards x_1,
    and the last level yields the units {-x1} and {x1}.
    """
    from .xortrans import tn_layout

    if n < 3:
        raise ValueError("n must be at least 3")
    lay = tn_layout(n)
    x, y, yp = lay["x"], lay["y"], lay["y_prime"]
    cache: dict[Clause, Axiom] = {}

    def ax(*lits: int) -> Axiom:
        c = make_clause(lits)
        if c not in cache:
            cache[c] = Axiom(c)
        return cache[c]

    def piece(a: int, xi: int, b: int) -> tuple[Axiom, Axiom, Axiom, Axiom]:
        # the four clauses of a + xi + b = 0
        return (ax(-a, -xi, -b), ax(-a, xi, b), ax(a, -xi, b), ax(a, xi, -b))

    last, xn = y[n - 1], x[n - 1]
    lastp = yp[n - 1]
    e1 = derive(ax(-last, xn), ax(-lastp, -xn))
    e2 = derive(ax(last, -xn), ax(lastp, xn))
    for i in range(n - 1, 2, -1):
        c1, c2, c3, c4 = piece(y[i - 1], x[i - 1], y[i])
        d1, d2, d3, d4 = piece(yp[i - 1], x[i - 1], yp[i])
        neg = derive(derive(derive(c1, e2), d2), derive(derive(c2, e1), d1))
        pos = derive(derive(derive(c3, e1), d4), derive(derive(c4, e2), d3))
        e1, e2 = neg, pos
    c1, c2, c3, c4 = piece(x[0], x[1], y[2])
    d1, d2, d3, d4 = piece(x[0], x[1], yp[2])
    not_x1 = derive(derive(derive(c1, e2), d1), derive(derive(c2, e1), d2))
    x1 = derive(derive(d3, derive(c3, e1)), derive(d4, derive(c4, e2)))
    return derive(not_x1, x1)
