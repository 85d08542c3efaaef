"""Generalised unit-clause propagation r_k, forced literals, and the SAT oracle."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .core import (
    BOTTOM_SET,
    EMPTY_CLAUSE,
    ClauseSet,
    PartialAssignment,
    apply_literals,
    lit_key,
    literals_of,
)


class _AllLiterals:
    """Sentinel for frl(F) of an unsatisfiable F: every literal is forced."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __contains__(self, lit) -> bool:
        return True

    def __repr__(self) -> str:
        return "ALL"


ALL = _AllLiterals()


@dataclass(frozen=True)
class ReductionResult:
    reduced: ClauseSet
    assignment: PartialAssignment

    @property
    def refuted(self) -> bool:
        return EMPTY_CLAUSE in self.reduced


def _unit_propagate(F: ClauseSet) -> tuple[ClauseSet | None, set[int]]:
    """Returns (reduced, true literals) or (None, partial literals) on conflict."""
    assigned: set[int] = set()
    while True:
        if EMPTY_CLAUSE in F:
            return None, assigned
        units = {next(iter(c)) for c in F if len(c) == 1}
        if not units:
            return F, assigned
        if any(-u in units for u in units):
            return None, assigned
        assigned |= units
        F = apply_literals(units, F)


def _canonical_literals(F: ClauseSet) -> list[int]:
    return sorted(literals_of(F), key=lit_key)


class Prober:
    """Failed-literal search for r_k with a memo valid for one top-level call."""

    def __init__(self):
        self.memo: dict[tuple[int, ClauseSet], bool] = {}

    def refutes(self, F: ClauseSet, k: int) -> bool:
        """True iff r_k(F) = {bottom}."""
        if EMPTY_CLAUSE in F:
            return True
        if k <= 0:
            return False
        key = (k, F)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        G, _ = _unit_propagate(F)
        result = G is None
        if not result and k >= 2:
            # by confluence, one failed literal suffices to continue at level k
            for x in _canonical_literals(G):
                if self.refutes(apply_literals((-x,), G), k - 1):
                    result = self.refutes(apply_literals((x,), G), k)
                    break
        self.memo[key] = result
        return result

    def reduce(self, F: ClauseSet, k: int) -> tuple[ClauseSet | None, set[int]]:
        """r_k(F) as (reduced, true literals); reduced is None on refutation."""
        if EMPTY_CLAUSE in F:
            return None, set()
        if k <= 0:
            return F, set()
        G, assigned = _unit_propagate(F)
        if G is None or k == 1:
            return G, assigned
        changed = True
        while changed:
            changed = False
            for x in _canonical_literals(G):
                if self.refutes(apply_literals((-x,), G), k - 1):
                    G, more = _unit_propagate(apply_literals((x,), G))
                    assigned.add(x)
                    assigned |= more
                    if G is None:
                        return None, assigned
                    changed = True
                    break
        return G, assigned


def r_k(k: int, F: ClauseSet) -> ReductionResult:
    """Generalised unit-clause propagation at level k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    F = frozenset(F)
    G, assigned = Prober().reduce(F, k)
    if G is None:
        return ReductionResult(BOTTOM_SET, PartialAssignment.from_literals(assigned))
    return ReductionResult(G, PartialAssignment.from_literals(assigned))


def unit_propagate(F: ClauseSet) -> ReductionResult:
    return r_k(1, F)


def refutes(k: int, F: ClauseSet) -> bool:
    return Prober().refutes(frozenset(F), k)


def _dpll(F: ClauseSet) -> frozenset[int] | None:
    G, assigned = _unit_propagate(F)
    if G is None:
        return None
    if not G:
        return frozenset(assigned)
    shortest = min(G, key=lambda c: (len(c), sorted(c, key=lit_key)))
    x = min(shortest, key=lit_key)
    for choice in (x, -x):
        model = _dpll(apply_literals((choice,), G))
        if model is not None:
            return model | assigned | {choice}
    return None


def satisfying_literals(F: ClauseSet) -> frozenset[int] | None:
    """Literals of some satisfying partial assignment, or None if unsatisfiable."""
    return _dpll(frozenset(F))


def sat_decide(F: ClauseSet) -> int:
    """1 iff F is satisfiable."""
    return int(_dpll(frozenset(F)) is not None)


def forced_literals(F: ClauseSet):
    """frl(F) restricted to lit(F), or ALL for unsatisfiable F."""
    F = frozenset(F)
    if not sat_decide(F):
        return ALL
    return frozenset(x for x in literals_of(F) if not sat_decide(apply_literals((-x,), F)))


def r_inf(F: ClauseSet) -> ReductionResult:
    """Apply all forced assignments until none remain."""
    F = frozenset(F)
    assigned: set[int] = set()
    while True:
        forced = forced_literals(F)
        if forced is ALL:
            return ReductionResult(BOTTOM_SET, PartialAssignment.from_literals(assigned))
        if not forced:
            return ReductionResult(F, PartialAssignment.from_literals(assigned))
        assigned |= forced
        F = apply_literals(forced, F)


class Propagator:
    """Indexed unit propagation for repeated queries against one large clause-set."""

    def __init__(self, F: Iterable[Iterable[int]]):
        self.clauses = [tuple(c) for c in F]
        self.has_empty = any(len(c) == 0 for c in self.clauses)
        self.occurs: dict[int, list[int]] = {}
        for i, c in enumerate(self.clauses):
            for x in c:
                self.occurs.setdefault(x, []).append(i)
        self.units = [c[0] for c in self.clauses if len(c) == 1]

    def run(self, true_lits: Iterable[int]) -> tuple[bool, set[int]]:
        """Propagate from the given literals; returns (conflict, true literal set)."""
        if self.has_empty:
            return True, set()
        value: set[int] = set()
        queue: list[int] = []
        for x in list(true_lits) + self.units:
            if -x in value:
                return True, value
            if x not in value:
                value.add(x)
                queue.append(x)
        clauses, occurs = self.clauses, self.occurs
        while queue:
            x = queue.pop()
            for i in occurs.get(-x, ()):
                open_lit = None
                count = 0
                for y in clauses[i]:
                    if y in value:
                        break
                    if -y not in value:
                        count += 1
                        if count > 1:
                            break
                        open_lit = y
                else:
                    if count == 0:
                        return True, value
                    value.add(open_lit)
                    queue.append(open_lit)
        return False, value

    def residual(self, value: set[int]) -> ClauseSet:
        out = set()
        for c in self.clauses:
            if any(y in value for y in c):
                continue
            out.add(frozenset(y for y in c if -y not in value))
        return frozenset(out)

    def satisfied_all(self, value: set[int]) -> bool:
        return all(any(y in value for y in c) for c in self.clauses)

    def solve(self, true_lits: Iterable[int] = ()) -> set[int] | None:
        """DPLL over the indexed clauses; returns a model's true literals or None."""
        conflict, value = self.run(true_lits)
        if conflict:
            return None
        stack = [value]
        while stack:
            value = stack.pop()
            branch = None
            for c in self.clauses:
                if any(y in value for y in c):
                    continue
                branch = next(y for y in c if -y not in value)
                break
            if branch is None:
                return value
            for choice in (-branch, branch):
                conflict, extended = self.run(value | {choice})
                if not conflict:
                    stack.append(extended)
        return None
