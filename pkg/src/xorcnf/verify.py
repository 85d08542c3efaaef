"""Brute-force predicates for representation notions.

Everything enumerates assignments over var(f), so the function side is
capped at MAX_VARS variables.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass

import numpy as np

from .circuits import Circuit, evaluate_all, ropl
from .core import (
    BOTTOM_SET,
    CapExceeded,
    Clause,
    ClauseSet,
    PartialAssignment,
    apply_literals,
    variables,
)
from .measures import _minimal_least, counterexample, partial_assignments, primes_within
from .reductions import Propagator, r_inf, r_k
from .xortrans import xor_solutions

MAX_VARS = 14
PROPERTIES = (
    "representation",
    "UR",
    "GAC",
    "UP",
    "sat-r1",
    "usat-r1",
    "forcing",
    "absolute-forcing",
)


class SemanticFunction:
    """A boolean function given by its full truth table over ``variables``.

    Row index bit j is the value of variables[j].
    """

    def __init__(self, variables: Iterable[int], table: np.ndarray, source: str):
        self.variables = tuple(sorted(variables))
        if len(self.variables) > MAX_VARS:
            raise CapExceeded("variables of the represented function", MAX_VARS, len(self.variables))
        self.table = np.asarray(table, dtype=np.uint8)
        if self.table.shape != (1 << len(self.variables),):
            raise ValueError("truth table size does not match the variables")
        self.source = source
        self._position = {v: j for j, v in enumerate(self.variables)}
        self._sat_cache: dict[frozenset, bool] = {}

    @property
    def n(self) -> int:
        return len(self.variables)

    @classmethod
    def from_cnf(cls, F: Iterable[Clause], V: Iterable[int] | None = None) -> SemanticFunction:
        """The function of F, projected onto V when V is given."""
        F = frozenset(F)
        V = sorted(variables(F) if V is None else set(V))
        if len(V) > MAX_VARS:
            raise CapExceeded("variables of the represented function", MAX_VARS, len(V))
        full = set(V) >= variables(F)
        prop = None if full else Propagator(F)
        table = np.zeros(1 << len(V), dtype=np.uint8)
        for idx, lits in enumerate(_total_rows(V)):
            if full:
                t = set(lits)
                table[idx] = all(any(x in t for x in c) for c in F)
            else:
                table[idx] = prop.solve(lits) is not None
        return cls(V, table, "cnf")

    @classmethod
    def from_xor(cls, F: Iterable[Clause]) -> SemanticFunction:
        F = frozenset(frozenset(c) for c in F)
        V = sorted(variables(F))
        if len(V) > MAX_VARS:
            raise CapExceeded("variables of the represented function", MAX_VARS, len(V))
        table = np.zeros(1 << len(V), dtype=np.uint8)
        pos = {v: j for j, v in enumerate(V)}
        for model in xor_solutions(F, V):
            table[sum(1 << pos[x] for x in model if x > 0)] = 1
        return cls(V, table, "xor")

    @classmethod
    def from_circuit(cls, C: Circuit) -> SemanticFunction:
        if len(C.inputs) > MAX_VARS:
            raise CapExceeded("variables of the represented function", MAX_VARS, len(C.inputs))
        raw = evaluate_all(C)
        V = sorted(C.inputs)
        perm = [C.inputs.index(v) for v in V]
        table = np.zeros_like(raw)
        for idx in range(len(raw)):
            src = sum(((idx >> j) & 1) << perm[j] for j in range(len(V)))
            table[idx] = raw[src]
        return cls(V, table, "circuit")

    def value(self, true_lits: Iterable[int]) -> int:
        """f on a total assignment given by its true literals."""
        idx = 0
        for x in true_lits:
            if x > 0 and x in self._position:
                idx |= 1 << self._position[x]
        return int(self.table[idx])

    def satisfiable(self, true_lits: Iterable[int]) -> bool:
        """Some total extension of the partial assignment satisfies f."""
        lits = frozenset(x for x in true_lits if abs(x) in self._position)
        hit = self._sat_cache.get(lits)
        if hit is None:
            fixed_mask = sum(1 << self._position[abs(x)] for x in lits)
            fixed_val = sum(1 << self._position[x] for x in lits if x > 0)
            idx = np.arange(len(self.table))
            hit = bool(self.table[(idx & fixed_mask) == fixed_val].any())
            self._sat_cache[lits] = hit
        return hit

    def prime_implicates(self) -> ClauseSet:
        rows = []
        for idx, lits in enumerate(_total_rows(self.variables)):
            if not self.table[idx]:
                rows.append(frozenset(-x for x in lits))
        if not rows:
            return frozenset()
        return primes_within(rows)


def _total_rows(V: Iterable[int]):
    """True-literal tuples of all total assignments, row index order."""
    V = list(V)
    for idx in range(1 << len(V)):
        yield tuple(v if (idx >> j) & 1 else -v for j, v in enumerate(V))


@dataclass(frozen=True)
class Verdict:
    prop: str
    passed: bool
    counterexample: PartialAssignment | None = None

    def __bool__(self) -> bool:
        return self.passed

    def to_text(self) -> str:
        line = f"{self.prop} {'PASS' if self.passed else 'FAIL'}"
        if not self.passed and self.counterexample is not None:
            line += f" counterexample: {self.counterexample.to_dimacs()}"
        return line


def _verdict(prop: str, bad: list[frozenset]) -> Verdict:
    if not bad:
        return Verdict(prop, True)
    return Verdict(prop, False, PartialAssignment.from_literals(_minimal_least(bad)))


def _check_scope(F: ClauseSet, f: SemanticFunction) -> None:
    missing = set(f.variables) - variables(F)
    if missing:
        raise ValueError(f"variables {sorted(missing)} of f do not occur in F")


PRIME_CROSS_CHECK_VARS = 8


def is_representation(F: Iterable[Clause], f: SemanticFunction) -> Verdict:
    """Projections of F's models onto var(f) are exactly f's models."""
    F = frozenset(F)
    _check_scope(F, f)
    prop = Propagator(F)
    bad = [frozenset(lits) for idx, lits in enumerate(_total_rows(f.variables))
           if (prop.solve(lits) is not None) != bool(f.table[idx])]
    verdict = _verdict("representation", bad)
    if verdict.passed and len(variables(F)) <= PRIME_CROSS_CHECK_VARS:
        if primes_within(F, f.variables) != f.prime_implicates():
            raise AssertionError("prime-implicate characterisation disagrees with enumeration")
    return verdict


def _violations(F: ClauseSet, f: SemanticFunction, forcing: bool) -> list[frozenset]:
    """Partial assignments over var(f) on which unit propagation is incomplete."""
    prop = Propagator(F)
    bad = []
    for lits in partial_assignments(f.variables):
        conflict, value = prop.run(lits)
        if not f.satisfiable(lits):
            if not conflict:
                bad.append(lits)
            continue
        if conflict:
            raise ValueError("F does not represent f: unit propagation refutes a satisfiable instance")
        if forcing:
            assigned = {abs(x) for x in lits}
            for v in f.variables:
                if v in assigned:
                    continue
                for x in (v, -v):
                    if not f.satisfiable(lits | {-x}) and x not in value:
                        bad.append(lits)
                        break
                else:
                    continue
                break
    return bad


def _threshold(F: Iterable[Clause], f: SemanticFunction, kind: str, engine: str) -> Verdict:
    F = frozenset(F)
    _check_scope(F, f)
    name = "UR" if kind == "hd" else "GAC"
    if engine == "measures":
        phi = counterexample(kind, F, f.variables, 1, method="enumerate", cap=MAX_VARS, oracle=f.satisfiable)
        return Verdict(name, phi is None, phi)
    if engine != "propagator":
        raise ValueError(f"unknown engine {engine!r}")
    return _verdict(name, _violations(F, f, forcing=kind == "phd"))


def is_UR(F: Iterable[Clause], f: SemanticFunction, engine: str = "propagator") -> Verdict:
    """Relative hardness at most 1."""
    return _threshold(F, f, "hd", engine)


def is_GAC(F: Iterable[Clause], f: SemanticFunction, engine: str = "propagator") -> Verdict:
    """Relative p-hardness at most 1."""
    return _threshold(F, f, "phd", engine)


def _reducer(r: str) -> Callable[[ClauseSet], ClauseSet]:
    if r == "r1":
        return lambda G: r_k(1, G).reduced
    if r == "ropl":
        return ropl
    if r == "rinf":
        return lambda G: r_inf(G).reduced
    if r.startswith("r") and r[1:].isdigit():
        k = int(r[1:])
        return lambda G: r_k(k, G).reduced
    raise ValueError(f"unknown reduction {r!r}")


def _recognition(F: ClauseSet, f: SemanticFunction, r: str, want_sat: bool) -> Verdict:
    F = frozenset(F)
    _check_scope(F, f)
    name = f"{'sat' if want_sat else 'usat'}-{r}"
    target = frozenset() if want_sat else BOTTOM_SET
    bad = []
    if r == "r1":
        prop = Propagator(F)
    for idx, lits in enumerate(_total_rows(f.variables)):
        if bool(f.table[idx]) != want_sat:
            continue
        if r == "r1":
            conflict, value = prop.run(lits)
            ok = (not conflict and prop.satisfied_all(value)) if want_sat else conflict
        else:
            ok = _reducer(r)(apply_literals(lits, F)) == target
        if not ok:
            bad.append(frozenset(lits))
    return _verdict(name, bad)


def has_sat_recognition(F: Iterable[Clause], f: SemanticFunction, r: str = "r1") -> Verdict:
    """Every satisfying total assignment of f reduces F to the empty clause-set."""
    return _recognition(F, f, r, True)


def has_usat_recognition(F: Iterable[Clause], f: SemanticFunction, r: str = "r1") -> Verdict:
    """Every falsifying total assignment of f reduces F to {empty clause}."""
    return _recognition(F, f, r, False)


def is_UP(F: Iterable[Clause], f: SemanticFunction) -> Verdict:
    for check in (has_usat_recognition, has_sat_recognition):
        v = check(F, f, "r1")
        if not v:
            return Verdict("UP", False, v.counterexample)
    return Verdict("UP", True)


def is_forcing(F: Iterable[Clause], f: SemanticFunction, engine: str = "propagator") -> Verdict:
    """GAC plus sat-recognition via unit propagation."""
    for v in (is_GAC(F, f, engine), has_sat_recognition(F, f, "r1")):
        if not v:
            return Verdict("forcing", False, v.counterexample)
    return Verdict("forcing", True)


def is_absolute_forcing(F: Iterable[Clause], f: SemanticFunction, engine: str = "propagator") -> Verdict:
    """Forcing and p-hardness at most 1 over all variables of F."""
    F = frozenset(F)
    v = is_forcing(F, f, engine)
    if not v:
        return Verdict("absolute-forcing", False, v.counterexample)
    phi = counterexample("phd", F, None, 1)
    return Verdict("absolute-forcing", phi is None, phi)


def check(prop: str, F: Iterable[Clause], f: SemanticFunction) -> Verdict:
    """Dispatch one named property."""
    table = {
        "representation": is_representation,
        "UR": is_UR,
        "GAC": is_GAC,
        "UP": is_UP,
        "sat-r1": lambda F, f: has_sat_recognition(F, f, "r1"),
        "usat-r1": lambda F, f: has_usat_recognition(F, f, "r1"),
        "forcing": is_forcing,
        "absolute-forcing": is_absolute_forcing,
    }
    if prop not in table:
        raise ValueError(f"unknown property {prop!r}; choose from {', '.join(PROPERTIES)}")
    return table[prop](F, f)
