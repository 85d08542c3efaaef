"""Hardness, p-hardness, asymmetric and symmetric width, and prime implicates.

Two routes compute each measure.  ``enumerate`` walks all partial assignments
over the scope.  ``primes`` uses that every measure is monotone under
instantiation, so the maximum is attained at an assignment falsifying a prime
implicate (or, for p-hardness, a prime implicate minus one literal).
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field

from .core import (
    EMPTY_CLAUSE,
    CapExceeded,
    Clause,
    ClauseSet,
    PartialAssignment,
    apply_literals,
    clause_key,
    make_clause,
    pure_clause,
    sorted_literals,
    subsumption_eliminate,
    var,
    variables,
)
from .reductions import Prober, sat_decide
from .resolution import k_refutes, width_refutes

KINDS = ("hd", "phd", "whd", "wid")
DEFAULT_SCOPE_CAP = 12


@dataclass(frozen=True)
class MeasureReport:
    kind: str
    scope: frozenset
    value: int
    witness: PartialAssignment | None = field(default=None, compare=False)

    def to_text(self) -> str:
        line = f"{self.kind} {len(self.scope)} {self.value}"
        if self.witness is not None:
            line += "\n" + self.witness.to_dimacs()
        return line


# Prime implicates

def _bit(lit: int) -> int:
    return 1 << (2 * var(lit) + (lit < 0))


def _encode(c: Iterable[int]) -> int:
    m = 0
    for x in c:
        m |= _bit(x)
    return m


def _decode(m: int) -> Clause:
    lits = []
    while m:
        low = m & -m
        i = low.bit_length() - 1
        lits.append(-(i >> 1) if i & 1 else i >> 1)
        m ^= low
    return frozenset(lits)


def _minimize(masks: Iterable[int]) -> list[int]:
    """Drop masks that are supersets of other masks."""
    ordered = sorted(set(masks), key=int.bit_count)
    if ordered and ordered[0] == 0:
        return [0]
    kept: list[int] = []
    by_low: dict[int, list[int]] = {}
    for m in ordered:
        rest = m
        subsumed = False
        while rest and not subsumed:
            low = rest & -rest
            for k in by_low.get(low, ()):
                if k & m == k:
                    subsumed = True
                    break
            rest ^= low
        if not subsumed:
            kept.append(m)
            by_low.setdefault(m & -m, []).append(m)
    return kept


def _resolve_on(masks: list[int], v: int) -> tuple[list[int], list[int], list[int]]:
    pos, neg = 1 << (2 * v), 1 << (2 * v + 1)
    both = pos | neg
    P = [m for m in masks if m & pos]
    N = [m for m in masks if m & neg]
    resolvents = []
    for p in P:
        for n in N:
            r = (p | n) & ~both
            if not (r & (r >> 1) & _EVEN[0]):
                resolvents.append(r)
    return P, N, resolvents


_EVEN = [0]


def _ensure_even_mask(n: int) -> None:
    if _EVEN[0].bit_length() < 2 * n + 4:
        _EVEN[0] = int("01" * (n + 2), 2)


def _eliminate(masks: list[int], v: int) -> list[int]:
    P, N, resolvents = _resolve_on(masks, v)
    both = (1 << (2 * v)) | (1 << (2 * v + 1))
    return _minimize([m for m in masks if not m & both] + resolvents)


def _tison(masks: list[int], order: Iterable[int]) -> list[int]:
    masks = _minimize(masks)
    for v in order:
        _, _, resolvents = _resolve_on(masks, v)
        if resolvents:
            masks = _minimize(masks + resolvents)
    return masks


def primes_within(F: Iterable[Clause], V: Iterable[int] | None = None) -> ClauseSet:
    """Prime implicates C of F with var(C) inside V (all of them when V is None).

    Variables outside V are eliminated by resolution first; consensus over
    the remaining variables then yields the projected prime implicates.
    """
    F = frozenset(F)
    if not sat_decide(F):
        # only the empty clause is prime
        return frozenset({EMPTY_CLAUSE})
    fv = variables(F)
    scope = fv if V is None else fv & frozenset(V)
    _ensure_even_mask(max(fv, default=0))
    masks = _minimize(_encode(c) for c in F)
    outside = set(fv - scope)
    while outside and masks != [0]:
        def cost(v: int) -> tuple[int, int]:
            pos, neg = 1 << (2 * v), 1 << (2 * v + 1)
            p = sum(1 for m in masks if m & pos)
            n = sum(1 for m in masks if m & neg)
            return (p * n - p - n, v)

        v = min(outside, key=cost)
        outside.discard(v)
        masks = _eliminate(masks, v)
    if masks == [0]:
        return frozenset({EMPTY_CLAUSE})
    return frozenset(_decode(m) for m in _tison(masks, sorted(scope)))


def _premise_primes(F: ClauseSet, cap: int) -> ClauseSet:
    clauses = sorted(F, key=clause_key)
    if len(clauses) > cap:
        raise CapExceeded("number of clauses for the premise-set method", cap, len(clauses))
    found = set()
    for size in range(1, len(clauses) + 1):
        for G in itertools.combinations(clauses, size):
            C = pure_clause(G)
            if C in found:
                continue
            if not sat_decide(apply_literals((-x for x in C), F)):
                found.add(C)
    return subsumption_eliminate(found)


def prime_implicates(F: Iterable[Clause], method: str = "auto", cap: int = 16) -> ClauseSet:
    """All prime implicates of F.

    ``premise`` enumerates subsets G of F with F implying purec(G);
    ``consensus`` runs variable-wise consensus; ``auto`` uses the premise
    method for up to 10 clauses.
    """
    F = frozenset(F)
    if method == "auto":
        method = "premise" if len(F) <= 10 else "consensus"
    if method == "premise":
        return _premise_primes(F, cap)
    if method == "consensus":
        return primes_within(F)
    raise ValueError(f"unknown method {method!r}")


def implies(F: Iterable[Clause], C: Iterable[int]) -> bool:
    return not sat_decide(apply_literals((-x for x in C), frozenset(F)))


def is_minimal_premise_set(G: Iterable[Clause]) -> bool:
    """G implies purec(G) while no proper subset of G does."""
    G = frozenset(G)
    if not G:
        return False
    C = pure_clause(G)
    if not implies(G, C):
        return False
    return not any(implies(G - {c}, C) for c in G)


# Measures

Oracle = Callable[[frozenset], bool]


def partial_assignments(V: Iterable[int]) -> Iterator[frozenset]:
    """All partial assignments over V, as sets of true literals."""
    vs = sorted(V)
    for choice in itertools.product((0, 1, -1), repeat=len(vs)):
        yield frozenset(v if c == 1 else -v for v, c in zip(vs, choice) if c != 0)


class _Instance:
    """One partial assignment together with its monotone level test."""

    __slots__ = ("lits", "check")

    def __init__(self, lits: frozenset, check: Callable[[int], bool]):
        self.lits = lits
        self.check = check


def _least_level(item: _Instance, start: int, ceiling: int, cap_k: int | None) -> int:
    k = start
    while not item.check(k):
        k += 1
        if cap_k is not None and k > cap_k:
            raise CapExceeded("measure value", cap_k)
        if k > ceiling:
            raise RuntimeError("measure search did not terminate; monotonicity violated")
    return k


def _phi_key(lits: frozenset) -> tuple:
    return clause_key(lits)


def _minimal_least(candidates: list[frozenset]) -> frozenset | None:
    if not candidates:
        return None
    minimal = [a for a in candidates if not any(b < a for b in candidates)]
    return min(minimal, key=_phi_key)


def _maximize(items: list[_Instance], ceiling: int, cap_k: int | None) -> tuple[int, PartialAssignment | None]:
    best = 0
    for item in sorted(items, key=lambda it: (-len(it.lits), _phi_key(it.lits))):
        best = _least_level(item, best, ceiling, cap_k)
    if best == 0:
        return 0, None
    holders = [it.lits for it in items if not it.check(best - 1)]
    return best, PartialAssignment.from_literals(_minimal_least(holders))


def _violators(items: list[_Instance], k: int) -> PartialAssignment | None:
    found = _minimal_least([it.lits for it in items if not it.check(k)])
    return None if found is None else PartialAssignment.from_literals(found)


class _Context:
    """Shared state for one measurement: the clause-set, scope and caches."""

    def __init__(self, F: Iterable[Clause], V: Iterable[int] | None, oracle: Oracle | None):
        self.F = frozenset(F)
        self.V = variables(self.F) if V is None else frozenset(V)
        self.prober = Prober()
        self._sat: dict[frozenset, bool] = {}
        self._oracle = oracle
        self.ceiling = len(variables(self.F)) + 1

    def instance(self, lits: frozenset) -> ClauseSet:
        return apply_literals(lits, self.F)

    def satisfiable(self, lits: frozenset) -> bool:
        hit = self._sat.get(lits)
        if hit is None:
            if self._oracle is not None:
                hit = bool(self._oracle(lits))
            else:
                hit = bool(sat_decide(self.instance(lits)))
            self._sat[lits] = hit
        return hit

    def refuter(self, kind: str) -> Callable[[ClauseSet, int], bool]:
        if kind in ("hd", "phd"):
            return self.prober.refutes
        if kind == "whd":
            return lambda G, k: EMPTY_CLAUSE in G or (k > 0 and k_refutes(G, k))
        if kind == "wid":
            return width_refutes
        raise ValueError(f"unknown measure kind {kind!r}")

    def unsat_item(self, lits: frozenset, kind: str) -> _Instance:
        G = self.instance(lits)
        refute = self.refuter(kind)
        return _Instance(lits, lambda k: refute(G, k))

    def forcing_item(self, lits: frozenset, required: Iterable[int]) -> _Instance:
        G = self.instance(lits)
        required = frozenset(required)
        prober = self.prober

        def check(k: int) -> bool:
            if not required:
                return True
            reduced, assigned = prober.reduce(G, k)
            if reduced is None:
                raise RuntimeError("reduction refuted a satisfiable instance")
            return required <= assigned

        return _Instance(lits, check)

    def forced_scope_literals(self, lits: frozenset) -> set[int]:
        assigned = {var(x) for x in lits}
        out = set()
        for v in sorted(self.V - assigned):
            for x in (v, -v):
                if not self.satisfiable(lits | {-x}):
                    out.add(x)
        return out

    def enumerate_items(self, kind: str, cap: int) -> list[_Instance]:
        if len(self.V) > cap:
            raise CapExceeded("scope size for enumeration", cap, len(self.V))
        items = []
        for lits in partial_assignments(self.V):
            if not self.satisfiable(lits):
                items.append(self.unsat_item(lits, kind))
            elif kind == "phd":
                required = self.forced_scope_literals(lits)
                if required:
                    items.append(self.forcing_item(lits, required))
        return items

    def prime_items(self, kind: str) -> list[_Instance]:
        primes = primes_within(self.F, self.V)
        items = [self.unsat_item(frozenset(-x for x in C), kind) for C in primes]
        if kind == "phd":
            required: dict[frozenset, set[int]] = {}
            for C in primes:
                for x in C:
                    required.setdefault(frozenset(-y for y in C if y != x), set()).add(x)
            items.extend(self.forcing_item(lits, req) for lits, req in required.items())
        return items

    def items(self, kind: str, method: str, cap: int) -> list[_Instance]:
        if method == "enumerate":
            return self.enumerate_items(kind, cap)
        if method in ("primes", "auto"):
            if self._oracle is not None:
                return self.enumerate_items(kind, cap)
            return self.prime_items(kind)
        raise ValueError(f"unknown method {method!r}")


def measure(
    kind: str,
    F: Iterable[Clause],
    V: Iterable[int] | None = None,
    *,
    method: str = "auto",
    cap: int = DEFAULT_SCOPE_CAP,
    cap_k: int | None = None,
    oracle: Oracle | None = None,
) -> MeasureReport:
    """Compute one of hd, phd, whd, wid relative to scope V (default var(F)).

    ``oracle`` optionally decides satisfiability of an instantiation given
    as true literals over V; it forces the enumeration route.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown measure kind {kind!r}")
    ctx = _Context(F, V, oracle)
    items = ctx.items(kind, method, cap)
    value, witness = _maximize(items, ctx.ceiling, cap_k)
    return MeasureReport(kind, ctx.V, value, witness)


def hardness(F, V=None, **kw) -> MeasureReport:
    return measure("hd", F, V, **kw)


def p_hardness(F, V=None, **kw) -> MeasureReport:
    return measure("phd", F, V, **kw)


def asymmetric_width(F, V=None, **kw) -> MeasureReport:
    return measure("whd", F, V, **kw)


def symmetric_width(F, V=None, **kw) -> MeasureReport:
    return measure("wid", F, V, **kw)


def counterexample(
    kind: str,
    F: Iterable[Clause],
    V: Iterable[int] | None,
    k: int,
    *,
    method: str = "auto",
    cap: int = DEFAULT_SCOPE_CAP,
    oracle: Oracle | None = None,
) -> PartialAssignment | None:
    """The least inclusion-minimal phi violating 'measure <= k', or None."""
    ctx = _Context(F, V, oracle)
    return _violators(ctx.items(kind, method, cap), k)


@dataclass(frozen=True)
class ClassMembership:
    in_UC: bool
    in_PC: bool
    in_WC: bool


def class_membership(F: Iterable[Clause], k: int, **kw) -> ClassMembership:
    """Absolute-scope threshold tests for UC_k, PC_k and WC_k."""
    F = frozenset(F)
    return ClassMembership(
        in_UC=counterexample("hd", F, None, k, **kw) is None,
        in_PC=counterexample("phd", F, None, k, **kw) is None,
        in_WC=counterexample("whd", F, None, k, **kw) is None,
    )


def full_clauses(k: int) -> ClauseSet:
    """A_k: all 2^k full clauses over variables 1..k."""
    return frozenset(
        make_clause(v if s else -v for v, s in zip(range(1, k + 1), signs))
        for signs in itertools.product((1, 0), repeat=k)
    )


def full_clauses_extended(k: int) -> ClauseSet:
    """A_k with the positive literal k+1 added to every clause."""
    return frozenset(c | {k + 1} for c in full_clauses(k))


def format_witness(phi: PartialAssignment | None) -> str:
    return "none" if phi is None else " ".join(str(x) for x in sorted_literals(phi.true_literals()))
