"""Brute-force reference implementations, written straight from the definitions.

Nothing here imports the package's algorithms; only plain frozensets are used.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

BOT = frozenset()
BOTTOM = frozenset({BOT})


def fs(*clauses):
    return frozenset(frozenset(c) for c in clauses)


def vars_of(F):
    return frozenset(abs(x) for c in F for x in c)


def lits_of(F):
    return frozenset(x for c in F for x in c)


def assign(lits, F):
    """phi * F for phi given by its true literals."""
    t = frozenset(lits)
    return frozenset(frozenset(x for x in c if -x not in t) for c in F if not (c & t))


def total_assignments(V):
    V = sorted(V)
    for bits in itertools.product((False, True), repeat=len(V)):
        yield frozenset(v if b else -v for v, b in zip(V, bits))


def partial_assignments(V):
    V = sorted(V)
    for vals in itertools.product((None, False, True), repeat=len(V)):
        yield frozenset(v if b else -v for v, b in zip(V, vals) if b is not None)


def satisfies(lits, F):
    return all(c & lits for c in F)


def brute_sat(F):
    F = frozenset(F)
    return any(satisfies(t, F) for t in total_assignments(vars_of(F)))


def brute_forced(F):
    """frl(F) within lit(F), or None for unsatisfiable F."""
    F = frozenset(F)
    if not brute_sat(F):
        return None
    return frozenset(x for x in lits_of(F) if not brute_sat(assign([-x], F)))


def implied(F, C):
    return not brute_sat(assign([-x for x in C], F))


def brute_primes(F):
    """All inclusion-minimal implied clauses over var(F)."""
    F = frozenset(F)
    if not brute_sat(F):
        return BOTTOM
    V = sorted(vars_of(F))
    found = [c for c in partial_assignments(V) if c and implied(F, c)]
    return frozenset(c for c in found if not any(d < c for d in found))


def unit_propagation(F):
    """Plain unit propagation: {bottom} on conflict, else the reduced set."""
    F = frozenset(F)
    while True:
        if BOT in F:
            return BOTTOM
        unit = next((c for c in sorted(F, key=sorted) if len(c) == 1), None)
        if unit is None:
            return F
        F = assign(unit, F)


@lru_cache(maxsize=None)
def brute_rk(k, F):
    """r_k by the recursive definition, trying literals in sorted order."""
    if BOT in F:
        return BOTTOM
    if k == 0:
        return F
    for x in sorted(lits_of(F)):
        if brute_rk(k - 1, assign([-x], F)) == BOTTOM:
            return brute_rk(k, assign([x], F))
    return F


def least_refuting_level(F):
    k = 0
    while brute_rk(k, F) != BOTTOM:
        k += 1
    return k


def brute_hd(F, V=None):
    F = frozenset(F)
    V = vars_of(F) if V is None else V
    return max(
        (least_refuting_level(assign(p, F)) for p in partial_assignments(V) if not brute_sat(assign(p, F))),
        default=0,
    )


def brute_phd(F, V=None):
    F = frozenset(F)
    V = frozenset(vars_of(F) if V is None else V)
    best = 0
    for p in partial_assignments(V):
        G = assign(p, F)
        if not brute_sat(G):
            best = max(best, least_refuting_level(G))
            continue
        k = 0
        while True:
            R = brute_rk(k, G)
            forced = brute_forced(R)
            if not any(x in forced or -x in forced for x in V):
                break
            k += 1
        best = max(best, k)
    return best


def resolvents(C, D):
    clash = [x for x in C if -x in D]
    if len(clash) != 1:
        return None
    x = clash[0]
    return (C | D) - {x, -x}


def naive_closure(F, allowed):
    """Saturate under resolution steps accepted by allowed(C, D, R), no subsumption."""
    S = set(F)
    while True:
        new = set()
        for C, D in itertools.combinations(list(S), 2):
            R = resolvents(C, D)
            if R is not None and R not in S and allowed(C, D, R):
                new.add(R)
        if not new:
            return frozenset(S)
        S |= new


def k_refutable(F, k):
    if BOT in F:
        return True
    return BOT in naive_closure(F, lambda C, D, R: min(len(C), len(D)) <= k)


def width_refutable(F, k):
    if BOT in F:
        return True
    if any(len(c) > k for c in F):
        F = frozenset(c for c in F if len(c) <= k)
    return BOT in naive_closure(F, lambda C, D, R: len(R) <= k)


def _least(F, refutable):
    k = 0
    while not refutable(F, k):
        k += 1
    return k


def brute_whd(F, V=None):
    F = frozenset(F)
    V = vars_of(F) if V is None else V
    return max(
        (_least(assign(p, F), k_refutable) for p in partial_assignments(V) if not brute_sat(assign(p, F))),
        default=0,
    )


def brute_wid(F, V=None):
    F = frozenset(F)
    V = vars_of(F) if V is None else V
    return max(
        (_least(assign(p, F), width_refutable) for p in partial_assignments(V) if not brute_sat(assign(p, F))),
        default=0,
    )


def xor_holds(lits, F):
    """XOR semantics: each clause's literals sum to 0 over GF(2)."""
    return all(sum(1 for x in c if x in lits) % 2 == 0 for c in F)


def brute_xor_sat(F):
    return any(xor_holds(t, F) for t in total_assignments(vars_of(F)))


def project_models(F, V):
    """Restrictions to V of the total assignments satisfying F."""
    V = frozenset(V)
    out = set()
    for t in total_assignments(vars_of(F) | V):
        if satisfies(t, F):
            out.add(frozenset(x for x in t if abs(x) in V))
    return out
