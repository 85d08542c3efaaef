import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import NAE3, corpus
from oracles import BOTTOM, brute_hd, brute_phd, fs, project_models, total_assignments, vars_of
from strategies import clause_sets, xor_clause_sets
from xorcnf.circuits import AND, OR, Circuit, nae3_circuit, reduced_tseitin, tseitin, xor_chain_circuit
from xorcnf.core import TOP, CapExceeded
from xorcnf.measures import full_clauses
from xorcnf.verify import (
    MAX_VARS,
    PROPERTIES,
    SemanticFunction,
    Verdict,
    check,
    has_sat_recognition,
    has_usat_recognition,
    is_absolute_forcing,
    is_forcing,
    is_GAC,
    is_representation,
    is_UP,
    is_UR,
)
from xorcnf.xortrans import X0, X1, X1_set, X_star

TWO_CYCLIC = [{1, 2, 3}, {2, 3, -4}]


def scopes(F):
    vs = sorted(vars_of(F))
    for mask in range(1 << len(vs)):
        yield [v for j, v in enumerate(vs) if (mask >> j) & 1]


def test_semantic_function_tables():
    f = SemanticFunction.from_xor([{1, 2}])
    assert f.variables == (1, 2)
    # XOR-clauses are satisfied when the literal sum is 0
    assert f.table.tolist() == [1, 0, 0, 1]
    g = SemanticFunction.from_cnf(fs({1, 2}))
    assert g.table.tolist() == [0, 1, 1, 1]
    h = SemanticFunction.from_circuit(Circuit((2, 1), {3: AND(1, 2)}, 3))
    assert h.variables == (1, 2) and h.table.tolist() == [0, 0, 0, 1]
    assert g.satisfiable({-1}) and not g.satisfiable({-1, -2})
    assert g.value({1, -2}) == 1
    assert g.prime_implicates() == fs({1, 2})


def test_projection_table():
    f = SemanticFunction.from_cnf(fs({1, 2}, {-2, 3}), [1, 3])
    assert f.table.tolist() == [0, 1, 1, 1]


def test_cap_and_scope_errors():
    with pytest.raises(CapExceeded):
        SemanticFunction.from_cnf(full_clauses(1), range(1, MAX_VARS + 2))
    with pytest.raises(ValueError, match="do not occur"):
        is_representation(fs({1}), SemanticFunction.from_cnf(fs({1, 2})))
    with pytest.raises(ValueError):
        SemanticFunction([1, 2], np.zeros(3), "cnf")


def test_representation_examples():
    C = {1, -2, 3}
    f = SemanticFunction.from_xor([C])
    assert is_representation(X0(C), f)
    assert is_representation(X1([1, -2, 3, 4]), SemanticFunction.from_xor([{1, -2, 3, 4}]))
    g = SemanticFunction.from_xor([{1, 2}])
    short = X0({1, 2}) - {frozenset({-1, 2})}
    verdict = is_representation(short, g)
    assert not verdict
    assert verdict.counterexample.true_literals() == {1, -2}


def test_two_cyclic_xor_system():
    f = SemanticFunction.from_xor(TWO_CYCLIC)
    x1 = X1_set(TWO_CYCLIC)
    assert is_representation(x1, f)
    verdict = is_GAC(x1, f)
    assert not verdict and verdict.counterexample is not None
    assert is_GAC(X_star(TWO_CYCLIC), f)
    assert is_forcing(X_star(TWO_CYCLIC), f)


def test_star_translation_not_absolute_forcing():
    F = [{1, 2, 3, 4}, {3, 4}]
    f = SemanticFunction.from_xor(F)
    G = X_star(F)
    assert is_forcing(G, f)
    assert not is_absolute_forcing(G, f)


def test_verdict_text():
    f = SemanticFunction.from_xor(TWO_CYCLIC)
    text = is_GAC(X1_set(TWO_CYCLIC), f).to_text()
    assert text.startswith("GAC FAIL counterexample: v ") and text.endswith(" 0")
    assert Verdict("UR", True).to_text() == "UR PASS"
    assert not Verdict("UR", False)


def test_check_dispatch():
    f = SemanticFunction.from_cnf(NAE3)
    for prop in PROPERTIES:
        assert check(prop, NAE3, f).prop in (prop, "UP")
    with pytest.raises(ValueError, match="unknown property"):
        check("nope", NAE3, f)
    with pytest.raises(ValueError, match="unknown engine"):
        is_UR(NAE3, f, engine="magic")


def test_ur_does_not_imply_up():
    F = fs({1, 2, 3})
    f = SemanticFunction.from_cnf(F, [1])
    assert is_UR(F, f)
    assert not is_UP(F, f)


def test_recognition_of_tseitin_translations():
    for C in (nae3_circuit()[0], xor_chain_circuit(4)):
        f = SemanticFunction.from_circuit(C)
        T = tseitin(C)
        assert is_representation(T, f)
        assert is_UP(T, f)
    C, _ = nae3_circuit()
    f = SemanticFunction.from_circuit(C)
    R = reduced_tseitin(C)
    assert has_usat_recognition(R, f, "r1")
    assert has_sat_recognition(R, f, "ropl")
    # an OR over gates leaves a binary clause that only pure-literal elimination clears
    D = Circuit((1, 2, 3), {4: AND(1, 2), 5: AND(1, 3), 6: OR(4, 5)}, 6)
    g = SemanticFunction.from_circuit(D)
    R = reduced_tseitin(D)
    assert has_usat_recognition(R, g, "r1") and has_sat_recognition(R, g, "ropl")
    assert not has_sat_recognition(R, g, "r1")


def test_recognition_reducers():
    F = full_clauses(2)
    f = SemanticFunction.from_cnf(F)
    assert has_usat_recognition(F, f, "r0")
    assert has_usat_recognition(F, f, "rinf")
    with pytest.raises(ValueError):
        has_usat_recognition(F, f, "q1")


@pytest.mark.parametrize("name, F", corpus(5))
def test_implication_chain(name, F):
    for V in scopes(F):
        f = SemanticFunction.from_cnf(F, V)
        results = {p: bool(check(p, F, f)) for p in ("UR", "GAC", "UP", "forcing", "absolute-forcing")}
        assert results["UR"] == (brute_hd(F, V) <= 1)
        assert results["GAC"] == (brute_phd(F, V) <= 1)
        if results["absolute-forcing"]:
            assert results["forcing"]
        if results["forcing"]:
            assert results["GAC"] and results["UP"]
        if results["GAC"]:
            assert results["UR"]


@pytest.mark.parametrize("name, F", corpus(5))
def test_engines_agree(name, F):
    for V in scopes(F):
        f = SemanticFunction.from_cnf(F, V)
        for pred in (is_UR, is_GAC):
            a, b = pred(F, f), pred(F, f, engine="measures")
            assert a.passed == b.passed
            assert a.counterexample == b.counterexample


@settings(max_examples=60, deadline=None)
@given(clause_sets(max_vars=4, max_clauses=6), st.data())
def test_thresholds_match_brute_force(F, data):
    vs = sorted(vars_of(F))
    V = data.draw(st.sets(st.sampled_from(vs))) if vs else set()
    f = SemanticFunction.from_cnf(F, V)
    assert bool(is_representation(F, f))
    assert bool(is_UR(F, f)) == (brute_hd(F, V) <= 1)
    assert bool(is_GAC(F, f)) == (brute_phd(F, V) <= 1)
    assert bool(is_UR(F, f, engine="measures")) == (brute_hd(F, V) <= 1)


@settings(max_examples=60, deadline=None)
@given(xor_clause_sets(max_vars=5, max_clauses=3))
def test_xor_function_matches_brute_force(F):
    f = SemanticFunction.from_xor(F)
    models = {t for t in total_assignments(f.variables) if f.value(t)}
    assert models == project_models(X0_all(F), f.variables)


def X0_all(F):
    out = set()
    for C in F:
        out |= X0(C)
    return frozenset(out)


@pytest.mark.parametrize(
    "C, D",
    [({1, 2}, {3, 4}), ({1, 2, 3}, {3, 4, 5}), ({1, 2, 3, 4}, {3, 4, 5, 6}), ({1, 2, 3, 4}, {1, 2, 3, -5})],
)
def test_two_clause_ur_law(C, D):
    shared = {abs(x) for x in C} & {abs(x) for x in D}
    f = SemanticFunction.from_xor([C, D])
    assert bool(is_UR(X1_set([C, D]), f)) == (len(shared) <= 1)


def test_constant_functions():
    f = SemanticFunction.from_cnf(BOTTOM | fs({1}))
    assert is_UR(fs(set(), {1}), f)
    g = SemanticFunction.from_cnf(TOP)
    assert g.n == 0 and g.table.tolist() == [1]
    assert is_forcing(TOP, g)


def test_or_circuit_representation():
    C = Circuit((1, 2), {3: OR(1, 2)}, 3)
    f = SemanticFunction.from_circuit(C)
    assert is_representation(fs({1, 2}), f)
    assert not is_representation(fs({1, 2}, {1}), f)
