import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_hd, brute_xor_sat, fs, project_models, total_assignments, vars_of, xor_holds
from strategies import clauses, xor_clause_sets
from xorcnf.core import EMPTY_CLAUSE, FormatError, n_clauses, n_literals, n_vars
from xorcnf.measures import full_clauses, hardness, p_hardness
from xorcnf.reductions import sat_decide
from xorcnf.xortrans import (
    INCONSISTENT,
    MSP,
    X0,
    X0_set,
    X1,
    X1_set,
    X2,
    F_star,
    GeneralGraph,
    X_star,
    bouquet,
    canonical_xor,
    dipole,
    emit_msp,
    generate_Tn,
    gf2_rank,
    hd_two_xor_expected,
    incidence_acyclic,
    msp_eval,
    msp_protocol,
    msp_relax,
    natural_splitting,
    parse_msp,
    tn_layout,
    to_linear_system,
    tseitin_formula,
    tseitin_xor,
    variable_interaction_graph,
    x2_parts,
    xor_acyclic,
    xor_equivalent,
    xor_implies,
    xor_instantiate,
    xor_sat,
    xor_solutions,
    xor_sum,
)

MSP_TEXT = "msp 3 2\nsys 1\n1 1 | 1\nsys 2\n1 0 | 0\nsys 3\n0 1 | 0\n"


def xor_models(F, V):
    return {t for t in total_assignments(V) if xor_holds(t, F)}


def test_linear_system_example():
    system = to_linear_system([{1, -2}, {-2, -3}, {1, 3}])
    assert system.rows() == [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
    assert system.b.tolist() == [1, 0, 0]
    assert system.column_vars == (1, 2, 3)
    empty = to_linear_system([])
    assert empty.A.shape == (0, 0) and xor_sat([])
    single = to_linear_system([{1}])
    assert single.rows() == [[1]] and single.b.tolist() == [0]


def test_gf2_rank():
    assert gf2_rank(np.array([[1, 1], [1, 1]])) == 1
    assert gf2_rank(np.eye(4, dtype=np.uint8)) == 4
    assert gf2_rank(np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]])) == 2


def test_xor_sat_examples():
    assert not xor_sat([{1, 2}, {-1, 2}])
    assert not xor_sat([{1, 2}, {1, 3}, {2, -3}])
    assert xor_implies([{1, 2}, {2, 3}], {1, 3})
    assert not xor_implies([{1, 2}, {2, 3}], {1, -3})
    assert xor_implies([{1}, {-1}], {5})


def test_xor_sum_examples():
    assert xor_sum([{1, 2}, {2, 3}]) == {1, 3}
    assert xor_sum([{1, 2, -3}, {-1, 2, 3}]) == EMPTY_CLAUSE
    assert xor_sum([{1, 2}, {-1, 2}]) is INCONSISTENT
    assert xor_sum([{1, 2, -3, 4}, {-1, 2, 3, -4, 5, 6}]) == {-5, 6}
    assert xor_sum([]) == EMPTY_CLAUSE


def test_canonical_form_puts_sign_on_least_variable():
    assert canonical_xor({3, -5, -1, 2}) == {1, 2, 3, 5}
    assert canonical_xor({3, -5, 2}) == {-2, 3, 5}
    assert xor_equivalent({-1, 2}, {1, -2})
    assert not xor_equivalent({1, 2}, {1, -2})


def test_instantiate():
    assert xor_instantiate([1], [{1, 2, 3}]) == fs({-2, 3})
    assert xor_instantiate([1, 2], [{1, 2}]) == fs()
    assert xor_instantiate([1, -2], [{1, 2}]) is INCONSISTENT


def test_x0_examples():
    assert X0({1, 2}) == fs({-1, 2}, {1, -2})
    assert X0({1, -2}) == fs({1, 2}, {-1, -2})
    assert X0(EMPTY_CLAUSE) == fs()
    for n in range(1, 6):
        a, b = X0(range(1, n + 1)), X0(list(range(1, n)) + [-n])
        assert len(a) == 2 ** (n - 1)
        assert a | b == full_clauses(n)


def test_x1_example_three():
    x1, x2, x3, y2 = 1, 2, 3, 4
    expected = fs(
        {x1, x2, -y2}, {x1, -x2, y2}, {-x1, x2, y2}, {-x1, -x2, -y2},
        {y2, -x3}, {-y2, x3},
    )
    assert X1([1, 2, 3]) == expected


def test_x1_sizes():
    for n in range(3, 8):
        F = X1(range(1, n + 1))
        assert (n_vars(F), n_clauses(F), n_literals(F)) == (2 * n - 2, 4 * n - 6, 12 * n - 20)
    assert X1([1, -2]) == X0([1, -2])
    pieces, ys, nxt = natural_splitting([1, 2, 3, 4], order=[4, 3, 2, 1])
    assert ys == [5, 6] and nxt == 7
    assert frozenset({4, 3, 5}) in pieces


def test_x1_set_uses_disjoint_fresh_variables():
    F = X1_set([{1, 2, 3}, {3, 4, 5}])
    assert n_vars(F) == 7


def test_f_star_examples():
    a, b, c, d, e = 1, 2, 3, 4, 5
    assert F_star([{a, b, c, d}, {c, d}]) == fs({a, b, c, d}, {c, d}, {a, b})
    star = F_star([{a, b, c, d}, {a, b, c, e}])
    assert frozenset({d, e}) in star
    assert hardness(X_star([{a, b, c, d}, {a, b, c, e}])).value == 2
    assert F_star([{1, 2, 3}]) == fs({1, 2, 3})
    with pytest.raises(ValueError, match="precondition: satisfiable XOR system"):
        F_star([{1, 2}, {-1, 2}])


def test_x2_example_and_errors():
    parts = x2_parts({1, 2, 3, 4}, {3, 4, 5, 6})
    s = parts.s
    assert s == 7
    assert (parts.shared, parts.left, parts.right) == ({3, 4, s}, {1, 2, s}, {5, 6, s})
    assert p_hardness(X2({1, 2, 3, 4}, {3, 4, 5, 6})).value == 1
    with pytest.raises(ValueError, match=r"\|I\| >= 2"):
        x2_parts({1, 2}, {2, 3})
    with pytest.raises(ValueError, match=r"\|C\| > \|I\|"):
        x2_parts({1, 2}, {1, 2, 3})
    with pytest.raises(ValueError, match=r"\|D\| > \|I\|"):
        x2_parts({1, 2, 3}, {1, 2})


def test_x2_sign_normalisation():
    parts = x2_parts({1, 2, 3}, {-1, 2, 4})
    # one shared sign flipped on D, compensated on D's private literal
    assert parts.normalized_right == {1, 2, -4}
    assert parts.flipped == (1, 4)
    assert xor_equivalent(parts.normalized_right, {-1, 2, 4})


def test_acyclicity_examples():
    a, b = 1, 2
    assert incidence_acyclic([fs({a}), fs({a, b}, {a, -b})])
    assert not incidence_acyclic([fs({1, 2}), fs({1, -2, 3})])
    assert incidence_acyclic([fs({1, 2}), fs({1, 3}), fs({1, 4, 5})])
    assert not xor_acyclic([{1, 2}, {2, 3}, {1, 3}])
    G = variable_interaction_graph([fs({1, 2}), fs({2, 3}), fs({4})])
    assert sorted(G.edges) == [(0, 1)]


def test_tseitin_graph_examples():
    C = {1, -2, 3}
    assert tseitin_formula(bouquet(C)) == X0(C)
    for n in range(1, 5):
        assert tseitin_formula(dipole(n)) == full_clauses(n)
    triangle = GeneralGraph(("u", "v", "w"), {1: ("u", "v"), 2: ("v", "w"), 3: ("u", "w")}, {"u": 1})
    assert not sat_decide(tseitin_formula(triangle))
    with pytest.raises(ValueError):
        GeneralGraph(("u",), {1: ("u",), -1: ("u",)}, {})
    with pytest.raises(ValueError):
        GeneralGraph(("u", "z"), {1: ("u",)}, {"z": 1})


def test_tseitin_xor_matches_charges():
    G = GeneralGraph(("u", "v"), {1: ("u", "v"), 2: ("u", "v")}, {"u": 1, "v": 0})
    assert {canonical_xor(c) for c in tseitin_xor(G)} == {frozenset({-1, 2}), frozenset({1, 2})}


def test_tn_sizes_and_layout():
    for n in range(2, 9):
        T = generate_Tn(n)
        assert (n_vars(T), n_clauses(T), n_literals(T)) == (3 * n - 4, 8 * n - 12, 24 * n - 40)
        assert max(len(c) for c in T) <= 3
        assert not sat_decide(T)
    assert generate_Tn(2) == full_clauses(2)
    lay = tn_layout(4)
    assert lay["x"] == [1, 2, 3, 4] and lay["y"] == {2: 5, 3: 6} and lay["y_prime"] == {2: 7, 3: 8}
    with pytest.raises(ValueError):
        generate_Tn(1)


def test_hd_two_xor_expected_examples():
    assert hd_two_xor_expected({1, 2, 3, 4}, {1, 2, 3, 5}) == 3
    assert hd_two_xor_expected({1, 2}, {3, 4}) == 1
    assert hd_two_xor_expected(range(1, 5), [1, 2, 3, -4]) == 4
    with pytest.raises(ValueError):
        hd_two_xor_expected({1, 2}, {1, 2})
    with pytest.raises(ValueError):
        hd_two_xor_expected(set(), {1})


def test_msp_example():
    M = parse_msp(MSP_TEXT)
    assert emit_msp(M) == MSP_TEXT
    y1, y2, z1, z2, z3 = 1, 2, 3, 4, 5
    assert msp_relax(M) == fs({-y1, y2, z1}, {y1, z2}, {y2, z3})
    for x in itertools.product((0, 1), repeat=3):
        assert msp_eval(M, x) == int(any(x))
    assert msp_protocol(M, (0, 1, 0)) == {-z1, -z3}
    empty = MSP(2, ())
    assert msp_eval(empty, ()) == 1


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("", "empty"),
        ("msp 1\n", "header"),
        ("msp 1 2\n1 0 | 1\n", "before the first"),
        ("msp 1 2\nsys 2\n", "expected system 1"),
        ("msp 1 2\nsys 1\n1 | 1\n", "2 bits"),
        ("msp 2 1\nsys 1\n1 | 0\n", "expected 2 systems"),
    ],
)
def test_msp_parse_errors(text, fragment):
    with pytest.raises(FormatError, match=fragment):
        parse_msp(text)


def test_msp_rejects_unsatisfiable_system():
    with pytest.raises(ValueError, match="system 1"):
        parse_msp("msp 1 1\nsys 1\n1 | 0\n1 | 1\n")


@settings(max_examples=150, deadline=None)
@given(xor_clause_sets(max_vars=6, max_clauses=4, max_len=4))
def test_gauss_matches_brute_force(F):
    assert xor_sat(F) == brute_xor_sat(F)
    V = vars_of(F)
    assert set(xor_solutions(F)) == xor_models(F, V)


@settings(max_examples=100, deadline=None)
@given(xor_clause_sets(max_vars=5, max_clauses=4), clauses(max_vars=5, max_len=4))
def test_implication_matches_brute_force(F, C):
    V = vars_of(F) | {abs(x) for x in C}
    models = xor_models(F, V)
    assert xor_implies(F, C) == all(xor_holds(t, [C]) for t in models)


@settings(max_examples=100, deadline=None)
@given(xor_clause_sets(max_vars=6, max_clauses=4))
def test_subset_sums_are_implied(F):
    if not xor_sat(F):
        return
    clauses_ = sorted(F, key=sorted)
    for r in range(len(clauses_) + 1):
        for sub in itertools.combinations(clauses_, r):
            s = xor_sum(sub)
            assert s is not INCONSISTENT
            assert xor_implies(F, s)


@given(clauses(max_vars=4, max_len=4, min_len=1), clauses(max_vars=4, max_len=4, min_len=1))
def test_x0_equality_iff_equivalent(C, D):
    assert (X0(C) == X0(D)) == xor_equivalent(C, D)


@settings(max_examples=100, deadline=None)
@given(xor_clause_sets(max_vars=5, max_clauses=3, max_len=4), st.sampled_from(["x0", "x1", "xstar"]))
def test_translations_represent_the_xor_system(F, mode):
    if mode == "xstar" and not xor_sat(F):
        return
    G = {"x0": X0_set, "x1": X1_set, "xstar": X_star}[mode](F)
    V = vars_of(F)
    assert project_models(G, V) == xor_models(F, V)


@settings(max_examples=60, deadline=None)
@given(clauses(max_vars=6, max_len=5, min_len=3), clauses(max_vars=6, max_len=5, min_len=3))
def test_x2_represents_pairs(C, D):
    try:
        G = X2(C, D)
    except ValueError:
        return
    V = vars_of([C, D])
    assert project_models(G, V) == xor_models([C, D], V)


@pytest.mark.parametrize("C, D", [({1}, {2}), ({1}, {-2, 3}), ({-1, 2}, {3, 4})])
def test_short_disjoint_pairs_have_hardness_zero(C, D):
    # X1 adds no auxiliary variables here, so every unsatisfiable
    # instantiation already contains the empty clause
    G = X1_set([C, D])
    assert G == X0_set([C, D])
    assert hardness(G).value == brute_hd(G) == 0
    assert hd_two_xor_expected(C, D) == 1


@pytest.mark.parametrize(
    "C, D", [({1, 2, 3}, {4}), ({1, 2}, {1, 3}), ({1, 2, 3}, {1, 2, 4}), ({1, 2}, {-1, 2}), ({1, 2, 3}, {-1, 2, 3})]
)
def test_two_clause_law_against_oracle(C, D):
    G = X1_set([C, D])
    assert brute_hd(G) == hardness(G).value == hd_two_xor_expected(C, D)
