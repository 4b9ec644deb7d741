import itertools

import networkx as nx
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from bpoly.bcore import b_eval_direct, b_poly
from bpoly.digraph import Digraph, component_count
from bpoly.errors import ParseError, PreconditionError, WorkBoundExceeded
from bpoly.family import (SignWord, _chi_w_counts, b_m, b_m_eval, b_w, coflow_eval,
                          tree_orientation_values, w_strict_chromatic, w_weak_chromatic)
from bpoly.named import A1, T_CYC
from bpoly.poly import variables
from conftest import digraphs
from oracles import band_eval, q, same, y, z

Q, Y, Z = variables("q", "y", "z")

WORDS = ["+", "-", "++", "+-", "-+", "--"]
ANTIPALINDROMIC = [w for w in WORDS if SignWord.parse(w).is_antipalindromic()]


def _apply_word(expr, w):
    """Collapse y_k, z_k of a sympy band polynomial onto y, z according to w."""
    sub = {}
    for k, s in enumerate(SignWord.parse(w).letters, start=1):
        yk, zk = sp.Symbol(f"y{k}"), sp.Symbol(f"z{k}")
        sub[yk], sub[zk] = (y, z) if s > 0 else (z, y)
    return sp.expand(expr.subs(sub, simultaneous=True))


def _word_oracle(D, w):
    """b_w by band enumeration at q = mp + 1 for p = 0..n, then Lagrange interpolation in q."""
    m = SignWord.parse(w).m
    pts = [(m * p + 1, _apply_word(band_eval(D.n, D.arcs, m, p), w)) for p in range(D.n + 1)]
    return sp.expand(sp.interpolate(pts, q)) if len(pts) > 1 else pts[0][1]


# ---------------------------------------------------------------- band evaluations

def test_edge_bands_at_m2_p1():
    # differences +-1 and +-2 fall in different bands when p = 1
    P = b_m_eval(A1, 2, 1)
    y1, y2, z1, z2 = sp.symbols("y1 y2 z1 z2")
    assert same(P, 3 + 2 * y1 + y2 + 2 * z1 + z2)
    assert same(P, band_eval(2, A1.arcs, 2, 1))


def test_p_zero_is_one():
    for D in (A1, T_CYC, Digraph(3)):
        assert b_m_eval(D, 2, 0) == 1


def test_m1_band_eval_is_direct_b():
    assert b_m_eval(A1, 1, 2).subs({"y1": Y, "z1": Z}) == b_eval_direct(A1, 3)


@settings(max_examples=25)
@given(digraphs(max_n=3, max_m=3), st.integers(1, 2), st.integers(0, 2))
def test_band_eval_matches_oracle(D, m, p):
    assert same(b_m_eval(D, m, p), band_eval(D.n, D.arcs, m, p))


def test_band_eval_work_bound():
    with pytest.raises(WorkBoundExceeded):
        b_m_eval(Digraph(6, ((1, 2),)), 3, 3, work_bound=1000)


# ---------------------------------------------------------------- B^(m) and B^w

@given(digraphs(max_n=4, max_m=5))
def test_first_family_member_is_b(D):
    assert b_m(D, 1).subs({"y1": Y, "z1": Z}) == b_poly(D)


def test_edge_collapse_at_m2():
    sub = {"y1": Y, "y2": Y, "z1": Z, "z2": Z}
    assert b_m(A1, 2).subs(sub) == Q + Q * (Q - 1) * (Y + Z) / 2
    assert b_m(Digraph(1), 3) == Q


@settings(max_examples=20)
@given(digraphs(max_n=3, max_m=3))
def test_collapse_at_m3(D):
    sub = {f"{v}{k}": (Y if v == "y" else Z) for v in "yz" for k in (1, 2, 3)}
    assert b_m(D, 3).subs(sub) == b_poly(D)


@given(digraphs(max_n=4, max_m=5))
def test_trivial_words_give_b(D):
    assert b_w(D, "+") == b_w(D, "++") == b_w(D, "-") == b_poly(D)


def test_edge_antipalindromic_word():
    assert b_w(A1, "+-") == Q + Q * (Q - 1) * (Y + Z) / 2
    assert same(b_w(A1, "+-"), _word_oracle(A1, "+-"))


@settings(max_examples=25)
@given(digraphs(max_n=3, max_m=3), st.sampled_from(WORDS))
def test_b_w_matches_band_interpolation(D, w):
    assert same(b_w(D, w), _word_oracle(D, w))


@given(digraphs(max_n=4, max_m=4), st.sampled_from(WORDS))
def test_unit_value_and_swap(D, w):
    B = b_w(D, w)
    assert B.evaluate({"y": 1, "z": 1}) == Q ** D.n
    assert B.subs({"y": Z, "z": Y}) == b_w(D, SignWord.parse(w).negated())


@given(digraphs(max_n=4, max_m=5), st.sampled_from(ANTIPALINDROMIC))
def test_antipalindromic_divisibility(D, w):
    c = component_count(D.n, D.arcs)
    B = b_w(D, w)
    assert all(e[B.vars.index("q")] >= c for e in B.terms)


def _differences_at_small_q(P, n):
    vals = [P.evaluate({"q": k}).constant_value() for k in range(n + 1)]
    out = []
    while vals:
        out.append(vals[0])
        vals = [b - a for a, b in zip(vals, vals[1:])]
    return tuple(out) if any(out) else None


@settings(max_examples=30)
@given(digraphs(max_n=4, max_m=4), st.sampled_from(WORDS))
def test_direct_chi_w_counts_match_b_w(D, w):
    # direct all-y / no-y colouring counts against coefficients of the interpolated B^w
    letters = SignWord.parse(w).letters
    key = (D.n, D.arcs)
    assert _chi_w_counts(key, letters, "strict") == _differences_at_small_q(w_strict_chromatic(D, w), D.n)
    assert _chi_w_counts(key, letters, "weak") == _differences_at_small_q(w_weak_chromatic(D, w), D.n)


# ---------------------------------------------------------------- coflows

def test_coflow_edge():
    assert coflow_eval(A1, "+-", 1) == b_w(A1, "+-").evaluate({"q": 3}).with_vars(("y", "z"))
    assert coflow_eval(A1, "+-", 1) == 3 + 3 * Y + 3 * Z


def test_coflow_triangle():
    expected = b_w(T_CYC, "+-").evaluate({"q": 3}).with_vars(("y", "z"))
    assert coflow_eval(T_CYC, "+-", 1) == expected


def _coflow_oracle(D, w, p):
    """Enumerate every arc labelling, keep those with zero signed sum around each cycle."""
    letters = SignWord.parse(w).letters
    m = len(letters)
    qv = m * p + 1
    G = nx.MultiGraph()
    G.add_nodes_from(range(1, D.n + 1))
    for i, (u, v) in enumerate(D.arcs):
        G.add_edge(u, v, key=i)
    total = sp.Integer(0)
    for lab in itertools.product(range(qv), repeat=D.m):
        # propagate potentials from each component's root, then test every arc
        pot = {}
        ok = True
        for comp in nx.connected_components(G):
            pot[min(comp)] = 0
            changed = True
            while changed:
                changed = False
                for i, (u, v) in enumerate(D.arcs):
                    if u not in comp:
                        continue
                    if pot.get(u) is not None and pot.get(v) is None:
                        pot[v] = (pot[u] + lab[i]) % qv
                        changed = True
                    elif pot.get(v) is not None and pot.get(u) is None:
                        pot[u] = (pot[v] - lab[i]) % qv
                        changed = True
            ok = all((pot[v] - pot[u] - lab[i]) % qv == 0
                     for i, (u, v) in enumerate(D.arcs) if u in comp)
            if not ok:
                break
        if not ok:
            continue
        term = sp.Integer(1)
        for r in lab:
            if r:
                k = -(-r // p)
                term *= y if letters[k - 1] > 0 else z
        total += term
    return sp.expand(total * qv ** nx.number_connected_components(G))


@settings(max_examples=20)
@given(digraphs(max_n=3, max_m=3), st.sampled_from(ANTIPALINDROMIC), st.integers(1, 2))
def test_coflow_matches_oracle_and_b_w(D, w, p):
    got = coflow_eval(D, w, p)
    assert same(got, _coflow_oracle(D, w, p))
    qv = SignWord.parse(w).m * p + 1
    assert got == b_w(D, w).evaluate({"q": qv}).with_vars(("y", "z"))


def test_coflow_rejects_other_words():
    with pytest.raises(PreconditionError):
        coflow_eval(A1, "++", 1)


def _labeled_trees(n):
    if n == 1:
        yield ()
        return
    for seq in itertools.product(range(1, n + 1), repeat=n - 2):
        T = nx.from_prufer_sequence([s - 1 for s in seq])
        yield tuple(sorted((u + 1, v + 1) for u, v in T.edges))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_tree_orientation_invariance(n):
    for tree in _labeled_trees(n):
        vals = tree_orientation_values(tree, n, "+-")
        assert all(v == vals[0] for v in vals), tree


# ---------------------------------------------------------------- sign words

@pytest.mark.parametrize("bad", ["", "+x", "0"])
def test_sign_word_errors(bad):
    with pytest.raises(ParseError):
        SignWord.parse(bad)


def test_sign_word_forms():
    w = SignWord.parse("+-")
    assert w.letters == (1, -1) and w.is_antipalindromic() and str(w.negated()) == "-+"
    assert SignWord.parse([1, 1]) == SignWord.parse("++")
    assert not SignWord.parse("++").is_antipalindromic()
