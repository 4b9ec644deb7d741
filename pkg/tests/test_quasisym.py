import itertools
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bpoly.bcore import b_poly
from bpoly.digraph import Digraph, Graph, structure
from bpoly.errors import PreconditionError
from bpoly.named import A1, JOIN, P3, T_AC
from bpoly.poly import MultiPoly, variables
from bpoly.quasisym import (QSymFunction, basis_change, chromatic_quasisym, fundamental_b_acyclic,
                            fundamental_contributions, incomparability_orders, involution,
                            p_partitions, principal_specialization, qsym_b, qsym_b_by_maps,
                            qsym_product, qsym_readoff, shareshian_wachs_contributions,
                            structural_qsym_readoff, tutte_symmetric, validate_order)
from conftest import digraphs
from oracles import q, same, y, z

Q, Y, Z = variables("q", "y", "z")


def M(n, *pairs):
    return QSymFunction(n, "M", {k: c for k, c in pairs})


def F(n, *pairs):
    return QSymFunction(n, "F", {k: c for k, c in pairs})


def _surjection_sum(n, weight):
    """sum over surjections g: [n] -> [p] of weight(g), keyed by fibre sizes (sympy coefficients)."""
    out = Counter()
    for p in range(1, n + 1):
        for g in itertools.product(range(1, p + 1), repeat=n):
            if len(set(g)) != p:
                continue
            w = weight(g)
            if w is not None:
                sizes = Counter(g)
                out[tuple(sizes[i] for i in range(1, p + 1))] += w
    return out


def _qsym_b_oracle(D):
    return _surjection_sum(D.n, lambda g: y ** sum(1 for u, v in D.arcs if g[v - 1] > g[u - 1])
                           * z ** sum(1 for u, v in D.arcs if g[v - 1] < g[u - 1]))


def _agrees(Fq, oracle):
    Fm = Fq.to_basis("M")
    keys = set(Fm.coeffs) | set(oracle)
    return all(same(Fm.coeff(k), oracle.get(k, 0)) for k in keys)


# ---------------------------------------------------------------- worked expansions

def test_edge_expansion():
    assert qsym_b(A1) == M(2, ((1, 1), Y + Z), ((2,), 1))


def test_path_expansion():
    expected = M(3, ((1, 1, 1), Y ** 2 + Z ** 2 + 4 * Y * Z), ((1, 2), Y * Z + Y + Z),
                 ((2, 1), Y * Z + Y + Z), ((3,), 1))
    assert qsym_b(P3) == expected


def test_join_expansion():
    expected = M(3, ((1, 1, 1), 2 * (Y ** 2 + Z ** 2 + Y * Z)), ((1, 2), Z ** 2 + 2 * Y),
                 ((2, 1), Y ** 2 + 2 * Z), ((3,), 1))
    assert qsym_b(JOIN) == expected


def test_path_and_join_in_fundamental_basis():
    top = Y ** 2 + Z ** 2 + 2 * Y * Z - 2 * Y - 2 * Z + 1
    P = qsym_b(P3).to_basis("F")
    assert P == F(3, ((1, 2), top), ((1,), Y * Z + Y + Z - 1), ((2,), Y * Z + Y + Z - 1), ((), 1))
    J = qsym_b(JOIN).to_basis("F")
    assert J == F(3, ((1, 2), top), ((1,), Z ** 2 + 2 * Y - 1), ((2,), Y ** 2 + 2 * Z - 1), ((), 1))


def test_single_vertex():
    G = qsym_b(Digraph(1)).to_basis("F")
    assert G.coeffs == {(): MultiPoly.const(1)}


@given(digraphs(max_n=4, max_m=4))
def test_qsym_b_matches_colouring_oracle(D):
    assert _agrees(qsym_b(D), _qsym_b_oracle(D))
    assert qsym_b(D) == qsym_b_by_maps(D)


# ---------------------------------------------------------------- bases and involutions

def test_basis_fixture():
    assert basis_change(M(2, ((2,), 1)), "F") == F(2, ((), 1), ((1,), -1))
    assert basis_change(M(2, ((2,), 1)), "F").coeffs == {(): 1, (1,): -1}


def test_involution_fixtures():
    assert involution(F(3, ((1,), 1)), "omega").coeffs == {(2,): 1}
    assert involution(M(3, ((1, 2), 1)), "rho").coeffs == {(2, 1): 1}


@st.composite
def qsyms(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    basis = draw(st.sampled_from(("M", "F")))
    keys = (list(itertools.chain.from_iterable(
        itertools.combinations(range(1, n), r) for r in range(n))) if basis == "F"
        else [c for c in _compositions(n)])
    chosen = draw(st.lists(st.sampled_from(keys), max_size=4, unique=True))
    coeffs = {k: MultiPoly.coerce(draw(st.integers(-3, 3))) * (Y ** draw(st.integers(0, 2)))
              for k in chosen}
    return QSymFunction(n, basis, coeffs)


def _compositions(n):
    for cuts in itertools.product((0, 1), repeat=n - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield tuple(parts)


@given(qsyms())
def test_basis_round_trip(G):
    assert basis_change(basis_change(G, "F"), "M").coeffs == G.to_basis("M").coeffs
    assert basis_change(basis_change(G, "M"), "F").coeffs == G.to_basis("F").coeffs


@given(qsyms())
def test_involutions_are_involutive(G):
    for which in ("omega", "rho"):
        assert involution(involution(G, which), which) == G


@settings(max_examples=30)
@given(qsyms(max_n=3), qsyms(max_n=3))
def test_omega_is_multiplicative(G, H):
    # omega is an anti-automorphism composed with rho; on QSym it is multiplicative
    assert involution(qsym_product(G, H), "omega") == qsym_product(involution(G, "omega"),
                                                                    involution(H, "omega"))


@given(digraphs(max_n=4, max_m=4))
def test_rho_swaps_ascents_and_descents(D):
    swapped = qsym_b(D).map_coeffs(lambda c: c.subs({"y": Z, "z": Y}))
    assert involution(qsym_b(D), "rho") == swapped


# ---------------------------------------------------------------- specialization and products

def _count_weakly_increasing(n, S, k):
    """Number of f: [n] -> [k], weakly increasing, strict at positions in S."""
    return sum(1 for f in itertools.product(range(1, k + 1), repeat=n)
               if all(f[i] < f[i + 1] if i + 1 in S else f[i] <= f[i + 1] for i in range(n - 1)))


def test_specialization_fixtures():
    assert same(principal_specialization(M(2, ((1, 1), 1))), q * (q - 1) / 2)
    assert same(principal_specialization(F(3, ((1,), 1))), (q - 1) * q * (q + 1) / 6)
    assert principal_specialization(qsym_b(A1)) == b_poly(A1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_fundamental_specialization_counts(n):
    for r in range(n):
        for S in itertools.combinations(range(1, n), r):
            P = principal_specialization(F(n, (S, 1)))
            for k in range(0, 5):
                assert P.evaluate({"q": k}) == _count_weakly_increasing(n, set(S), k)


@given(digraphs(max_n=4, max_m=5))
def test_specialization_recovers_b(D):
    assert principal_specialization(qsym_b(D)) == b_poly(D)


def test_product_fixtures():
    one = M(1, ((1,), 1))
    assert qsym_product(one, one) == M(2, ((1, 1), 2), ((2,), 1))
    assert qsym_product(M(2, ((2,), 1)), one) == M(3, ((2, 1), 1), ((1, 2), 1), ((3,), 1))
    with_vertex = Digraph(3, ((1, 2),))
    assert qsym_b(with_vertex) == qsym_product(qsym_b(A1), one)


@settings(max_examples=30)
@given(qsyms(max_n=3), qsyms(max_n=2))
def test_product_specializes_to_product(G, H):
    lhs = principal_specialization(qsym_product(G, H))
    assert lhs == principal_specialization(G) * principal_specialization(H)


# ---------------------------------------------------------------- fundamental expansions

def _S(*xs):
    return tuple(xs)


def test_path_contributions():
    got = [(s, S, u) for s, S, u in fundamental_contributions(P3)]
    perms = [(1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1)]
    assert [s for s, _, _ in got] == perms
    assert [u for _, _, u in got] == [2, 1, 1, 1, 1, 0]
    assert [S for _, S, _ in got] == [_S(1, 2), _S(1), _S(2), _S(2), _S(1), _S()]
    sw = shareshian_wachs_contributions(P3, [(1, 3)])
    assert [S for _, S, _ in sw] == [_S(), _S(1), _S(2), _S(), _S(), _S()]
    assert [u for _, _, u in sw] == [2, 1, 1, 1, 1, 0]


def test_join_contributions():
    got = fundamental_contributions(JOIN)
    assert [u for _, _, u in got] == [2, 1, 2, 0, 1, 0]
    assert [S for _, S, _ in got] == [_S(1, 2), _S(1), _S(2), _S(2), _S(1), _S()]
    sw = shareshian_wachs_contributions(JOIN, [(1, 2)])
    assert [S for _, S, _ in sw] == [_S(1), _S(), _S(), _S(2), _S(), _S()]


@given(digraphs(max_n=4, max_m=4, loops=False))
def test_fundamental_expansion_is_z_one_slice(D):
    if not structure(D).is_acyclic:
        with pytest.raises(PreconditionError):
            fundamental_b_acyclic(D)
        return
    relabel = _compatible_relabelling(D)
    D = Digraph(D.n, tuple((relabel[u], relabel[v]) for u, v in D.arcs))
    sliced = qsym_b(D).map_coeffs(lambda c: c.evaluate({"z": 1}))
    assert fundamental_b_acyclic(D) == sliced


def _compatible_relabelling(D):
    import networkx as nx
    G = nx.DiGraph()
    G.add_nodes_from(range(1, D.n + 1))
    G.add_edges_from(D.arcs)
    return {v: i + 1 for i, v in enumerate(nx.topological_sort(G))}


# ---------------------------------------------------------------- chromatic and Tutte

@given(digraphs(max_n=4, max_m=4))
def test_chromatic_quasisym_matches_colourings(D):
    def weight(g):
        if any(g[u - 1] == g[v - 1] for u, v in D.arcs):
            return None
        return y ** sum(1 for u, v in D.arcs if g[v - 1] > g[u - 1])
    assert _agrees(chromatic_quasisym(D), _surjection_sum(D.n, weight))


def test_tutte_symmetric_single_edge_at_minus_one():
    S = tutte_symmetric(Graph(2, ((1, 2),)))
    assert S.map_coeffs(lambda c: c.evaluate({"y": -1})) == M(2, ((1, 1), 2))


@settings(max_examples=30)
@given(digraphs(max_n=4, max_m=4))
def test_tutte_symmetric_matches_colourings(D):
    G = Graph(D.n, D.arcs)
    expected = _surjection_sum(D.n, lambda g: (1 + y) ** sum(1 for u, v in D.arcs if g[u - 1] == g[v - 1]))
    assert _agrees(tutte_symmetric(G), expected)


# ---------------------------------------------------------------- read-offs

def test_readoff_fixtures():
    J = qsym_readoff(qsym_b(JOIN), JOIN.m, True)
    assert J.degree_pairs == 2 * Y + Z ** 2 and J.profile == (2, 1)
    assert qsym_readoff(qsym_b(P3), P3.m, True).profile == (1, 1, 1)
    assert qsym_readoff(qsym_b(A1), A1.m, True).directed_cuts_by_size == {1: 1}


@given(digraphs(max_n=4, max_m=5, loops=False))
def test_readoff_matches_structure(D):
    acyclic = structure(D).is_acyclic
    assert qsym_readoff(qsym_b(D), D.m, acyclic) == structural_qsym_readoff(D)


# ---------------------------------------------------------------- P-partitions and orders

@given(digraphs(max_n=3, max_m=3, loops=False))
def test_p_partitions_match_definition(D):
    for k in (1, 2, 3):
        got = p_partitions(D, k)
        brute = {f for f in itertools.product(range(1, k + 1), repeat=D.n)
                 if all(f[u - 1] < f[v - 1] or (f[u - 1] == f[v - 1] and u > v) for u, v in D.arcs)}
        assert set(got) == brute and all(c == 1 for c in got.values())


def test_incomparability_orders_of_path():
    assert incomparability_orders(P3) == [((1, 3),), ((3, 1),)]
    assert incomparability_orders(T_AC) == [()]


def test_validate_order_rejects_cycles():
    with pytest.raises(PreconditionError):
        validate_order(3, [(1, 2), (2, 1)])
    assert validate_order(3, [(1, 2), (2, 3)]) == frozenset({(1, 2), (2, 3), (1, 3)})
