import pytest

from bpoly.bcore import b_eval_direct, b_poly
from bpoly.digraph import Digraph, component_count, enumerate_digraphs, structure
from bpoly.embedding import (RotationSystem, is_planar_embedding, planar_dual, planar_dual_with_rotation,
                             planar_rotations, trace_faces)
from bpoly.errors import InvalidDigraphError, NotPlanarError, ParseError
from bpoly.named import EMBEDDED, T_CYC, T_CYC_ROT
from bpoly.textio import parse_rotation, render_rotation


def _embedded_small(max_n=3, max_m=4):
    for n in range(1, max_n + 1):
        for D in enumerate_digraphs(n, max_m):
            for rot in planar_rotations(D, limit=1):
                yield D, rot


def test_named_embeddings_are_planar():
    for D, rot in EMBEDDED.values():
        assert is_planar_embedding(D, rot)


def test_triangle_dual():
    Dd = planar_dual(T_CYC, T_CYC_ROT)
    assert Dd.n == 2 and Dd.m == 3
    assert len({a for a in Dd.arcs}) == 1
    assert structure(Dd).is_acyclic


def test_euler_formula_on_survey_embeddings():
    # every component sits on its own sphere; a bare vertex bounds one face
    for D, rot in _embedded_small():
        bare = sum(1 for v in range(1, D.n + 1) if all(v not in a for a in D.arcs))
        f = len(trace_faces(D, rot)) + bare
        assert D.n - D.m + f == 2 * component_count(D.n, D.arcs)


def test_double_dual_and_cyclicity():
    for D, rot in _embedded_small():
        Dd, rd = planar_dual_with_rotation(D, rot)
        assert Dd.m == D.m
        assert is_planar_embedding(Dd, rd)
        Ddd = planar_dual(Dd, rd)
        assert Ddd.m == D.m
        if component_count(D.n, D.arcs) == 1:
            s, sd = structure(D), structure(Dd)
            assert s.is_acyclic == sd.is_totally_cyclic
            assert s.is_totally_cyclic == sd.is_acyclic


def test_dual_b_matches_direct_evaluation():
    for D, rot in list(_embedded_small(3, 3))[:40]:
        Dd = planar_dual(D, rot)
        for k in (1, 2, 3):
            assert b_poly(Dd).evaluate({"q": k}) == b_eval_direct(Dd, k)


def test_non_planar_rotation_rejected():
    # K4 drawn with a rotation that does not satisfy Euler
    K4 = Digraph(4, ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)))
    bad = None
    for rot in _all_rotations(K4):
        if not is_planar_embedding(K4, rot):
            bad = rot
            break
    assert bad is not None
    with pytest.raises(NotPlanarError):
        planar_dual(K4, bad)


def _all_rotations(D):
    import itertools
    per_vertex = []
    for v in range(1, D.n + 1):
        ends = [(a, "tail") for a, (u, _) in enumerate(D.arcs) if u == v]
        ends += [(a, "head") for a, (_, w) in enumerate(D.arcs) if w == v]
        per_vertex.append([tuple(p) for p in itertools.permutations(ends)])
    for choice in itertools.product(*per_vertex):
        yield RotationSystem(tuple(choice))


def test_rotation_validation():
    with pytest.raises(InvalidDigraphError):
        planar_dual(T_CYC, RotationSystem(((), (), ())))
    with pytest.raises(InvalidDigraphError):
        planar_dual(T_CYC, RotationSystem((((0, "head"), (2, "head")),
                                           ((1, "tail"), (0, "head")),
                                           ((2, "tail"), (1, "head")))))


def test_rotation_text_round_trip():
    text = render_rotation(T_CYC_ROT)
    assert parse_rotation(text, 3) == T_CYC_ROT
    with pytest.raises(ParseError):
        parse_rotation("[1, 2", 3)
