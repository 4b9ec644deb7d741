"""Registry of executable identities.

Each check computes a left-hand side from first principles (sums over arc
partitions, subgraphs or orientations, with chromatic counts and
acyclicity/strong-connectivity tests done directly on the digraphs) and a
right-hand side from the closed form in B or T^(i). A check passes exactly
when the two polynomials are equal.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .bcore import (b_binomial, b_eval_direct, b_poly, readoff, structural_readoff, chromatic_counts, mixed_chromatic_direct, potts_poly,
                    t_mixed, tutte_to_chromatic)
from .digraph import (Digraph, Graph, MixedGraph, component_count, component_labels, doubled,
                      enumerate_orientations, is_forest, modify, structure, underlying)
from .embedding import RotationSystem, planar_dual
from .errors import PreconditionError, UnknownCheckError, WorkBoundExceeded
from .poly import (MultiPoly, QBinomial, exact_divide, interpolate_in_q, substitute_homogeneous,
                   substitute_rational)
from .textio import canonical_string

Q, Y, Z, X = (MultiPoly.var(v) for v in "qyzx")
TERNARY_ARC_BOUND = 8
BINARY_ARC_BOUND = 12


@dataclass
class CheckReport:
    check: str
    input: str
    passed: bool
    lhs: Any
    rhs: Any
    params: Dict[str, Any] = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {"check": self.check, "input": self.input, "params": self.params,
                "passed": self.passed, "lhs": _side_json(self.lhs), "rhs": _side_json(self.rhs)}


def _side_json(value):
    return value.to_json_obj() if hasattr(value, "to_json_obj") else value


@dataclass
class Check:
    id: str
    input_class: str  # digraph | mixed | graph | embedded
    run: Callable[..., Tuple[Any, Any]]
    instances: Callable[[Any], Iterable[dict]]
    applies: Callable[[Any], bool]
    arc_bound: Optional[int]
    module: str = "identities"


REGISTRY: Dict[str, Check] = {}


def register(check_id: str, input_class: str, instances=None, applies=None,
             arc_bound: Optional[int] = None, module: str = "identities"):
    def deco(fn):
        REGISTRY[check_id] = Check(check_id, input_class, fn,
                                   instances or (lambda _g: [{}]),
                                   applies or (lambda _g: True), arc_bound, module)
        return fn
    return deco


def load_all_checks() -> Dict[str, Check]:
    from . import family, quasisym  # noqa: F401  (registration side effects)
    return REGISTRY


def coerce_input(input_class: str, G):
    if input_class == "digraph":
        if isinstance(G, MixedGraph):
            if G.unoriented:
                raise PreconditionError("this check takes a digraph without unoriented edges")
            return G.digraph
        if isinstance(G, Digraph):
            return G
    elif input_class == "mixed":
        if isinstance(G, Digraph):
            return MixedGraph.oriented(G)
        if isinstance(G, MixedGraph):
            return G
    elif input_class == "graph":
        if isinstance(G, Graph):
            return doubled(G)
        if isinstance(G, MixedGraph) and G.is_graph:
            return G
        if isinstance(G, MixedGraph) or isinstance(G, Digraph):
            raise PreconditionError("this check takes an unoriented graph")
    elif input_class == "embedded":
        if isinstance(G, tuple) and len(G) == 2 and isinstance(G[1], RotationSystem):
            return G
        raise PreconditionError("this check takes a digraph with a rotation system")
    raise PreconditionError(f"cannot use {type(G).__name__} as {input_class} input")


def _arc_count(G) -> int:
    if isinstance(G, tuple):
        G = G[0]
    if isinstance(G, MixedGraph):
        return G.digraph.m
    return G.m


def check_instances(check_id: str, G) -> List[dict]:
    chk = load_all_checks().get(check_id)
    if chk is None:
        raise UnknownCheckError(check_id)
    G = coerce_input(chk.input_class, G)
    if not chk.applies(G):
        return []
    return list(chk.instances(G))


def run_check(check_id: str, G, params: Optional[dict] = None) -> CheckReport:
    chk = load_all_checks().get(check_id)
    if chk is None:
        raise UnknownCheckError(check_id)
    G = coerce_input(chk.input_class, G)
    if not chk.applies(G):
        raise PreconditionError(f"{check_id} does not apply to this input")
    if chk.arc_bound is not None and _arc_count(G) > chk.arc_bound:
        raise WorkBoundExceeded(f"{check_id} is limited to {chk.arc_bound} arcs")
    if params is None:
        options = list(chk.instances(G))
        if not options:
            raise PreconditionError(f"{check_id} has no instance on this input")
        params = options[0]
    lhs, rhs = chk.run(G, **params)
    return CheckReport(check_id, canonical_string(G), lhs == rhs, lhs, rhs, dict(params))


# ---------------------------------------------------------------- helpers

@lru_cache(maxsize=400000)
def _info(key) -> Tuple[bool, bool, int, Tuple]:
    """(acyclic, totally cyclic, components, acyclic-quotient key)."""
    n, arcs = key
    s = structure(Digraph(n, arcs))
    return s.is_acyclic, s.is_totally_cyclic, s.components, s.acyclic_quotient.key()


_BINOM_MONO: Dict[int, List[Fraction]] = {}


def _binom_monomial(p: int) -> List[Fraction]:
    """Monomial coefficients of C(q, p)."""
    if p not in _BINOM_MONO:
        coeffs = [Fraction(1)]
        for i in range(p):
            nxt = [Fraction(0)] * (len(coeffs) + 1)
            for k, c in enumerate(coeffs):
                nxt[k + 1] += c
                nxt[k] -= i * c
            coeffs = nxt
        f = Fraction(1, 1)
        for i in range(2, p + 1):
            f *= i
        _BINOM_MONO[p] = [c / f for c in coeffs]
    return _BINOM_MONO[p]


def _accumulated(acc: Dict[Tuple[int, int], Dict[int, Any]]) -> QBinomial:
    """sum over (s,t) of y^s z^t sum_p counts[p] C(q,p)."""
    per_p: Dict[int, Dict[Tuple[int, int], Any]] = {}
    for (s, t), counts in acc.items():
        for p, c in counts.items():
            if c:
                per_p.setdefault(p, {})[(s, t)] = c
    return QBinomial({p: MultiPoly(("y", "z"), terms) for p, terms in per_p.items()})


def _contraction_maps(D: Digraph):
    """For each arc mask R: (vertex count, label list) of D/R."""
    out = {}
    for mask in range(1 << D.m):
        label = component_labels(D.n, (D.arcs[i] for i in range(D.m) if mask >> i & 1))
        out[mask] = (max(label[1:]), label)
    return out


def ternary_accumulate(D: Digraph, mode: str, summands: Dict[Any, Callable[[Tuple], Any]]
                       ) -> Dict[Any, Dict[Tuple[int, int], Dict[Any, Any]]]:
    """For each named summand: the sum over R+S+T = A of y^|S| z^|T| summand(D'),
    grouped by (|S|, |T|). D' is D^{-T} minus R (mode 'delete') or D^{-T}
    contracted by R (mode 'contract').

    A summand maps a digraph key to a sparse vector (a sequence indexed by
    basis position, or a mapping from basis keys), a numpy vector, or None
    to skip. All
    summands share one pass over the 3^|A| partitions.
    """
    if D.m > TERNARY_ARC_BOUND:
        raise WorkBoundExceeded(f"3^|A| sums are limited to |A| <= {TERNARY_ARC_BOUND}")
    arcs = D.arcs
    maps = _contraction_maps(D) if mode == "contract" else None
    accs: Dict[Any, Dict[Tuple[int, int], Dict[Any, Any]]] = {name: {} for name in summands}
    for labels in itertools.product((0, 1, 2), repeat=D.m):
        s = t = 0
        mask = 0
        kept = []
        for i, lab in enumerate(labels):
            if lab == 0:
                mask |= 1 << i
            elif lab == 1:
                s += 1
                kept.append(arcs[i])
            else:
                t += 1
                u, v = arcs[i]
                kept.append((v, u))
        if mode == "delete":
            key = (D.n, tuple(kept))
        else:
            n2, label = maps[mask]
            key = (n2, tuple((label[u], label[v]) for u, v in kept))
        for name, summand in summands.items():
            val = summand(key)
            if val is None:
                continue
            if hasattr(val, "dtype"):
                # numpy vectors accumulate whole
                prev = accs[name].get((s, t))
                accs[name][(s, t)] = val.copy() if prev is None else prev + val
                continue
            slot = accs[name].setdefault((s, t), {})
            for k, c in (val.items() if isinstance(val, dict) else enumerate(val)):
                if c:
                    slot[k] = slot.get(k, 0) + c
    return accs


def ternary_sums(D: Digraph, mode: str,
                 summands: Dict[Any, Callable[[Tuple], Optional[Sequence]]]) -> Dict[Any, QBinomial]:
    """ternary_accumulate with summands in the basis C(q, p)."""
    return {name: _accumulated(acc) for name, acc in ternary_accumulate(D, mode, summands).items()}


def ternary_sum(D: Digraph, mode: str, summand: Callable[[Tuple], Optional[Sequence]]) -> QBinomial:
    return ternary_sums(D, mode, {"": summand})[""]


def _strict(key):
    return chromatic_counts(key, "strict")


def _weak(key):
    return chromatic_counts(key, "weak")


def _signed(sign: int, counts: Sequence[int]) -> List[int]:
    return [sign * c for c in counts]


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


_ONE = (1,)
_MINUS_ONE = (-1,)


def _hom(B: MultiPoly, ynum, znum, den, power: int) -> MultiPoly:
    return substitute_homogeneous(B, {"y": ynum, "z": znum}, den, power)


def _neg_q(B: MultiPoly) -> MultiPoly:
    return B.subs({"q": -Q})


def _times_power(P: MultiPoly, base: MultiPoly, k: int) -> MultiPoly:
    return P * base ** k if k >= 0 else exact_divide(P, base ** (-k))


# ---------------------------------------------------------------- recurrences

def _opposite_pairs(D: Digraph):
    for i, j in itertools.combinations(range(D.m), 2):
        u, v = D.arcs[i]
        if D.arcs[j] == (v, u):
            yield {"arcs": [i, j]}


@register("rec-edge", "digraph", instances=lambda D: _opposite_pairs(D))
def _rec_edge(D: Digraph, arcs):
    lhs = b_binomial(D)
    rhs = b_binomial(modify(D, delete=arcs)) * (Y * Z) + b_binomial(modify(D, contract=arcs)) * (1 - Y * Z)
    return lhs, rhs


@register("rec-arc", "digraph", instances=lambda D: ({"arc": i} for i in range(D.m)))
def _rec_arc(D: Digraph, arc):
    lhs = b_binomial(D) + b_binomial(modify(D, reorient=[arc]))
    rhs = b_binomial(modify(D, delete=[arc])) * (Y + Z) + b_binomial(modify(D, contract=[arc])) * (2 - Y - Z)
    return lhs, rhs


def _unoriented_positions(M: MixedGraph) -> List[int]:
    return [k for k, b in enumerate(M.blocks) if len(b) == 2]


@register("rec-tutte-cases", "mixed",
          instances=lambda M: ({"edge": k, "which": w} for k in _unoriented_positions(M) for w in (1, 2)))
def _rec_tutte(M: MixedGraph, edge, which):
    lhs = t_mixed(M, which)
    u, v = M.digraph.arcs[M.blocks[edge][0]]
    deleted = M.modify(delete_blocks=[edge])
    if u == v:
        return lhs, Y * t_mixed(deleted, which)
    contracted = M.modify(contract_blocks=[edge])
    bridge = component_count(M.n, deleted.digraph.arcs) > component_count(M.n, M.digraph.arcs)
    rhs = ((X - 1) if bridge else 1) * t_mixed(deleted, which) + t_mixed(contracted, which)
    return lhs, rhs


@register("subgraph-expansion", "mixed", instances=lambda M: ({"which": w} for w in (1, 2)))
def _subgraph_expansion(M: MixedGraph, which):
    H = _unoriented_positions(M)
    cD = component_count(M.n, M.digraph.arcs)
    rhs = MultiPoly.const(0)
    for mask in range(1 << len(H)):
        S = [H[i] for i in range(len(H)) if mask >> i & 1]
        R = [H[i] for i in range(len(H)) if not mask >> i & 1]
        cDR = component_count(M.n, M.modify(delete_blocks=R).digraph.arcs)
        cVS = component_count(M.n, (M.digraph.arcs[M.blocks[k][0]] for k in S))
        leaf = M.modify(delete_blocks=R, contract_blocks=S)
        rhs = rhs + (X - 1) ** (cDR - cD) * (Y - 1) ** (len(S) + cVS - M.n) * t_mixed(leaf, which)
    return t_mixed(M, which), rhs


def _forest_path(edges: Dict[int, Tuple[int, int]], u: int, v: int) -> Optional[List[int]]:
    """Edge ids on the path from u to v in a forest, or None."""
    if u == v:
        return []
    adj: Dict[int, List[Tuple[int, int]]] = {}
    for k, (a, b) in edges.items():
        adj.setdefault(a, []).append((b, k))
        adj.setdefault(b, []).append((a, k))
    prev = {u: None}
    stack = [u]
    while stack:
        w = stack.pop()
        for nb, k in adj.get(w, []):
            if nb not in prev:
                prev[nb] = (w, k)
                stack.append(nb)
    if v not in prev:
        return None
    path = []
    while prev[v] is not None:
        w, k = prev[v]
        path.append(k)
        v = w
    return path


def external_activity(M: MixedGraph, forest: Sequence[int], rank: Callable[[int], int]) -> int:
    """Edges outside the forest whose forest path has only edges ranked above them."""
    ends = {k: M.digraph.arcs[M.blocks[k][0]] for k in _unoriented_positions(M)}
    F = {k: ends[k] for k in forest}
    count = 0
    for k, (u, v) in ends.items():
        if k in F:
            continue
        path = _forest_path(F, u, v)
        if path is not None and all(rank(k) < rank(f) for f in path):
            count += 1
    return count


@register("forest-expansion", "mixed",
          instances=lambda M: ({"which": w, "order": o} for w in (1, 2) for o in ("index", "reverse")))
def _forest_expansion(M: MixedGraph, which, order):
    H = _unoriented_positions(M)
    rank = (lambda k: k) if order == "index" else (lambda k: -k)
    cD = component_count(M.n, M.digraph.arcs)
    rhs = MultiPoly.const(0)
    for mask in range(1 << len(H)):
        F = [H[i] for i in range(len(H)) if mask >> i & 1]
        if not is_forest(M.n, (M.digraph.arcs[M.blocks[k][0]] for k in F)):
            continue
        Fbar = [k for k in H if k not in F]
        cDF = component_count(M.n, M.modify(delete_blocks=Fbar).digraph.arcs)
        leaf = M.modify(delete_blocks=Fbar, contract_blocks=F)
        rhs = rhs + (X - 1) ** (cDF - cD) * Y ** external_activity(M, F, rank) * t_mixed(leaf, which)
    return t_mixed(M, which), rhs


# ---------------------------------------------------------------- expansions

EXP_VARIANTS = {1: ("delete", "strict"), 2: ("delete", "weak"), 3: ("contract", "strict"), 4: ("contract", "weak")}


def _expansion_rhs(B: QBinomial, variant: int, m: int) -> QBinomial:
    s = 1 + Y + Z
    if variant == 1:
        return B.map(lambda c: c.subs({"y": 1 + Y, "z": 1 + Z}))
    if variant == 2:
        return B.map(lambda c: _hom(c, 1 + Y, 1 + Z, s, m))
    if variant == 3:
        return B
    return B.map(lambda c: _hom(c, Y, Z, s, m))


def _make_expansion(variant: int):
    mode, kind = EXP_VARIANTS[variant]

    def run(D: Digraph):
        lhs = ternary_sum(D, mode, _strict if kind == "strict" else _weak)
        return lhs, _expansion_rhs(b_binomial(D), variant, D.m)
    return run


for _k in (1, 2, 3, 4):
    register(f"expansions-{_k}", "digraph", arc_bound=TERNARY_ARC_BOUND)(_make_expansion(_k))


def _negq_summand(variant: int):
    def acyclic_weak(key):
        if not _info(key)[0]:
            return None
        return _weak(key)

    def acyclic_weak_signed(key):
        if not _info(key)[0]:
            return None
        return _signed(_sign(key[0]), _weak(key))

    def quotient_strict(key):
        qk = _info(key)[3]
        return _signed(_sign(qk[0]), _strict(qk))

    return {1: acyclic_weak, 2: quotient_strict, 3: acyclic_weak_signed, 4: quotient_strict}[variant]


def _make_negq(variant: int):
    mode = EXP_VARIANTS[variant][0]

    def run(D: Digraph):
        lhs = ternary_sum(D, mode, _negq_summand(variant))
        rhs = _expansion_rhs(b_binomial(D).negated_argument(), variant, D.m)
        if variant == 1:
            rhs = rhs * _sign(D.n)
        return lhs, rhs
    return run


for _k in (1, 2, 3, 4):
    register(f"expansions-negq-{_k}", "digraph", arc_bound=TERNARY_ARC_BOUND)(_make_negq(_k))


def _q1_summand(variant: int):
    def acyclic(key):
        return _ONE if _info(key)[0] else None

    def totcyc_signed(key):
        info = _info(key)
        return (_sign(info[2]),) if info[1] else None

    def acyclic_vertex_sign(key):
        return (_sign(key[0]),) if _info(key)[0] else None

    def totcyc(key):
        return _ONE if _info(key)[1] else None

    return {1: acyclic, 2: totcyc_signed, 3: acyclic_vertex_sign, 4: totcyc}[variant]


def _make_q1(variant: int):
    mode = EXP_VARIANTS[variant][0]

    def run(D: Digraph):
        lhs = ternary_sum(D, mode, _q1_summand(variant))
        rhs = _expansion_rhs(QBinomial({0: b_binomial(D).at(-1)}), variant, D.m)
        if variant == 1:
            rhs = rhs * _sign(D.n)
        if variant == 4:
            rhs = rhs * _sign(component_count(D.n, D.arcs))
        return lhs, rhs
    return run


for _k in (1, 2, 3, 4):
    register(f"q-minus-one-{_k}", "digraph", arc_bound=TERNARY_ARC_BOUND)(_make_q1(_k))


# ---------------------------------------------------------------- generating functions

def _subsets(m: int):
    if m > BINARY_ARC_BOUND:
        raise WorkBoundExceeded(f"2^|A| sums are limited to |A| <= {BINARY_ARC_BOUND}")
    for mask in range(1 << m):
        yield mask, [i for i in range(m) if mask >> i & 1]


@register("gf-acyclic-reorient", "digraph", arc_bound=BINARY_ARC_BOUND)
def _gf_acyclic_reorient(D: Digraph):
    lhs = MultiPoly.const(0)
    for _mask, S in _subsets(D.m):
        if _info(modify(D, reorient=S).key())[0]:
            lhs = lhs + Y ** len(S)
    B = b_binomial(D).at(-1).subs({"y": Y * Z})
    return lhs, B.coeff("z", D.m) * _sign(D.n)


@register("gf-acyclic-subgraph", "digraph", arc_bound=BINARY_ARC_BOUND)
def _gf_acyclic_subgraph(D: Digraph):
    lhs = MultiPoly.const(0)
    for _mask, S in _subsets(D.m):
        if _info(modify(D, delete=S).key())[0]:
            lhs = lhs + Y ** (D.m - len(S))
    rhs = b_binomial(D).at(-1).evaluate({"z": 1}).subs({"y": 1 + Y}) * _sign(D.n)
    return lhs, rhs


@register("gf-cyclic-reorient", "digraph", arc_bound=BINARY_ARC_BOUND)
def _gf_cyclic_reorient(D: Digraph):
    lhs = MultiPoly.const(0)
    for _mask, S in _subsets(D.m):
        if _info(modify(D, reorient=S).key())[1]:
            lhs = lhs + Y ** len(S)
    c = component_count(D.n, D.arcs)
    rhs = _hom(b_binomial(D).at(-1), Y, 1, 1 + Y, D.m) * _sign(c)
    return lhs, rhs


@register("gf-cyclic-contract", "digraph", arc_bound=BINARY_ARC_BOUND)
def _gf_cyclic_contract(D: Digraph):
    lhs = MultiPoly.const(0)
    for _mask, S in _subsets(D.m):
        if _info(modify(D, contract=S).key())[1]:
            lhs = lhs + Y ** (D.m - len(S))
    c = component_count(D.n, D.arcs)
    rhs = _hom(b_binomial(D).at(-1), Y, 0, 1 + Y, D.m) * _sign(c)
    return lhs, rhs


# ---------------------------------------------------------------- reciprocity, symmetry, signs

def _poly_from_counts(counts: Sequence[int]) -> MultiPoly:
    return _accumulated({(0, 0): dict(enumerate(counts))}).to_multipoly().evaluate({"y": 0, "z": 0}).with_vars(("q",))


@register("reciprocity", "digraph")
def _reciprocity(D: Digraph):
    lhs = _poly_from_counts(_weak(D.key())).subs({"q": -Q})
    qk = _info(D.key())[3]
    rhs = _poly_from_counts(_strict(qk)) * _sign(qk[0])
    return lhs, rhs


@register("symmetry-acyclic", "digraph", applies=lambda D: _info(D.key())[0])
def _symmetry_acyclic(D: Digraph):
    B1 = b_poly(D).evaluate({"z": 1})
    lhs = _neg_q(B1)
    rhs = substitute_rational(B1, "y", 1, Y, D.m) * _sign(D.n)
    return lhs, rhs


def _underlying_forest(D: Digraph) -> bool:
    return is_forest(D.n, D.arcs)


@register("symmetry-forest", "digraph", applies=_underlying_forest)
def _symmetry_forest(D: Digraph):
    B = b_poly(D)
    return _neg_q(B), _hom(B, Y, Z, Y + Z - 1, D.m) * _sign(D.n)


@register("mysterious-1", "digraph", arc_bound=BINARY_ARC_BOUND)
def _mysterious_1(D: Digraph):
    c = component_count(D.n, D.arcs)
    total = 0
    for _mask, S in _subsets(D.m):
        if _info(modify(D, delete=S).key())[0]:
            total += _sign(D.m - len(S))
    lhs = MultiPoly.const(total * _sign(D.n - c))
    rhs = b_binomial(D).at(-1).evaluate({"y": 0, "z": 1}) * _sign(c)
    return lhs, rhs


@register("mysterious-2", "digraph", arc_bound=BINARY_ARC_BOUND)
def _mysterious_2(D: Digraph):
    total = 0
    for _mask, S in _subsets(D.m):
        info = _info(modify(D, delete=S).key())
        if info[1]:
            total += _sign(D.m - len(S) + info[2] - D.n)
    rhs = b_binomial(D).at(-1).evaluate({"z": 1}).coeff("y", D.m) * _sign(D.n)
    return MultiPoly.const(total), rhs


def indicator_totally_cyclic(D: Digraph) -> int:
    return int(_info(D.key())[1])


def indicator_acyclic(D: Digraph) -> int:
    return int(_info(D.key())[0])


# ---------------------------------------------------------------- Potts relations

@register("potts-one", "graph")
def _potts_one(M: MixedGraph):
    P = potts_poly(underlying(M))
    return b_poly(M.digraph), P.subs({"y": Y * Z})


@register("potts-two", "graph", arc_bound=2 * BINARY_ARC_BOUND)
def _potts_two(M: MixedGraph):
    total = MultiPoly.const(0)
    for O in enumerate_orientations(M):
        total = total + b_poly(O)
    lhs = total * Fraction(1, 2 ** M.edge_count)
    return lhs, potts_poly(underlying(M)).subs({"y": (Y + Z) * Fraction(1, 2)})


@register("potts-three", "digraph")
def _potts_three(D: Digraph):
    return b_poly(D).subs({"z": Y}), potts_poly(underlying(D))


# ---------------------------------------------------------------- mixed-graph evaluations

@register("chrom-partial", "mixed", instances=lambda M: ({"which": w} for w in (1, 2)))
def _chrom_partial(M: MixedGraph, which):
    c = component_count(M.n, M.digraph.arcs)
    return mixed_chromatic_direct(M), tutte_to_chromatic(t_mixed(M, which), M.n, c)


def _count_orientations(M: MixedGraph, want: int) -> int:
    return sum(1 for O in enumerate_orientations(M) if _info(O.key())[want])


@register("t20", "mixed", instances=lambda M: ({"which": w} for w in (1, 2, "chi")))
def _t20(M: MixedGraph, which):
    lhs = MultiPoly.const(_count_orientations(M, 0))
    if which == "chi":
        rhs = mixed_chromatic_direct(M).evaluate({"q": -1}) * _sign(M.n)
    else:
        rhs = t_mixed(M, which).evaluate({"x": 2, "y": 0})
    return lhs, rhs


@register("t02", "mixed")
def _t02(M: MixedGraph):
    return MultiPoly.const(_count_orientations(M, 1)), t_mixed(M, 2).evaluate({"x": 0, "y": 2})


def _sym02_applies(M: MixedGraph) -> bool:
    H = _unoriented_positions(M)
    if not is_forest(M.n, (M.digraph.arcs[M.blocks[k][0]] for k in H)):
        return False
    return _info(M.modify(contract_blocks=H).digraph.key())[0]


@register("sym02", "mixed", applies=_sym02_applies)
def _sym02(M: MixedGraph):
    T2 = t_mixed(M, 2)
    return T2.evaluate({"y": 2}), T2.evaluate({"y": 0})


@register("t1-acyclic", "mixed", arc_bound=BINARY_ARC_BOUND)
def _t1_acyclic(M: MixedGraph):
    D = M.digraph
    E = M.edge_count
    lhs = MultiPoly.const(0)
    for _mask, S in _subsets(D.m):
        if _info(modify(D, delete=S).key())[0]:
            lhs = lhs + Y ** (E - (D.m - len(S)))
    T1 = t_mixed(M, 1)
    dy = max(T1.degree("y"), 0)
    P = substitute_rational(T1, "y", Y, Y + 1, dy).subs({"x": Y + 2})
    c = component_count(D.n, D.arcs)
    return lhs, _times_power(P, Y + 1, E + c - D.n - dy)


# ---------------------------------------------------------------- fourientations (graphs)

def _fourientation_digraph(G: Graph, states: Sequence[int]) -> Digraph:
    arcs = []
    for (u, v), s in zip(G.edges, states):
        if s in (0, 2):
            arcs.append((u, v))
        if s in (1, 2):
            arcs.append((v, u))
    return Digraph(G.n, tuple(arcs))


@register("fourientation-cyclic", "graph", arc_bound=TERNARY_ARC_BOUND,
          instances=lambda M: ({"variant": v} for v in ("partition", "two-way", "weighted")))
def _fourientation_cyclic(M: MixedGraph, variant):
    G = underlying(M)
    D = M.digraph
    n, E = M.n, M.edge_count
    c = component_count(n, D.arcs)
    T = t_mixed(M, 1)
    dx = max(T.degree("x"), 0)
    if variant == "partition":
        lhs = _signed_by_deleted(D)
        P = substitute_rational(T, "x", Y - 2, Y - 1, dx)
        rhs = _times_power(P, Y - 1, n - c - dx) * Y ** (D.m - E)
        return lhs, rhs
    lhs = MultiPoly.const(0)
    for states in itertools.product((0, 1, 2), repeat=E):
        if not _info(_fourientation_digraph(G, states).key())[1]:
            continue
        two = sum(1 for s in states if s == 2)
        if variant == "two-way":
            lhs = lhs + Y ** two
        else:
            lhs = lhs + Y ** (E - two) * (Y * Y - 2 * Y) ** two
    if variant == "two-way":
        P = substitute_rational(T.subs({"y": Y + 2}), "x", Y, Y + 1, dx)
        return lhs, _times_power(P, Y + 1, n - c - dx)
    P = substitute_rational(T, "x", Y - 2, Y - 1, dx)
    return lhs, _times_power(P, Y - 1, n - c - dx) * Y ** E


def _signed_by_deleted(D: Digraph) -> MultiPoly:
    """sum over R+S+T = A with D^{-T}/R totally cyclic of y^|S| (-1)^|R|."""
    maps = _contraction_maps(D)
    acc: Dict[int, int] = {}
    for labels in itertools.product((0, 1, 2), repeat=D.m):
        mask = sum(1 << i for i, lab in enumerate(labels) if lab == 0)
        n2, label = maps[mask]
        kept = []
        for i, lab in enumerate(labels):
            if lab:
                u, v = D.arcs[i]
                if lab == 2:
                    u, v = v, u
                kept.append((label[u], label[v]))
        if _info((n2, tuple(kept)))[1]:
            s = labels.count(1)
            acc[s] = acc.get(s, 0) + _sign(labels.count(0))
    return MultiPoly(("y",), {(s, ): c for s, c in acc.items()})


@register("myster-4", "graph", arc_bound=BINARY_ARC_BOUND)
def _myster_4(M: MixedGraph):
    D = M.digraph
    c = component_count(D.n, D.arcs)
    total = 0
    for _mask, S in _subsets(D.m):
        info = _info(modify(D, delete=S).key())
        if info[1]:
            total += _sign(info[2] - c)
    lhs = MultiPoly.const(Fraction(total, 2 ** M.edge_count))
    return lhs, t_mixed(M, 1).evaluate({"x": 0, "y": 2})


@register("myster-5", "graph", arc_bound=BINARY_ARC_BOUND)
def _myster_5(M: MixedGraph):
    D = M.digraph
    c = component_count(D.n, D.arcs)
    total = Fraction(0)
    for _mask, S in _subsets(D.m):
        if _info(modify(D, delete=S).key())[0]:
            total += Fraction(-1, 2) ** (D.m - len(S))
    lhs = MultiPoly.const(total * 2 ** M.edge_count * _sign(D.n - c))
    return lhs, t_mixed(M, 1).evaluate({"x": 0, "y": 2})


def totally_cyclic_orientation_count(M: MixedGraph) -> int:
    return _count_orientations(M, 1)


# ---------------------------------------------------------------- planar duality

def _dual_b_direct(Dstar: Digraph) -> MultiPoly:
    """B of the dual rebuilt from brute-force evaluations, independent of b_poly."""
    pts = [(q, b_eval_direct(Dstar, q)) for q in range(1, Dstar.n + 2)]
    return interpolate_in_q(pts, Dstar.n)


@register("planar-duality", "embedded",
          instances=lambda G: ({"variant": v} for v in ("identity", "direct")))
def _planar_duality(G, variant):
    D, rot = G
    Dstar = planar_dual(D, rot)
    Bstar = b_poly(Dstar) if variant == "identity" else _dual_b_direct(Dstar)
    lhs = Bstar.evaluate({"q": -1})
    c = component_count(D.n, D.arcs)
    rhs = _hom(b_binomial(D).at(-1), 1 - Y, 1 - Z, 1 - Y - Z, D.m) * _sign(c - D.n)
    return lhs, rhs


@register("classical-duality", "embedded")
def _classical_duality(G):
    D, rot = G
    Dstar = planar_dual(D, rot)
    c = component_count(D.n, D.arcs)
    lhs = b_poly(Dstar).subs({"z": Y}) * Q ** (D.n - c)
    rhs = _hom(b_poly(D), 1 - Y, 1 - Y, (Q - 1) * Y + 1, D.m)
    return lhs, rhs


@register("loop-deletion", "digraph",
          instances=lambda D: ({"arc": i} for i, (u, v) in enumerate(D.arcs) if u == v))
def _loop_deletion(D: Digraph, arc):
    return b_poly(D), b_poly(modify(D, delete=[arc]))


# ---------------------------------------------------------------- read-offs

@register("readoff", "digraph")
def _readoff(D: Digraph):
    return readoff(b_poly(D)), structural_readoff(D)


@register("oracle-eval", "digraph", instances=lambda D: ({"q": q} for q in (1, 2, 3, 4)))
def _oracle_eval(D: Digraph, q):
    return b_poly(D).evaluate({"q": q}).with_vars(("y", "z")), b_eval_direct(D, q).with_vars(("y", "z"))
