"""The B-polynomial, its classical specialisations and the mixed-graph Tutte
polynomials built from it."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Tuple, Union

from .digraph import (Digraph, Graph, MixedGraph, component_count, enumerate_orientations,
                      structure)
from .errors import InternalAssertionError, PreconditionError, WorkBoundExceeded
from .poly import (MultiPoly, QBinomial, binomial_poly, exact_divide, from_binomial_basis,
                   interpolate_in_q, substitute_rational)

Q, Y, Z, X = (MultiPoly.var(v) for v in "qyzx")
DEFAULT_VERTEX_BOUND = 9

StatTable = Dict[int, Counter]  # blocks p -> Counter{(asc, desc): surjection count}


def _bitarcs(D: Digraph) -> List[Tuple[int, int]]:
    return [(1 << (u - 1), 1 << (v - 1)) for u, v in D.arcs]


def _subsets(mask: int):
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def surjection_table(D: Digraph) -> StatTable:
    """Counts of surjections V -> [p] by (ascents, descents), built block by block.

    A surjection is an ordered set partition; placing the blocks in colour
    order, an arc from an earlier block to the new one is an ascent and an arc
    back into an earlier block is a descent.
    """
    n = D.n
    full = (1 << n) - 1
    bits = _bitarcs(D)
    states: Dict[int, Dict[int, Counter]] = {0: {0: Counter({(0, 0): 1})}}
    for S in range(full + 1):
        here = states.pop(S, None)
        if here is None:
            continue
        if S == full:
            return {p: c for p, c in here.items()}
        rest = full ^ S
        for X in _subsets(rest):
            a = d = 0
            for ub, vb in bits:
                if ub & S and vb & X:
                    a += 1
                elif ub & X and vb & S:
                    d += 1
            target = states.setdefault(S | X, {})
            for p, counts in here.items():
                dest = target.setdefault(p + 1, Counter())
                for (a0, d0), k in counts.items():
                    dest[(a0 + a, d0 + d)] += k
    raise AssertionError("unreachable")


def surjection_table_by_maps(D: Digraph) -> StatTable:
    """Same table by filtering all maps V -> [p]; only for small n."""
    if D.n > 6:
        raise WorkBoundExceeded("map filtering is limited to n <= 6")
    out: StatTable = {}
    for p in range(1, D.n + 1):
        counts: Counter = Counter()
        for g in itertools.product(range(p), repeat=D.n):
            if len(set(g)) != p:
                continue
            a = sum(1 for u, v in D.arcs if g[v - 1] > g[u - 1])
            d = sum(1 for u, v in D.arcs if g[v - 1] < g[u - 1])
            counts[(a, d)] += 1
        if counts:
            out[p] = counts
    return out


def b_from_table(table: StatTable) -> MultiPoly:
    total = MultiPoly.const(0)
    for p, counts in table.items():
        inner = MultiPoly(("y", "z"), {(a, d): k for (a, d), k in counts.items()})
        total = total + binomial_poly("q", p) * inner
    return total.with_vars(("q", "y", "z"))


@lru_cache(maxsize=400000)
def _b_binomial_cached(key) -> QBinomial:
    n, arcs = key
    table = surjection_table(Digraph(n, arcs))
    return QBinomial({p: MultiPoly(("y", "z"), dict(counts)) for p, counts in table.items()})


@lru_cache(maxsize=200000)
def _b_cached(key) -> MultiPoly:
    return _b_binomial_cached(key).to_multipoly().with_vars(("q", "y", "z"))


def b_binomial(D: Digraph, vertex_bound: int = DEFAULT_VERTEX_BOUND) -> QBinomial:
    """B_D as sum_p C(q, p) S_p(y, z); S_p counts surjections onto [p]."""
    if isinstance(D, MixedGraph):
        D = D.digraph
    if D.n > vertex_bound:
        raise WorkBoundExceeded(f"n = {D.n} exceeds the vertex bound {vertex_bound}")
    return _b_binomial_cached(D.key())


def b_poly(D: Digraph, vertex_bound: int = DEFAULT_VERTEX_BOUND) -> MultiPoly:
    """B_D(q, y, z) = sum over f: V -> [q] of y^#ascents z^#descents."""
    if isinstance(D, MixedGraph):
        D = D.digraph
    if D.n > vertex_bound:
        raise WorkBoundExceeded(f"n = {D.n} exceeds the vertex bound {vertex_bound}")
    return _b_cached(D.key())


def b_eval_direct(D: Digraph, q: int, work_bound: int = 10 ** 7) -> MultiPoly:
    """Brute-force B_D at a positive integer q, as a polynomial in y, z."""
    if q < 1:
        raise PreconditionError("direct evaluation needs q >= 1")
    if q ** D.n > work_bound:
        raise WorkBoundExceeded(f"{q}^{D.n} colourings exceed the work bound")
    counts: Counter = Counter()
    arcs = [(u - 1, v - 1) for u, v in D.arcs]
    for f in itertools.product(range(q), repeat=D.n):
        a = d = 0
        for u, v in arcs:
            if f[v] > f[u]:
                a += 1
            elif f[v] < f[u]:
                d += 1
        counts[(a, d)] += 1
    return MultiPoly(("y", "z"), dict(counts))


# ---------------------------------------------------------------- graphs

def set_partitions(n: int):
    """Restricted growth strings of length n."""
    if n == 0:
        yield ()
        return
    a = [0] * n

    def rec(i, top):
        if i == n:
            yield tuple(a)
            return
        for b in range(top + 2):
            a[i] = b
            yield from rec(i + 1, max(top, b))

    a[0] = 0
    yield from rec(1, 0)


def potts_poly(G: Graph) -> MultiPoly:
    """P_G(q, y) = sum over colourings of y^#bichromatic edges."""
    total = MultiPoly.const(0)
    by_blocks: Dict[int, Counter] = {}
    for rgs in set_partitions(G.n):
        k = max(rgs) + 1
        bi = sum(1 for u, v in G.edges if rgs[u - 1] != rgs[v - 1])
        by_blocks.setdefault(k, Counter())[bi] += 1
    for k, counts in by_blocks.items():
        falling = MultiPoly.const(1)
        for i in range(k):
            falling = falling * (Q - i)
        total = total + falling * MultiPoly(("y",), {(e,): c for e, c in counts.items()})
    return total.with_vars(("q", "y"))


def tutte_poly(G: Graph, edge_bound: int = 16) -> MultiPoly:
    """Subset expansion sum_S (x-1)^(c(S)-c(E)) (y-1)^(|S|+c(S)-|V|)."""
    m = len(G.edges)
    if m > edge_bound:
        raise WorkBoundExceeded(f"{m} edges exceed the subset-expansion bound {edge_bound}")
    cE = component_count(G.n, G.edges)
    counts: Counter = Counter()
    for mask in range(1 << m):
        S = [G.edges[i] for i in range(m) if mask >> i & 1]
        cS = component_count(G.n, S)
        counts[(cS - cE, len(S) + cS - G.n)] += 1
    total = MultiPoly.const(0)
    for (i, j), k in counts.items():
        total = total + (X - 1) ** i * (Y - 1) ** j * k
    return total.with_vars(("y", "x"))


def graph_polynomials(G: Graph, which: str) -> MultiPoly:
    if which == "potts":
        return potts_poly(G)
    if which == "tutte":
        return tutte_poly(G)
    raise ValueError(f"unknown graph polynomial {which!r}")


# ---------------------------------------------------------------- chromatic

@lru_cache(maxsize=400000)
def chromatic_counts(key, kind: str) -> Tuple[int, ...]:
    """Surjections V -> [p] that are strictly increasing (kind 'strict') or
    weakly increasing ('weak') along every arc; entry p is the count."""
    n, arcs = key
    full = (1 << n) - 1
    bits = [(1 << (u - 1), 1 << (v - 1)) for u, v in arcs]
    strict = kind == "strict"
    if strict and any(u == v for u, v in arcs):
        return (0,) * (n + 1)
    states: Dict[int, List[int]] = {0: [1] + [0] * n}
    for S in range(full + 1):
        here = states.pop(S, None)
        if here is None:
            continue
        if S == full:
            return tuple(here)
        for Xs in _subsets(full ^ S):
            ok = True
            for ub, vb in bits:
                if (ub & Xs and vb & S) or (strict and ub & Xs and vb & Xs):
                    ok = False
                    break
            if not ok:
                continue
            dest = states.setdefault(S | Xs, [0] * (n + 1))
            for p in range(n):
                if here[p]:
                    dest[p + 1] += here[p]
    return (0,) * (n + 1)


def chromatic_direct(D: Digraph, kind: str) -> MultiPoly:
    counts = chromatic_counts(D.key(), kind)
    return from_binomial_basis({p: c for p, c in enumerate(counts) if c}).with_vars(("q",))


def mixed_chromatic_direct(M: MixedGraph, work_bound: int = 10 ** 6) -> MultiPoly:
    """Strictly compatible colourings (proper on unoriented edges, strictly
    increasing on oriented ones), counted for q = 1..n+1 and interpolated."""
    n = M.n
    if (n + 1) ** n > work_bound:
        raise WorkBoundExceeded("too many colourings for direct counting")
    arcs = M.digraph.arcs
    edges = [(arcs[b[0]][0] - 1, arcs[b[0]][1] - 1, len(b) == 2) for b in M.blocks]
    points = []
    for q in range(1, n + 2):
        count = 0
        for f in itertools.product(range(q), repeat=n):
            if all((f[u] != f[v]) if undirected else (f[u] < f[v]) for u, v, undirected in edges):
                count += 1
        points.append((q, count))
    return interpolate_in_q(points, n).with_vars(("q",))


def chromatic(D: Union[Digraph, MixedGraph], kind: str) -> MultiPoly:
    if kind == "strict":
        B = b_poly(D)
        return B.evaluate({"z": 1}).coeff("y", D.m if isinstance(D, Digraph) else D.digraph.m)
    if kind == "weak":
        return b_poly(D).evaluate({"y": 0, "z": 1})
    if kind == "mixed_strict":
        M = D if isinstance(D, MixedGraph) else MixedGraph.oriented(D)
        direct = mixed_chromatic_direct(M)
        c = component_count(M.n, M.digraph.arcs)
        via_t = tutte_to_chromatic(t_mixed(M, 1), M.n, c)
        if direct != via_t:
            raise InternalAssertionError("direct count and Tutte specialisation disagree")
        return direct
    raise ValueError(f"unknown chromatic kind {kind!r}")


def tutte_to_chromatic(T: MultiPoly, n: int, c: int) -> MultiPoly:
    """(-1)^(n-c) q^c T(1-q, 0)."""
    return (T.subs({"x": 1 - Q, "y": 0}) * Q ** c * (-1) ** (n - c)).with_vars(("q",))


# ---------------------------------------------------------------- mixed Tutte

def _invert_y(B1: MultiPoly, num, edge_count: int) -> MultiPoly:
    """y^edge_count * B1(q, num/y)."""
    d = max(B1.degree("y"), 0)
    if d > edge_count:
        raise InternalAssertionError("more ascents than edges")
    return substitute_rational(B1, "y", num, Y, d) * Y ** (edge_count - d)


@lru_cache(maxsize=100000)
def _t_cached(key, which: int) -> MultiPoly:
    (n, arcs), blocks = key
    M = MixedGraph(Digraph(n, arcs), blocks)
    E = M.edge_count
    c = component_count(n, arcs)
    if which == 1:
        B1 = b_poly(M.digraph).evaluate({"z": 1})
        P = _invert_y(B1, 1, E)
        scale = 1
    else:
        P = MultiPoly.const(0)
        for O in enumerate_orientations(M):
            P = P + _invert_y(b_poly(O).evaluate({"z": 1}), 2 - Y, E)
        scale = Fraction(1, 2 ** E)
    P = P.subs({"q": (X - 1) * (Y - 1)})
    P = exact_divide(P, (Y - 1) ** n)
    P = exact_divide(P, (X - 1) ** c)
    return (P * scale).with_vars(("y", "x"))


def t_mixed(M: Union[MixedGraph, Digraph], which: int) -> MultiPoly:
    """T^(1) or T^(2) of a mixed graph, through B with exact division."""
    if isinstance(M, Digraph):
        M = MixedGraph.oriented(M)
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    return _t_cached(M.key(), which)


# ---------------------------------------------------------------- read-offs

@dataclass(frozen=True)
class ReadoffReport:
    acyclic_arc_count: int
    scc_count: int
    max_path_condensation: int
    directed_cut_count: int
    strict_chromatic_of_quotient: MultiPoly

    def to_json_obj(self) -> dict:
        return {"acyclic_arc_count": self.acyclic_arc_count, "scc_count": self.scc_count,
                "max_path_condensation": self.max_path_condensation,
                "directed_cut_count": self.directed_cut_count,
                "strict_chromatic_of_quotient": self.strict_chromatic_of_quotient.to_json_obj()}


def readoff(B: MultiPoly) -> ReadoffReport:
    """Structural numbers recovered from B alone.

    max_path_condensation is the least q >= 1 with a nonzero strict chromatic
    value on the acyclic quotient, which is one more than the number of arcs
    on its longest directed path.
    """
    B0 = B.evaluate({"z": 0})
    alpha = max(B0.degree("y"), 0)
    C = B0.coeff("y", alpha).with_vars(("q",))
    q = 1
    while C.evaluate({"q": q}).constant_value() == 0:
        q += 1
    cuts = B.evaluate({"q": 2, "y": 1, "z": 0}).constant_value()
    return ReadoffReport(alpha, C.degree("q"), q, int(cuts), C)


def directed_cuts(D: Digraph) -> int:
    """Subsets U (including empty and V) with no arc entering U from outside."""
    count = 0
    for mask in range(1 << D.n):
        if all(not (mask >> (v - 1) & 1) or (mask >> (u - 1) & 1) for u, v in D.arcs):
            count += 1
    return count


def directed_cuts_by_size(D: Digraph) -> Dict[int, int]:
    """|U| -> number of vertex sets U with every crossing arc leaving U."""
    out: Dict[int, int] = {}
    for mask in range(1 << D.n):
        if all(not (mask >> (v - 1) & 1) or (mask >> (u - 1) & 1) for u, v in D.arcs):
            k = bin(mask).count("1")
            out[k] = out.get(k, 0) + 1
    return out


def structural_readoff(D: Digraph) -> ReadoffReport:
    """The same numbers computed from the digraph directly."""
    s = structure(D)
    quotient = s.acyclic_quotient
    qs = structure(quotient)
    return ReadoffReport(
        acyclic_arc_count=D.m - len(s.cyclic_arcs),
        scc_count=s.scc_count,
        max_path_condensation=int(qs.longest_path_arcs) + 1,
        directed_cut_count=directed_cuts(D),
        strict_chromatic_of_quotient=chromatic_direct(quotient, "strict"),
    )
