"""Digraphs, undirected graphs and mixed graphs, with the structural operations
everything else depends on: deletion/contraction/reorientation, strong
components, acyclic quotient, orientations and small enumerations."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import InvalidDigraphError

Arc = Tuple[int, int]


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: Tuple[Arc, ...] = ()

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidDigraphError(f"vertex count must be a positive integer, got {self.n!r}")
        arcs = tuple((int(u), int(v)) for u, v in self.arcs)
        for u, v in arcs:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise InvalidDigraphError(f"arc ({u},{v}) has an endpoint outside 1..{self.n}")
        object.__setattr__(self, "arcs", arcs)

    @property
    def m(self) -> int:
        return len(self.arcs)

    def key(self) -> Tuple[int, Tuple[Arc, ...]]:
        return (self.n, self.arcs)

    def reversed(self) -> "Digraph":
        return Digraph(self.n, tuple((v, u) for u, v in self.arcs))


def build_digraph(n: int, arcs: Iterable[Sequence[int]]) -> Digraph:
    return Digraph(n, tuple(tuple(a) for a in arcs))


@dataclass(frozen=True)
class Graph:
    n: int
    edges: Tuple[Arc, ...] = ()

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidDigraphError("vertex count must be a positive integer")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise InvalidDigraphError(f"edge ({u},{v}) out of range")
        object.__setattr__(self, "edges", edges)


@dataclass(frozen=True)
class MixedGraph:
    """A digraph plus a pairing of its arcs into blocks.

    A doubleton block {i, j} holds two mutually opposite arcs and stands for
    one unoriented edge; a singleton is an oriented edge. Blocks are sorted by
    their smallest arc index.
    """
    digraph: Digraph
    blocks: Tuple[Tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        D = self.digraph
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else -1))
        seen = sorted(i for b in blocks for i in b)
        if seen != list(range(D.m)):
            raise InvalidDigraphError("pairing must partition the arc indices")
        for b in blocks:
            if len(b) == 2:
                (u, v), (s, t) = D.arcs[b[0]], D.arcs[b[1]]
                if (s, t) != (v, u):
                    raise InvalidDigraphError(f"arcs {b} are not mutually opposite")
            elif len(b) != 1:
                raise InvalidDigraphError("blocks must have one or two arcs")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def oriented(cls, D: Digraph) -> "MixedGraph":
        return cls(D, tuple((i,) for i in range(D.m)))

    @property
    def n(self) -> int:
        return self.digraph.n

    @property
    def edge_count(self) -> int:
        return len(self.blocks)

    @property
    def unoriented(self) -> List[Tuple[int, int]]:
        return [b for b in self.blocks if len(b) == 2]

    @property
    def is_graph(self) -> bool:
        return all(len(b) == 2 for b in self.blocks)

    def key(self):
        return (self.digraph.key(), self.blocks)

    def modify(self, delete_blocks: Iterable[int] = (), contract_blocks: Iterable[int] = ()) -> "MixedGraph":
        """Delete or contract whole blocks (given by position in `blocks`)."""
        dels = [i for b in delete_blocks for i in self.blocks[b]]
        cons = [i for b in contract_blocks for i in self.blocks[b]]
        D2, index = modify_with_map(self.digraph, delete=dels, contract=cons)
        new_blocks = []
        for b in self.blocks:
            nb = tuple(index[i] for i in b if i in index)
            if nb:
                new_blocks.append(nb)
        return MixedGraph(D2, tuple(new_blocks))


def doubled(G: Graph) -> MixedGraph:
    """The mixed graph with every edge unoriented (arcs 2i, 2i+1 for edge i)."""
    arcs = []
    blocks = []
    for u, v in G.edges:
        blocks.append((len(arcs), len(arcs) + 1))
        arcs += [(u, v), (v, u)]
    return MixedGraph(Digraph(G.n, tuple(arcs)), tuple(blocks))


def underlying(D) -> Graph:
    """Underlying graph; a mixed graph contributes one edge per block."""
    if isinstance(D, MixedGraph):
        return Graph(D.n, tuple(D.digraph.arcs[b[0]] for b in D.blocks))
    return Graph(D.n, D.arcs)


# ---------------------------------------------------------------- union-find

class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n + 1))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def component_count(n: int, pairs: Iterable[Arc]) -> int:
    dsu = _DSU(n)
    c = n
    for u, v in pairs:
        if dsu.union(u, v):
            c -= 1
    return c


def component_labels(n: int, pairs: Iterable[Arc]) -> List[int]:
    """Label[v] for v in 1..n (index 0 unused), labels 1.. by smallest member."""
    dsu = _DSU(n)
    for u, v in pairs:
        dsu.union(u, v)
    label: Dict[int, int] = {}
    out = [0] * (n + 1)
    for v in range(1, n + 1):
        r = dsu.find(v)
        if r not in label:
            label[r] = len(label) + 1
        out[v] = label[r]
    return out


# ---------------------------------------------------------------- modify

def modify_with_map(D: Digraph, delete: Iterable[int] = (), contract: Iterable[int] = (),
                    reorient: Iterable[int] = ()) -> Tuple[Digraph, Dict[int, int]]:
    R, S, T = set(delete), set(contract), set(reorient)
    for name, s in (("delete", R), ("contract", S), ("reorient", T)):
        bad = [i for i in s if not (isinstance(i, int) and 0 <= i < D.m)]
        if bad:
            raise InvalidDigraphError(f"{name} index out of range: {bad}")
    if R & S or R & T or S & T:
        raise InvalidDigraphError("delete, contract and reorient sets must be disjoint")
    label = component_labels(D.n, (D.arcs[i] for i in S))
    n2 = max(label[1:])
    arcs = []
    index = {}
    for i, (u, v) in enumerate(D.arcs):
        if i in R or i in S:
            continue
        if i in T:
            u, v = v, u
        index[i] = len(arcs)
        arcs.append((label[u], label[v]))
    return Digraph(n2, tuple(arcs)), index


def modify(D: Digraph, delete: Iterable[int] = (), contract: Iterable[int] = (),
           reorient: Iterable[int] = ()) -> Digraph:
    """Delete, contract and reorient disjoint arc sets in one step.

    Surviving arcs keep their relative order. Contracted classes are numbered
    by their smallest original vertex. Contracting an arc whose endpoints are
    already merged (a loop at that point) just removes it.
    """
    return modify_with_map(D, delete, contract, reorient)[0]


# ---------------------------------------------------------------- structure

def strong_components(n: int, arcs: Sequence[Arc]) -> List[int]:
    """Iterative Tarjan. Returns comp[v] for v in 1..n, numbered by smallest member."""
    succ: List[List[int]] = [[] for _ in range(n + 1)]
    for u, v in arcs:
        succ[u].append(v)
    index = [0] * (n + 1)
    low = [0] * (n + 1)
    on_stack = [False] * (n + 1)
    raw = [0] * (n + 1)
    stack: List[int] = []
    counter = 1
    ncomp = 0
    for root in range(1, n + 1):
        if index[root]:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            while i < len(succ[v]):
                w = succ[v][i]
                i += 1
                if not index[w]:
                    work.append((v, i))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                ncomp += 1
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    raw[w] = ncomp
                    if w == v:
                        break
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    relabel: Dict[int, int] = {}
    out = [0] * (n + 1)
    for v in range(1, n + 1):
        if raw[v] not in relabel:
            relabel[raw[v]] = len(relabel) + 1
        out[v] = relabel[raw[v]]
    return out


@dataclass(frozen=True)
class StructureReport:
    components: int
    scc_count: int
    is_acyclic: bool
    is_totally_cyclic: bool
    cyclic_arcs: Tuple[int, ...]
    acyclic_quotient: Digraph
    longest_path_arcs: float  # math.inf when D has a directed cycle
    profile: Optional[Tuple[int, ...]]

    def to_json_obj(self) -> dict:
        from .textio import digraph_to_json_obj
        return {
            "components": self.components,
            "scc_count": self.scc_count,
            "is_acyclic": self.is_acyclic,
            "is_totally_cyclic": self.is_totally_cyclic,
            "cyclic_arcs": list(self.cyclic_arcs),
            "acyclic_quotient": digraph_to_json_obj(self.acyclic_quotient),
            "longest_path_arcs": "infinite" if self.longest_path_arcs == math.inf else self.longest_path_arcs,
            "profile": list(self.profile) if self.profile is not None else None,
        }


def _longest_paths(n: int, arcs: Sequence[Arc]) -> Optional[List[int]]:
    """Vertices on the longest path ending at each vertex, or None if cyclic."""
    indeg = [0] * (n + 1)
    succ: List[List[int]] = [[] for _ in range(n + 1)]
    for u, v in arcs:
        succ[u].append(v)
        indeg[v] += 1
    height = [1] * (n + 1)
    ready = [v for v in range(1, n + 1) if indeg[v] == 0]
    done = 0
    while ready:
        u = ready.pop()
        done += 1
        for v in succ[u]:
            height[v] = max(height[v], height[u] + 1)
            indeg[v] -= 1
            if indeg[v] == 0:
                ready.append(v)
    return height if done == n else None


def is_acyclic(D: Digraph) -> bool:
    return _longest_paths(D.n, D.arcs) is not None


def is_totally_cyclic(D: Digraph) -> bool:
    comp = strong_components(D.n, D.arcs)
    return all(comp[u] == comp[v] for u, v in D.arcs)


def structure(D: Digraph) -> StructureReport:
    comp = strong_components(D.n, D.arcs)
    cyclic = tuple(i for i, (u, v) in enumerate(D.arcs) if comp[u] == comp[v])
    quotient = modify(D, contract=cyclic)
    heights = _longest_paths(D.n, D.arcs)
    if heights is None:
        longest = math.inf
        profile = None
    else:
        longest = max(heights[1:]) - 1
        counts = [0] * max(heights[1:])
        for v in range(1, D.n + 1):
            counts[heights[v] - 1] += 1
        profile = tuple(counts)
    return StructureReport(
        components=component_count(D.n, D.arcs),
        scc_count=max(comp[1:]),
        is_acyclic=heights is not None,
        is_totally_cyclic=len(cyclic) == D.m,
        cyclic_arcs=cyclic,
        acyclic_quotient=quotient,
        longest_path_arcs=longest,
        profile=profile,
    )


# ---------------------------------------------------------------- enumeration

def enumerate_orientations(M: MixedGraph) -> Iterator[Digraph]:
    """Complete orientations: one arc per doubleton, by a binary counter.

    Bit k of the counter picks the second arc of the k-th doubleton.
    """
    doubles = M.unoriented
    arcs = M.digraph.arcs
    for mask in range(1 << len(doubles)):
        drop = set()
        for k, (i, j) in enumerate(doubles):
            drop.add(i if (mask >> k) & 1 else j)
        yield Digraph(M.n, tuple(a for idx, a in enumerate(arcs) if idx not in drop))


def enumerate_pairings(D: Digraph) -> Iterator[MixedGraph]:
    """Every way of pairing some mutually opposite arcs into unoriented edges."""
    arcs = D.arcs

    def rec(i: int, used: frozenset, blocks: Tuple[Tuple[int, ...], ...]):
        while i < D.m and i in used:
            i += 1
        if i == D.m:
            yield MixedGraph(D, blocks)
            return
        yield from rec(i + 1, used | {i}, blocks + ((i,),))
        u, v = arcs[i]
        for j in range(i + 1, D.m):
            if j not in used and arcs[j] == (v, u):
                yield from rec(i + 1, used | {i, j}, blocks + ((i, j),))

    yield from rec(0, frozenset(), ())


def enumerate_digraphs(n: int, m_max: int) -> Iterator[Digraph]:
    """All labeled digraphs on [n] with at most m_max arcs (loops and
    parallel arcs allowed), one per sorted arc multiset."""
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1)]
    for k in range(m_max + 1):
        for combo in itertools.combinations_with_replacement(pairs, k):
            yield Digraph(n, combo)


def linear_extensions(D: Digraph) -> List[Tuple[int, ...]]:
    """Orderings sigma (one-line notation) with every arc going forward, in lex order."""
    n = D.n
    pred_count = [0] * (n + 1)
    succ: List[List[int]] = [[] for _ in range(n + 1)]
    for u, v in D.arcs:
        if u == v:
            return []
        succ[u].append(v)
        pred_count[v] += 1
    out: List[Tuple[int, ...]] = []
    order: List[int] = []
    placed = [False] * (n + 1)

    def rec():
        if len(order) == n:
            out.append(tuple(order))
            return
        for v in range(1, n + 1):
            if not placed[v] and pred_count[v] == 0:
                placed[v] = True
                order.append(v)
                for w in succ[v]:
                    pred_count[w] -= 1
                rec()
                for w in succ[v]:
                    pred_count[w] += 1
                order.pop()
                placed[v] = False

    rec()
    return out


def is_forest(n: int, edges: Iterable[Arc]) -> bool:
    dsu = _DSU(n)
    return all(dsu.union(u, v) for u, v in edges)
