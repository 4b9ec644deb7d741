"""Homogeneous quasisymmetric functions and the quasisymmetric B-polynomial.

Elements live in one degree n and are stored in either the monomial basis
(keys are compositions of n) or the fundamental basis (keys are sorted
subsets of [n-1]). Coefficients are polynomials in y and z.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .bcore import b_poly, directed_cuts_by_size
from .digraph import (Digraph, Graph, MixedGraph, doubled, is_forest, linear_extensions, structure,
                      underlying)
from .errors import PreconditionError, WorkBoundExceeded
from .identities import _info, register, ternary_accumulate
from .poly import MultiPoly, substitute_homogeneous

Y, Z = MultiPoly.var("y"), MultiPoly.var("z")
QSYM_VERTEX_BOUND = 9

Key = Tuple[int, ...]


def compositions(n: int) -> Iterator[Key]:
    """Compositions of n in lexicographic order."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def composition_to_set(comp: Key) -> Key:
    """S(d) = partial sums d1, d1+d2, ... leaving out the total."""
    return tuple(itertools.accumulate(comp))[:-1]


def set_to_composition(S: Key, n: int) -> Key:
    cuts = (0,) + tuple(S) + (n,)
    return tuple(b - a for a, b in zip(cuts, cuts[1:]))


class QSymFunction:
    __slots__ = ("n", "basis", "coeffs")

    def __init__(self, n: int, basis: str, coeffs: Dict[Key, MultiPoly]):
        if basis not in ("M", "F"):
            raise ValueError("basis must be 'M' or 'F'")
        self.n = n
        self.basis = basis
        out = {}
        for key, c in coeffs.items():
            key = tuple(key)
            if basis == "M" and (sum(key) != n or any(k < 1 for k in key) or (n > 0 and not key)):
                raise ValueError(f"{key} is not a composition of {n}")
            if basis == "F" and (list(key) != sorted(set(key)) or any(not 1 <= k < n for k in key)):
                raise ValueError(f"{key} is not a subset of [{n - 1}]")
            c = MultiPoly.coerce(c)
            if not c.is_zero():
                out[key] = c
        self.coeffs = out

    @classmethod
    def basis_element(cls, n: int, basis: str, key: Iterable[int], coeff=1) -> "QSymFunction":
        return cls(n, basis, {tuple(key): MultiPoly.coerce(coeff)})

    def to_basis(self, target: str) -> "QSymFunction":
        return basis_change(self, target)

    def map_coeffs(self, fn: Callable[[MultiPoly], MultiPoly]) -> "QSymFunction":
        return QSymFunction(self.n, self.basis, {k: fn(c) for k, c in self.coeffs.items()})

    def coeff(self, key: Iterable[int]) -> MultiPoly:
        return self.coeffs.get(tuple(key), MultiPoly.const(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def _aligned(self, other: "QSymFunction") -> "QSymFunction":
        if not isinstance(other, QSymFunction):
            raise TypeError("expected a QSymFunction")
        if other.n != self.n:
            raise ValueError("degrees differ")
        return other.to_basis(self.basis)

    def __add__(self, other):
        other = self._aligned(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return QSymFunction(self.n, self.basis, out)

    def __neg__(self):
        return self.map_coeffs(lambda c: -c)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, QSymFunction):
            return qsym_product(self, scalar)
        return self.map_coeffs(lambda c: c * scalar)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, QSymFunction):
            return NotImplemented
        if self.n != other.n:
            return self.is_zero() and other.is_zero()
        a, b = self.to_basis("M"), other.to_basis("M")
        keys = set(a.coeffs) | set(b.coeffs)
        return all(a.coeff(k) == b.coeff(k) for k in keys)

    __hash__ = None

    def to_json_obj(self) -> dict:
        return {"n": self.n, "basis": self.basis,
                "coeffs": [{"key": list(k), "poly": self.coeffs[k].to_json_obj()}
                           for k in sorted(self.coeffs)]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "QSymFunction":
        return cls(obj["n"], obj["basis"],
                   {tuple(e["key"]): MultiPoly.from_json_obj(e["poly"]) for e in obj["coeffs"]})

    def pretty(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            label = (f"M({','.join(map(str, k))})" if self.basis == "M"
                     else f"F{self.n}{{{','.join(map(str, k))}}}")
            parts.append(f"({self.coeffs[k].pretty()})*{label}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"QSymFunction({self.pretty()})"


def basis_change(F: QSymFunction, target: str) -> QSymFunction:
    """Exact change between the monomial and fundamental bases."""
    if target not in ("M", "F"):
        raise ValueError("target must be 'M' or 'F'")
    if F.basis == target:
        return F
    n = F.n
    full = tuple(range(1, n))
    out: Dict[Key, MultiPoly] = {}
    for key, c in F.coeffs.items():
        if target == "F":
            # M_d = sum over R containing S(d) of (-1)^{|R - S(d)|} F_R
            base = set(composition_to_set(key))
            extra = [i for i in full if i not in base]
            for r in range(len(extra) + 1):
                for add in itertools.combinations(extra, r):
                    R = tuple(sorted(base | set(add)))
                    term = c if r % 2 == 0 else -c
                    out[R] = out[R] + term if R in out else term
        else:
            # F_S = sum over T containing S of M_{comp(T)}
            base = set(key)
            extra = [i for i in full if i not in base]
            for r in range(len(extra) + 1):
                for add in itertools.combinations(extra, r):
                    comp = set_to_composition(tuple(sorted(base | set(add))), n)
                    out[comp] = out[comp] + c if comp in out else c
    return QSymFunction(n, target, out)


def involution(F: QSymFunction, which: str) -> QSymFunction:
    """omega complements fundamental keys; rho reverses monomial keys. Result keeps F's basis."""
    if which == "omega":
        G = F.to_basis("F")
        full = set(range(1, F.n))
        out = QSymFunction(F.n, "F", {tuple(sorted(full - set(k))): c for k, c in G.coeffs.items()})
    elif which == "rho":
        G = F.to_basis("M")
        out = QSymFunction(F.n, "M", {tuple(reversed(k)): c for k, c in G.coeffs.items()})
    else:
        raise ValueError("which must be 'omega' or 'rho'")
    return out.to_basis(F.basis)


def _rising_over_factorial(base: MultiPoly, n: int) -> MultiPoly:
    """base (base+1) ... (base+n-1) / n!"""
    out = MultiPoly.const(1)
    for i in range(n):
        out = out * (base + i)
    f = 1
    for i in range(2, n + 1):
        f *= i
    return out * Fraction(1, f)


def principal_specialization(F: QSymFunction, var: str = "q") -> MultiPoly:
    """Image under x = 1^q: M_d with k parts goes to C(q, k), F_{n,S} to C(q - |S| + n - 1, n)."""
    q = MultiPoly.var(var)
    total = MultiPoly.const(0)
    for key, c in F.coeffs.items():
        if F.basis == "M":
            image = _rising_over_factorial(q - len(key) + 1, len(key))
        else:
            image = _rising_over_factorial(q - len(key), F.n)
        total = total + c * image
    return total


def _quasi_shuffles(a: Key, b: Key) -> Counter:
    @lru_cache(maxsize=None)
    def go(i: int, j: int) -> Counter:
        if i == len(a):
            return Counter({b[j:]: 1})
        if j == len(b):
            return Counter({a[i:]: 1})
        out: Counter = Counter()
        for w, c in go(i + 1, j).items():
            out[(a[i],) + w] += c
        for w, c in go(i, j + 1).items():
            out[(b[j],) + w] += c
        for w, c in go(i + 1, j + 1).items():
            out[(a[i] + b[j],) + w] += c
        return out
    return go(0, 0)


def qsym_product(F: QSymFunction, G: QSymFunction) -> QSymFunction:
    """Quasi-shuffle product, computed in the monomial basis."""
    A, B = F.to_basis("M"), G.to_basis("M")
    out: Dict[Key, MultiPoly] = {}
    for ka, ca in A.coeffs.items():
        for kb, cb in B.coeffs.items():
            prod = ca * cb
            for w, mult in _quasi_shuffles(ka, kb).items():
                term = prod * mult
                out[w] = out[w] + term if w in out else term
    return QSymFunction(F.n + G.n, "M", out)


# ---------------------------------------------------------------- quasisymmetric B

@lru_cache(maxsize=200000)
def _qsym_table(key) -> Dict[Key, Counter]:
    """composition -> Counter{(asc, desc): surjection count}, by a DP over coloured vertex sets."""
    n, arcs = key
    full = (1 << n) - 1
    bits = [(1 << (u - 1), 1 << (v - 1)) for u, v in arcs]

    @lru_cache(maxsize=None)
    def rest(done: int) -> Dict[Key, Counter]:
        if done == full:
            return {(): Counter({(0, 0): 1})}
        free = full & ~done
        out: Dict[Key, Counter] = {}
        block = free
        while block:
            a = d = 0
            for bu, bv in bits:
                if bu & done and bv & block:
                    a += 1
                elif bu & block and bv & done:
                    d += 1
            size = bin(block).count("1")
            for comp, counts in rest(done | block).items():
                slot = out.setdefault((size,) + comp, Counter())
                for (a2, d2), c in counts.items():
                    slot[(a + a2, d + d2)] += c
            block = (block - 1) & free
        return out

    return rest(0)


def _from_table(n: int, table: Dict[Key, Counter]) -> QSymFunction:
    return QSymFunction(n, "M", {comp: MultiPoly(("y", "z"), dict(counts)) for comp, counts in table.items()})


def qsym_b(D: Digraph, vertex_bound: int = QSYM_VERTEX_BOUND) -> QSymFunction:
    """B_D(x; y, z) in the monomial basis."""
    if isinstance(D, MixedGraph):
        D = D.digraph
    if D.n > vertex_bound:
        raise WorkBoundExceeded(f"n = {D.n} exceeds the vertex bound {vertex_bound}")
    return _from_table(D.n, _qsym_table((D.n, tuple(sorted(D.arcs)))))


def qsym_b_by_maps(D: Digraph) -> QSymFunction:
    """Oracle: filter all maps V -> [p] for surjectivity (n <= 6)."""
    if D.n > 6:
        raise WorkBoundExceeded("map enumeration is limited to n <= 6")
    table: Dict[Key, Counter] = {}
    for p in range(1, D.n + 1):
        for g in itertools.product(range(1, p + 1), repeat=D.n):
            sizes = Counter(g)
            if len(sizes) != p:
                continue
            comp = tuple(sizes[i] for i in range(1, p + 1))
            a = sum(1 for u, v in D.arcs if g[v - 1] > g[u - 1])
            d = sum(1 for u, v in D.arcs if g[v - 1] < g[u - 1])
            table.setdefault(comp, Counter())[(a, d)] += 1
    if D.n == 0:
        table[()] = Counter({(0, 0): 1})
    return _from_table(D.n, table)


def _asc_set(perm: Sequence[int]) -> Key:
    return tuple(i for i in range(1, len(perm)) if perm[i - 1] < perm[i])


def _inverse(perm: Sequence[int]) -> Tuple[int, ...]:
    inv = [0] * len(perm)
    for i, v in enumerate(perm, start=1):
        inv[v - 1] = i
    return tuple(inv)


def is_compatibly_labeled(D: Digraph) -> bool:
    return all(u < v for u, v in D.arcs)


def fundamental_contributions(D: Digraph) -> List[Tuple[Tuple[int, ...], Key, int]]:
    """(sigma, Asc(sigma^-1), |sigma_A^>|) for every permutation, in lex order."""
    out = []
    for sigma in itertools.permutations(range(1, D.n + 1)):
        ups = sum(1 for u, v in D.arcs if sigma[v - 1] > sigma[u - 1])
        out.append((sigma, _asc_set(_inverse(sigma)), ups))
    return out


def fundamental_b_acyclic(D: Digraph) -> QSymFunction:
    """B_D(x; y, 1) for a compatibly labeled acyclic digraph, as a sum over permutations."""
    if not is_compatibly_labeled(D):
        raise PreconditionError("every arc (u, v) must have u < v")
    out: Dict[Key, MultiPoly] = {}
    for _sigma, S, ups in fundamental_contributions(D):
        term = Y ** ups
        out[S] = out[S] + term if S in out else term
    return QSymFunction(D.n, "F", out)


# ---------------------------------------------------------------- derived functions

def chromatic_quasisym(D: Digraph) -> QSymFunction:
    """[z^|A|] B_D(x; yz, z): proper colourings weighted by ascents."""
    B = qsym_b(D)

    def extract(c: MultiPoly) -> MultiPoly:
        terms = {}
        for e, v in c.with_vars(("y", "z")).terms.items():
            if e[0] + e[1] == D.m:
                terms[(e[0],)] = v
        return MultiPoly(("y",), terms)
    return B.map_coeffs(extract)


def _colourings_by_composition(n: int, weight: Callable[[Tuple[int, ...]], Optional[MultiPoly]]
                               ) -> QSymFunction:
    """Sum of weight(g) M_{sizes(g)} over surjections g: [n] -> [p]."""
    out: Dict[Key, MultiPoly] = {}
    for p in range(1, n + 1):
        for g in itertools.product(range(1, p + 1), repeat=n):
            sizes = Counter(g)
            if len(sizes) != p:
                continue
            w = weight(g)
            if w is None:
                continue
            comp = tuple(sizes[i] for i in range(1, p + 1))
            out[comp] = out[comp] + w if comp in out else w
    return QSymFunction(n, "M", out)


def chromatic_quasisym_direct(D: Digraph) -> QSymFunction:
    """Oracle: enumerate proper colourings and count ascents."""
    def weight(g):
        if any(g[u - 1] == g[v - 1] for u, v in D.arcs):
            return None
        return Y ** sum(1 for u, v in D.arcs if g[v - 1] > g[u - 1])
    return _colourings_by_composition(D.n, weight)


def _graph_of(G) -> Graph:
    if isinstance(G, Graph):
        return G
    if isinstance(G, MixedGraph) and G.is_graph:
        return underlying(G)
    raise PreconditionError("the Tutte symmetric function takes an unoriented graph")


def tutte_symmetric(G) -> QSymFunction:
    """S_G(x; y) = (1+y)^|E| B_{->G}(x; 1/(1+y), 1)."""
    G = _graph_of(G)
    B = qsym_b(doubled(G).digraph)
    E = len(G.edges)
    one_plus = 1 + Y

    def convert(c: MultiPoly) -> MultiPoly:
        c1 = c.evaluate({"z": 1})
        total = MultiPoly.const(0)
        for k in range(max(c1.degree("y"), 0) + 1):
            coeff = c1.coeff("y", k)
            if coeff.is_zero():
                continue
            if k > E:
                raise PreconditionError("more ascents than edges")
            total = total + coeff * one_plus ** (E - k)
        return total
    return B.map_coeffs(convert)


def tutte_symmetric_direct(G) -> QSymFunction:
    """Oracle: sum over colourings of (1+y)^#monochromatic edges."""
    G = _graph_of(G)
    return _colourings_by_composition(
        G.n, lambda g: (1 + Y) ** sum(1 for u, v in G.edges if g[u - 1] == g[v - 1]))


def derived_qsym(G, kind: str) -> QSymFunction:
    if kind == "chromatic_quasisym":
        if isinstance(G, MixedGraph):
            G = G.digraph
        if not isinstance(G, Digraph):
            raise PreconditionError("chromatic_quasisym takes a digraph")
        return chromatic_quasisym(G)
    if kind == "tutte_symmetric":
        return tutte_symmetric(G)
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------- read-offs

@dataclass(frozen=True)
class QSymReadoff:
    degree_pairs: MultiPoly
    profile: Optional[Tuple[int, ...]]
    directed_cuts_by_size: Dict[int, int]

    def to_json_obj(self) -> dict:
        return {"degree_pairs": self.degree_pairs.to_json_obj(),
                "profile": list(self.profile) if self.profile is not None else None,
                "directed_cuts_by_size": {str(k): v for k, v in sorted(self.directed_cuts_by_size.items())}}


def qsym_readoff(F: QSymFunction, arc_count: int, acyclic: bool) -> QSymReadoff:
    """Degree pairs, profile and directed cuts by size, from B_D(x; y, z) alone.

    `arc_count` and `acyclic` are themselves recoverable from B (the y-degree
    of B(x; y, y) and the constant term of the strict part) and are passed in
    for clarity.
    """
    M = F.to_basis("M")
    n = M.n
    pairs = M.coeff((1, n - 1)).with_vars(("y", "z")) if n >= 2 else MultiPoly.const(0)
    profile = None
    if acyclic:
        best = None
        for comp, c in M.coeffs.items():
            top = c.evaluate({"z": 1}).coeff("y", arc_count) if arc_count else c.evaluate({"z": 1})
            if not top.is_zero() and (best is None or comp > best):
                best = comp
        profile = best
    cuts = {}
    for k in range(1, n):
        v = M.coeff((k, n - k)).evaluate({"y": 1, "z": 0}).constant_value()
        if v:
            cuts[k] = int(v)
    return QSymReadoff(pairs, profile, cuts)


def structural_qsym_readoff(D: Digraph) -> QSymReadoff:
    if D.n >= 2:
        terms: Dict[Tuple[int, int], int] = {}
        # loops are never ascents or descents, so they do not show up here
        proper = [(a, b) for a, b in D.arcs if a != b]
        for v in range(1, D.n + 1):
            out_deg = sum(1 for a, _ in proper if a == v)
            in_deg = sum(1 for _, b in proper if b == v)
            terms[(out_deg, in_deg)] = terms.get((out_deg, in_deg), 0) + 1
        pairs = MultiPoly(("y", "z"), terms)
    else:
        pairs = MultiPoly.const(0)
    s = structure(D)
    cuts = {k: c for k, c in directed_cuts_by_size(D).items() if 0 < k < D.n}
    return QSymReadoff(pairs, s.profile if s.is_acyclic else None, cuts)


# ---------------------------------------------------------------- checks

def _strict_qsym(key) -> Optional[Dict[Key, int]]:
    """chi^>_D(x) in the monomial basis: surjections with every arc ascending."""
    n, arcs = key
    table = _qsym_table((n, tuple(sorted(arcs))))
    m = len(arcs)
    out = {comp: counts[(m, 0)] for comp, counts in table.items() if counts.get((m, 0))}
    return out or None


def _weak_qsym(key) -> Optional[Dict[Key, int]]:
    """chi^>=_D(x) = B_D(x; 1, 0): surjections with no descent."""
    n, arcs = key
    table = _qsym_table((n, tuple(sorted(arcs))))
    out = {}
    for comp, counts in table.items():
        total = sum(c for (a, d), c in counts.items() if d == 0)
        if total:
            out[comp] = total
    return out or None


def _weak_qsym_if_acyclic(key) -> Optional[Dict[Key, int]]:
    n, arcs = key
    if not _info((n, tuple(arcs)))[0]:
        return None
    return _weak_qsym(key)


def _qsym_from_acc(n: int, acc: Dict[Tuple[int, int], Dict[Key, int]]) -> QSymFunction:
    per_comp: Dict[Key, Dict[Tuple[int, int], int]] = {}
    for st, vec in acc.items():
        for comp, c in vec.items():
            per_comp.setdefault(comp, {})[st] = c
    return QSymFunction(n, "M", {comp: MultiPoly(("y", "z"), t) for comp, t in per_comp.items()})


@lru_cache(maxsize=4096)
def _delete_sums(key) -> Dict[str, QSymFunction]:
    D = Digraph(*key)
    accs = ternary_accumulate(D, "delete", {"strict": _strict_qsym, "weak": _weak_qsym,
                                            "weak_acyclic": _weak_qsym_if_acyclic})
    return {name: _qsym_from_acc(D.n, acc) for name, acc in accs.items()}


def _shift(F: QSymFunction) -> QSymFunction:
    return F.map_coeffs(lambda c: c.subs({"y": 1 + Y, "z": 1 + Z}))


@register("delete-quasi", "digraph", arc_bound=8, module="quasisym")
def _delete_quasi(D: Digraph):
    return _delete_sums(D.key())["strict"], _shift(qsym_b(D))


@register("geq-delete-quasi", "digraph", arc_bound=8, module="quasisym")
def _geq_delete_quasi(D: Digraph):
    s = 1 + Y + Z
    rhs = qsym_b(D).map_coeffs(lambda c: substitute_homogeneous(c, {"y": 1 + Y, "z": 1 + Z}, s, D.m))
    return _delete_sums(D.key())["weak"], rhs


@register("q-1-quasi", "digraph", arc_bound=8, module="quasisym")
def _q_minus_one_quasi(D: Digraph):
    return _delete_sums(D.key())["weak_acyclic"], involution(_shift(qsym_b(D)), "omega")


@register("symmetry-acyclic-quasi", "digraph", applies=lambda D: _info(D.key())[0], module="quasisym")
def _symmetry_acyclic_quasi(D: Digraph):
    B1 = qsym_b(D).map_coeffs(lambda c: c.evaluate({"z": 1}).with_vars(("y",)))
    lhs = involution(B1, "omega")
    # y^|A| B(x; 1/y, 1)
    flipped = B1.map_coeffs(lambda c: substitute_homogeneous(c, {"y": 1}, Y, D.m))
    return lhs, involution(flipped, "rho")


def _underlying_forest(D: Digraph) -> bool:
    return is_forest(D.n, D.arcs)


@register("symmetry-forest-quasi", "digraph", applies=_underlying_forest, module="quasisym")
def _symmetry_forest_quasi(D: Digraph):
    B = qsym_b(D)
    rhs = B.map_coeffs(lambda c: substitute_homogeneous(c, {"y": Y, "z": Z}, Y + Z - 1, D.m))
    return involution(B, "omega"), rhs


@register("qsym-specialization", "digraph", module="quasisym")
def _qsym_specialization(D: Digraph):
    return principal_specialization(qsym_b(D)), b_poly(D)


@register("qsym-fundamental-specialization", "digraph", module="quasisym")
def _qsym_fundamental_specialization(D: Digraph):
    B = qsym_b(D)
    return principal_specialization(B.to_basis("F")), principal_specialization(B)


@register("qsym-oracle", "digraph", applies=lambda D: D.n <= 6, module="quasisym")
def _qsym_oracle(D: Digraph):
    return qsym_b(D), qsym_b_by_maps(D)


@register("qsym-rho", "digraph", module="quasisym")
def _qsym_rho(D: Digraph):
    B = qsym_b(D)
    return involution(B, "rho"), B.map_coeffs(lambda c: c.subs({"y": Z, "z": Y}))


@register("qsym-reverse", "digraph", module="quasisym")
def _qsym_reverse(D: Digraph):
    return qsym_b(D.reversed()), qsym_b(D).map_coeffs(lambda c: c.subs({"y": Z, "z": Y}))


@register("qsym-fundamental-acyclic", "digraph",
          applies=lambda D: is_compatibly_labeled(D), module="quasisym")
def _qsym_fundamental_acyclic(D: Digraph):
    rhs = qsym_b(D).map_coeffs(lambda c: c.evaluate({"z": 1}).with_vars(("y",))).to_basis("F")
    return fundamental_b_acyclic(D), rhs


@register("qsym-chromatic", "digraph", module="quasisym")
def _qsym_chromatic(D: Digraph):
    return chromatic_quasisym(D), chromatic_quasisym_direct(D)


@register("qsym-tutte", "graph", module="quasisym")
def _qsym_tutte(M: MixedGraph):
    return tutte_symmetric(M), tutte_symmetric_direct(M)


@register("qsym-bijections", "digraph", module="quasisym")
def _qsym_bijections(D: Digraph):
    """[M_{1^n}] B_D(x; y, z) against the sum over bijections V -> [n]."""
    terms: Dict[Tuple[int, int], int] = {}
    for f in itertools.permutations(range(1, D.n + 1)):
        a = sum(1 for u, v in D.arcs if f[v - 1] > f[u - 1])
        d = sum(1 for u, v in D.arcs if f[v - 1] < f[u - 1])
        terms[(a, d)] = terms.get((a, d), 0) + 1
    return qsym_b(D).coeff((1,) * D.n).with_vars(("y", "z")), MultiPoly(("y", "z"), terms)


@register("qsym-disjoint-union", "digraph",
          instances=lambda D: ({"split": k} for k in range(1, D.n)), module="quasisym")
def _qsym_disjoint_union(D: Digraph, split):
    """If no arc crosses between [1..split] and the rest, B is the product of the two parts."""
    left = [(u, v) for u, v in D.arcs if u <= split and v <= split]
    right = [(u - split, v - split) for u, v in D.arcs if u > split and v > split]
    if len(left) + len(right) != D.m:
        return MultiPoly.const(0), MultiPoly.const(0)
    lhs = qsym_b(D)
    return lhs, qsym_product(qsym_b(Digraph(split, tuple(left))), qsym_b(Digraph(D.n - split, tuple(right))))


@register("qsym-readoff", "digraph", module="quasisym")
def _qsym_readoff(D: Digraph):
    info = _info(D.key())
    return qsym_readoff(qsym_b(D), D.m, info[0]), structural_qsym_readoff(D)


def _colour_vars(n: int) -> Tuple[str, ...]:
    return tuple(f"c{i}" for i in range(1, n + 1))


def p_partitions(D: Digraph, colours: int) -> Counter:
    """D-partitions f: [n] -> [colours]."""
    out: Counter = Counter()
    for f in itertools.product(range(1, colours + 1), repeat=D.n):
        ok = True
        for u, v in D.arcs:
            if f[u - 1] > f[v - 1] or (u < v and f[u - 1] == f[v - 1]):
                ok = False
                break
        if ok:
            out[f] += 1
    return out


def sigma_partitions(sigma: Sequence[int], colours: int) -> Counter:
    """P_sigma truncated to colours in [colours]."""
    out: Counter = Counter()
    n = len(sigma)
    for f in itertools.product(range(1, colours + 1), repeat=n):
        ok = True
        for i in range(n - 1):
            a, b = f[sigma[i] - 1], f[sigma[i + 1] - 1]
            if a > b or (sigma[i] < sigma[i + 1] and a == b):
                ok = False
                break
        if ok:
            out[f] += 1
    return out


def _colouring_poly(n: int, multiset: Counter) -> MultiPoly:
    return MultiPoly(_colour_vars(n), dict(multiset))


def _p_partition_applies(D: Digraph) -> bool:
    # a loop imposes no D-partition condition but kills every linear extension
    return D.n <= 4 and all(u != v for u, v in D.arcs)


@register("p-partition", "digraph", applies=_p_partition_applies, module="quasisym")
def _p_partition(D: Digraph):
    """The D-partitions into [n] colours as a disjoint union over linear extensions."""
    lhs = p_partitions(D, D.n)
    rhs: Counter = Counter()
    for sigma in linear_extensions(D):
        rhs.update(sigma_partitions(sigma, D.n))
    return _colouring_poly(D.n, lhs), _colouring_poly(D.n, rhs)


# Shareshian-Wachs

def transitive_closure(n: int, pairs: Iterable[Tuple[int, int]]) -> frozenset:
    rel = set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return frozenset(rel)


def validate_order(n: int, order: Iterable[Tuple[int, int]]) -> frozenset:
    rel = transitive_closure(n, (tuple(p) for p in order))
    if any(a == b for a, b in rel) or any((b, a) in rel for a, b in rel):
        raise PreconditionError("the relation is not a strict partial order")
    return rel


def _sw_applies(D: Digraph) -> bool:
    return (is_compatibly_labeled(D) and len(set(D.arcs)) == D.m
            and all(u != v for u, v in D.arcs))


def incomparability_orders(D: Digraph) -> List[Tuple[Tuple[int, int], ...]]:
    """Strict partial orders whose incomparable pairs are exactly the arcs of D."""
    edges = {frozenset(a) for a in D.arcs}
    others = [(u, v) for u, v in itertools.combinations(range(1, D.n + 1), 2) if frozenset((u, v)) not in edges]
    found = []
    for flips in itertools.product((False, True), repeat=len(others)):
        rel = {(v, u) if f else (u, v) for (u, v), f in zip(others, flips)}
        if transitive_closure(D.n, rel) == frozenset(rel):
            found.append(tuple(sorted(rel)))
    return found


def shareshian_wachs_contributions(D: Digraph, order) -> List[Tuple[Tuple[int, ...], Key, int]]:
    """(sigma, Asc_prec(sigma^-1), |sigma_A^>|) for every permutation, in lex order."""
    rel = validate_order(D.n, order)
    out = []
    for sigma in itertools.permutations(range(1, D.n + 1)):
        inv = _inverse(sigma)
        S = tuple(i for i in range(1, D.n) if (inv[i - 1], inv[i]) in rel)
        ups = sum(1 for u, v in D.arcs if sigma[v - 1] > sigma[u - 1])
        out.append((sigma, S, ups))
    return out


def shareshian_wachs_rhs(D: Digraph, order) -> QSymFunction:
    """sum over sigma of F_{n, Asc_prec(sigma^-1)} y^{|sigma_A^>|}."""
    out: Dict[Key, MultiPoly] = {}
    for _sigma, S, ups in shareshian_wachs_contributions(D, order):
        term = Y ** ups
        out[S] = out[S] + term if S in out else term
    return QSymFunction(D.n, "F", out)


@register("shareshian-wachs", "digraph", applies=_sw_applies, module="quasisym",
          instances=lambda D: ({"order": [list(p) for p in o]} for o in incomparability_orders(D)))
def _shareshian_wachs(D: Digraph, order):
    rel = validate_order(D.n, [tuple(p) for p in order])
    incomparable = {frozenset((u, v)) for u, v in itertools.combinations(range(1, D.n + 1), 2)
                    if (u, v) not in rel and (v, u) not in rel}
    if incomparable != {frozenset(a) for a in D.arcs}:
        raise PreconditionError("arcs must be exactly the incomparable pairs of the order")
    return involution(chromatic_quasisym(D), "omega"), shareshian_wachs_rhs(D, order)
