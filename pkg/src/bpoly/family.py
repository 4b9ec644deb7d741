"""The B^(m) family and its sign-word specializations B^w.

B^(m) is pinned down by colour counts at q = m*p + 1: each arc falls into
one of 2m+1 bands according to the colour difference along it. We count
colourings with numpy, interpolate in q, and keep two extra sample points
as a guard on the assumed q-degree bound |V|.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gcd
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .bcore import b_binomial, potts_poly
from .digraph import Digraph, MixedGraph, component_count, enumerate_orientations, underlying
from .errors import FamilyDegreeError, ParseError, PreconditionError, WorkBoundExceeded
from .identities import (BINARY_ARC_BOUND, TERNARY_ARC_BOUND, _accumulated, _expansion_rhs, _info,
                         register, ternary_accumulate, ternary_sums)
from .poly import MultiPoly, QBinomial

Q, Y, Z = (MultiPoly.var(v) for v in "qyz")
DEFAULT_WORK_BOUND = 5 * 10 ** 7
SURVEY_WORDS = ("+", "-", "++", "+-", "-+", "--")


@dataclass(frozen=True)
class SignWord:
    letters: Tuple[int, ...]

    def __post_init__(self):
        if not self.letters or any(x not in (1, -1) for x in self.letters):
            raise ParseError("a sign word is a nonempty sequence over {+1, -1}")

    @classmethod
    def parse(cls, text) -> "SignWord":
        if isinstance(text, SignWord):
            return text
        if isinstance(text, str):
            table = {"+": 1, "-": -1, "−": -1}
            try:
                return cls(tuple(table[ch] for ch in text.strip()))
            except KeyError:
                raise ParseError(f"bad sign word {text!r}; use characters + and -") from None
        return cls(tuple(int(x) for x in text))

    @property
    def m(self) -> int:
        return len(self.letters)

    def is_antipalindromic(self) -> bool:
        w = self.letters
        return all(w[len(w) - 1 - k] == -w[k] for k in range(len(w)))

    def negated(self) -> "SignWord":
        return SignWord(tuple(-x for x in self.letters))

    def __str__(self) -> str:
        return "".join("+" if x > 0 else "-" for x in self.letters)


def _sorted_key(D: Digraph):
    # B^(m) depends only on the multiset of arcs
    return (D.n, tuple(sorted(D.arcs)))


def family_vars(m: int) -> Tuple[str, ...]:
    return tuple(f"y{k}" for k in range(1, m + 1)) + tuple(f"z{k}" for k in range(1, m + 1))


def _colorings(n: int, q: int) -> np.ndarray:
    """All maps [n] -> [0, q) as rows."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.indices((q,) * n, dtype=np.int64).reshape(n, -1).T


def _band_counts(D: Digraph, m: int, p: int, work_bound: int) -> Dict[Tuple[int, ...], int]:
    """exponent vector over (y1..ym, z1..zm) -> number of (mp+1)-colourings."""
    q = m * p + 1
    if q ** D.n * max(D.m, 1) > work_bound:
        raise WorkBoundExceeded(f"{q}^{D.n} colourings exceed the work bound {work_bound}")
    cols = _colorings(D.n, q)
    base = D.m + 1
    if base ** (2 * m) >= 2 ** 62:
        raise WorkBoundExceeded("too many arcs to encode band statistics")
    codes = np.zeros(len(cols), dtype=np.int64)
    for u, v in D.arcs:
        diff = cols[:, v - 1] - cols[:, u - 1]
        if p == 0:
            continue
        band = -(-np.abs(diff) // p)  # ceil(|diff| / p), 0 only for diff = 0
        slot = np.where(diff > 0, band - 1, m + band - 1)
        codes += np.where(diff != 0, base ** slot, 0)
    uniq, counts = np.unique(codes, return_counts=True)
    out = {}
    for code, cnt in zip(uniq.tolist(), counts.tolist()):
        exps = []
        for _ in range(2 * m):
            code, r = divmod(code, base)
            exps.append(r)
        out[tuple(exps)] = cnt
    return out


def b_m_eval(D: Digraph, m: int, p: int, work_bound: int = DEFAULT_WORK_BOUND) -> MultiPoly:
    """B^(m) at q = m*p + 1 by enumerating colourings, as a polynomial in y_k, z_k."""
    if m < 1 or p < 0:
        raise PreconditionError("need m >= 1 and p >= 0")
    counts = _band_counts(D, m, p, work_bound)
    return MultiPoly(family_vars(m), counts)


@lru_cache(maxsize=64)
def _binomial_to_q(m: int, n: int) -> Tuple[int, List[List[int]]]:
    """(L, rows) with C((q-1)/m, k) = sum_j rows[k][j] q^j / L for k <= n."""
    L = m ** n * factorial(n)
    rows = []
    poly = [1]
    for k in range(n + 1):
        scale = L // (m ** k * factorial(k))
        rows.append([c * scale for c in poly] + [0] * (n - k))
        # multiply by (q - 1 - m*k)
        nxt = [0] * (len(poly) + 1)
        for j, c in enumerate(poly):
            nxt[j + 1] += c
            nxt[j] -= (1 + m * k) * c
        poly = nxt
    return L, rows


def _forward_differences(values: List[int]) -> List[int]:
    out = []
    vals = list(values)
    while vals:
        out.append(vals[0])
        vals = [b - a for a, b in zip(vals, vals[1:])]
    return out


def _newton_at(diffs: Sequence[int], p: int) -> int:
    return sum(d * comb(p, k) for k, d in enumerate(diffs))


@lru_cache(maxsize=400000)
def _b_m_cached(key, m: int, work_bound: int) -> MultiPoly:
    n, arcs = key
    D = Digraph(n, arcs)
    samples = [_band_counts(D, m, p, work_bound) for p in range(n + 3)]
    monos = set().union(*samples)
    L, rows = _binomial_to_q(m, n)
    terms = {}
    for e in monos:
        vals = [sample.get(e, 0) for sample in samples]
        diffs = _forward_differences(vals[:n + 1])
        for p in (n + 1, n + 2):
            if _newton_at(diffs, p) != vals[p]:
                raise FamilyDegreeError(
                    f"degree-{n} interpolant of B^({m}) misses the count at q = {m * p + 1} for exponents {e}")
        for j in range(n + 1):
            c = sum(d * rows[k][j] for k, d in enumerate(diffs) if d)
            if c:
                terms[(j,) + e] = Fraction(c, L)
    return MultiPoly(("q",) + family_vars(m), terms)


def b_m(D: Digraph, m: int, work_bound: int = DEFAULT_WORK_BOUND) -> MultiPoly:
    """B^(m)_D(q; y_1..y_m; z_1..z_m), interpolated with degree |V| and checked at two extra points."""
    if isinstance(D, MixedGraph):
        D = D.digraph
    if m < 1:
        raise PreconditionError("m must be positive")
    return _b_m_cached(_sorted_key(D), m, work_bound)


@lru_cache(maxsize=400000)
def _b_w_cached(key, letters: Tuple[int, ...], work_bound: int) -> MultiPoly:
    m = len(letters)
    full = _b_m_cached(key, m, work_bound)
    terms: Dict[Tuple[int, int, int], Fraction] = {}
    for e, c in full.terms.items():
        up, down = e[1:m + 1], e[m + 1:]
        y = sum(a if w > 0 else b for w, a, b in zip(letters, up, down))
        z = sum(b if w > 0 else a for w, a, b in zip(letters, up, down))
        k = (e[0], y, z)
        terms[k] = terms.get(k, 0) + c
    return MultiPoly(("q", "y", "z"), terms)


def b_w(D: Digraph, w, work_bound: int = DEFAULT_WORK_BOUND) -> MultiPoly:
    """B^w_D(q, y, z): y_k, z_k go to y, z when w_k = +1 and to z, y when w_k = -1."""
    if isinstance(D, MixedGraph):
        D = D.digraph
    w = SignWord.parse(w)
    return _b_w_cached(_sorted_key(D), w.letters, work_bound)


def _spanning_forest(D: Digraph) -> Tuple[List[int], List[Tuple[int, int, int]]]:
    """Roots, and (arc index, parent, child) in an order where parents come first."""
    adj: Dict[int, List[Tuple[int, int]]] = {v: [] for v in range(1, D.n + 1)}
    for i, (u, v) in enumerate(D.arcs):
        if u != v:
            adj[u].append((v, i))
            adj[v].append((u, i))
    seen = set()
    roots, tree = [], []
    for r in range(1, D.n + 1):
        if r in seen:
            continue
        roots.append(r)
        seen.add(r)
        queue = [r]
        for x in queue:
            for nb, i in adj[x]:
                if nb not in seen:
                    seen.add(nb)
                    tree.append((i, x, nb))
                    queue.append(nb)
    return roots, tree


def coflow_eval(D: Digraph, w, p: int, work_bound: int = DEFAULT_WORK_BOUND) -> MultiPoly:
    """(mp+1)^c(D) times the banded sum over (mp+1)-coflows, for antipalindromic w.

    Coflows are generated by free values on the arcs of a spanning forest;
    the values on the other arcs follow from the potentials they induce.
    """
    w = SignWord.parse(w)
    if not w.is_antipalindromic():
        raise PreconditionError(f"coflow evaluation needs an antipalindromic word, got {w}")
    if p < 0:
        raise PreconditionError("p must be nonnegative")
    m = w.m
    q = m * p + 1
    roots, tree = _spanning_forest(D)
    free = len(tree)
    if q ** free * max(D.m, 1) > work_bound:
        raise WorkBoundExceeded(f"{q}^{free} coflows exceed the work bound {work_bound}")
    values = _colorings(free, q)
    pot = np.zeros((len(values), D.n + 1), dtype=np.int64)
    for col, (i, parent, child) in enumerate(tree):
        u, v = D.arcs[i]
        step = values[:, col] if (u, v) == (parent, child) else -values[:, col]
        pot[:, child] = pot[:, parent] + step
    base = D.m + 1
    codes = np.zeros(len(values), dtype=np.int64)
    letters = np.array(w.letters)
    for u, v in D.arcs:
        r = (pot[:, v] - pot[:, u]) % q
        if p == 0:
            continue
        band = np.maximum(-(-r // p), 1)  # residue (k-1)p + s with s in [1, p] sits in band k
        positive = letters[band - 1] > 0
        codes += np.where(r == 0, 0, np.where(positive, 1, base))
    uniq, counts = np.unique(codes, return_counts=True)
    scale = q ** len(roots)
    terms = {}
    for code, cnt in zip(uniq.tolist(), counts.tolist()):
        z, y = divmod(code, base)
        terms[(y, z)] = cnt * scale
    return MultiPoly(("y", "z"), terms)


def w_strict_chromatic(D: Digraph, w) -> MultiPoly:
    """chi^{>w}(q) = [y^|A|] B^w(q, y, 1)."""
    B = b_w(D, w).evaluate({"z": 1})
    return B.coeff("y", D.m).with_vars(("q",)) if D.m else B.with_vars(("q",))


def w_weak_chromatic(D: Digraph, w) -> MultiPoly:
    """chi^{>=w}(q) = B^w(q, 0, 1)."""
    return b_w(D, w).evaluate({"y": 0, "z": 1}).with_vars(("q",))


# ---------------------------------------------------------------- checks

def _words(D) -> List[dict]:
    return [{"word": w} for w in SURVEY_WORDS]


def _antipalindromic_words(D) -> List[dict]:
    return [{"word": w} for w in SURVEY_WORDS if SignWord.parse(w).is_antipalindromic()]


@register("potts-one-w", "graph", instances=_words, module="family")
def _potts_one_w(M: MixedGraph, word):
    return b_w(M.digraph, word), potts_poly(underlying(M)).subs({"y": Y * Z})


@register("potts-two-w", "graph", instances=_words, arc_bound=2 * BINARY_ARC_BOUND, module="family")
def _potts_two_w(M: MixedGraph, word):
    total = MultiPoly.const(0)
    for O in enumerate_orientations(M):
        total = total + b_w(O, word)
    lhs = total * Fraction(1, 2 ** M.edge_count)
    return lhs, potts_poly(underlying(M)).subs({"y": (Y + Z) * Fraction(1, 2)})


@register("potts-three-w", "digraph", instances=_words, module="family")
def _potts_three_w(D: Digraph, word):
    return b_w(D, word).subs({"z": Y}), potts_poly(underlying(D))


def _chi_w_at(D: Digraph, words: Tuple[Tuple[int, ...], ...], p: int) -> List[Tuple[int, int]]:
    """(strict, weak) colouring counts at q = mp + 1 for each word: every arc scores y, or none does."""
    m = len(words[0])
    cols = _colorings(D.n, m * p + 1)
    if p == 0:
        return [(0 if D.m else 1, 1)] * len(words)
    diffs = [cols[:, v - 1] - cols[:, u - 1] for u, v in D.arcs]
    bands = [np.maximum(-(-np.abs(d) // p), 1) - 1 for d in diffs]
    out = []
    for letters in words:
        signs = np.array(letters) > 0
        all_y = np.ones(len(cols), dtype=bool)
        no_y = np.ones(len(cols), dtype=bool)
        for d, b in zip(diffs, bands):
            # an ascent in band k scores y when w_k = +1, a descent when w_k = -1
            plus = signs[b]
            scores_y = ((d > 0) & plus) | ((d < 0) & ~plus)
            all_y &= scores_y
            no_y &= ~scores_y
        out.append((int(all_y.sum()), int(no_y.sum())))
    return out


@lru_cache(maxsize=400000)
def _chi_w_sorted(key, words: Tuple[Tuple[int, ...], ...]) -> Dict[Tuple[int, ...], Dict[str, Optional[Tuple]]]:
    """chi^{>w} and chi^{>=w} in the basis C(q, k) for words of one length, by direct counting.

    Sampled at q = mp + 1 for p = 0..n only; the expansion checks compare the
    result against the degree-guarded B^w, so a wrong degree shows up there.
    """
    n, arcs = key
    D = Digraph(n, arcs)
    m = len(words[0])
    samples = [_chi_w_at(D, words, p) for p in range(n + 1)]
    L, rows = _binomial_to_q(m, n)
    out = {}
    for w_idx, letters in enumerate(words):
        out[letters] = {}
        for idx, kind in enumerate(("strict", "weak")):
            diffs = _forward_differences([s[w_idx][idx] for s in samples])
            coeffs = [Fraction(sum(d * rows[k][j] for k, d in enumerate(diffs)), L) for j in range(n + 1)]
            values = []
            for q in range(n + 1):
                total = Fraction(0)
                for c in reversed(coeffs):
                    total = total * q + c
                values.append(total)
            # counts only at q = 1 mod m, so values elsewhere may be fractional
            qdiffs = [v.numerator if v.denominator == 1 else v for v in _forward_differences(values)]
            out[letters][kind] = tuple(qdiffs) if any(qdiffs) else None
    return out


_SURVEY_LETTERS = tuple(SignWord.parse(w).letters for w in SURVEY_WORDS)


def _chi_w_counts(key, letters, kind) -> Optional[Tuple]:
    words = tuple(w for w in _SURVEY_LETTERS if len(w) == len(letters))
    if letters not in words:
        words = (letters,)
    return _chi_w_sorted((key[0], tuple(sorted(key[1]))), words)[letters][kind]


def _survey_scale(n: int) -> int:
    """A common denominator for chi^w values at q = 0..n' over survey words, for n' <= n."""
    S = 1
    for m in {len(w) for w in _SURVEY_LETTERS}:
        L = m ** n * factorial(n)
        S = S * L // gcd(S, L)
    return S


@lru_cache(maxsize=400000)
def _chi_w_survey(key, n: int) -> np.ndarray:
    """Every survey word's chi^{>w}, chi^{>=w} scaled by _survey_scale(n), flattened
    as (word, kind, k) with k <= n."""
    sk = (key[0], tuple(sorted(key[1])))
    S = _survey_scale(n)
    out = np.zeros(len(_SURVEY_LETTERS) * 2 * (n + 1), dtype=np.int64)
    for m in sorted({len(w) for w in _SURVEY_LETTERS}):
        words = tuple(w for w in _SURVEY_LETTERS if len(w) == m)
        table = _chi_w_sorted(sk, words)
        for letters in words:
            base = _SURVEY_LETTERS.index(letters) * 2
            for idx, kind in enumerate(("strict", "weak")):
                for k, c in enumerate(table[letters][kind] or ()):
                    scaled = c * S
                    if scaled != int(scaled):
                        raise FamilyDegreeError(f"chi^{kind} values for w = {letters} are not in (1/{S})Z")
                    out[(base + idx) * (n + 1) + k] = int(scaled)
    return out


def _expansion_w_sides(D: Digraph) -> Dict[Tuple[str, int], Tuple[QBinomial, QBinomial]]:
    """Both sides of the four w-expansions for every survey word, from one pass per mode."""
    n = D.n
    S = _survey_scale(n)
    sums = {}
    for mode in ("delete", "contract"):
        acc = ternary_accumulate(D, mode, {"": lambda key: _chi_w_survey(key, n)})[""]
        for w_idx, word in enumerate(SURVEY_WORDS):
            for idx, kind in enumerate(("strict", "weak")):
                lo = (w_idx * 2 + idx) * (n + 1)
                part = {st: {k: Fraction(int(c), S) for k, c in enumerate(vec[lo:lo + n + 1]) if c}
                        for st, vec in acc.items()}
                sums[(mode, word, kind)] = _accumulated(part)
    out = {}
    for word in SURVEY_WORDS:
        B = QBinomial.from_poly(b_w(D, word))
        lhs = {1: sums[("delete", word, "strict")], 2: sums[("delete", word, "weak")],
               3: sums[("contract", word, "strict")], 4: sums[("contract", word, "weak")]}
        for v in (1, 2, 3, 4):
            out[(word, v)] = (lhs[v], _expansion_rhs(B, v, D.m))
    return out


@lru_cache(maxsize=256)
def _expansion_w_cached(key):
    return _expansion_w_sides(Digraph(*key))


def _expansion_w_single(D: Digraph, letters, variant: int):
    kind = "strict" if variant in (1, 3) else "weak"
    mode = "delete" if variant in (1, 2) else "contract"
    lhs = ternary_sums(D, mode, {"": lambda key: _chi_w_counts(key, letters, kind)})[""]
    return lhs, _expansion_rhs(QBinomial.from_poly(b_w(D, letters)), variant, D.m)


def _make_expansion_w(variant: int):
    @register(f"expansions-w-{variant}", "digraph", instances=_words, arc_bound=TERNARY_ARC_BOUND,
              module="family")
    def _check(D: Digraph, word):
        if word not in SURVEY_WORDS:
            letters = SignWord.parse(word).letters
            return _expansion_w_single(D, letters, variant)
        return _expansion_w_cached(D.key())[(word, variant)]
    return _check


for _variant in (1, 2, 3, 4):
    _make_expansion_w(_variant)


@register("coflow-w", "digraph", module="family",
          instances=lambda D: [{"word": w, "p": p} for w in SURVEY_WORDS
                               if SignWord.parse(w).is_antipalindromic() for p in (1, 2)])
def _coflow_w(D: Digraph, word, p):
    q = SignWord.parse(word).m * p + 1
    return coflow_eval(D, word, p), b_w(D, word).evaluate({"q": q}).with_vars(("y", "z"))


@register("family-m1", "digraph", module="family")
def _family_m1(D: Digraph):
    return b_m(D, 1).subs({"y1": Y, "z1": Z}), b_binomial(D).to_multipoly()


@register("family-collapse", "digraph", module="family", instances=lambda D: [{"m": 2}])
def _family_collapse(D: Digraph, m):
    sub = {}
    for k in range(1, m + 1):
        sub[f"y{k}"] = Y
        sub[f"z{k}"] = Z
    return b_m(D, m).subs(sub), b_binomial(D).to_multipoly()


@register("family-word-collapse", "digraph", module="family",
          instances=lambda D: [{"word": "++"}, {"word": "-"}])
def _family_word_collapse(D: Digraph, word):
    return b_w(D, word), b_binomial(D).to_multipoly()


@register("family-unit", "digraph", instances=_words, module="family")
def _family_unit(D: Digraph, word):
    return b_w(D, word).evaluate({"y": 1, "z": 1}).with_vars(("q",)), Q ** D.n


@register("family-swap", "digraph", instances=_words, module="family")
def _family_swap(D: Digraph, word):
    negated = str(SignWord.parse(word).negated())
    return b_w(D, word).subs({"y": Z, "z": Y}), b_w(D, negated)


@register("family-divisible", "digraph", instances=_antipalindromic_words, module="family")
def _family_divisible(D: Digraph, word):
    """B^w equals its part of q-degree >= c(D), so q^c(D) divides it."""
    B = b_w(D, word)
    c = _info(D.key())[2]
    high = MultiPoly._raw(B.vars, {e: v for e, v in B.terms.items() if e[0] >= c})
    return B, high


def tree_orientation_values(n_edges_tree: Sequence[Tuple[int, int]], n: int, w) -> List[MultiPoly]:
    """q^{-1} B^w over every orientation of a tree on [n]."""
    w = SignWord.parse(w)
    out = []
    for flips in itertools.product((False, True), repeat=len(n_edges_tree)):
        arcs = tuple((v, u) if f else (u, v) for (u, v), f in zip(n_edges_tree, flips))
        D = Digraph(n, arcs)
        c = component_count(n, arcs)
        out.append(b_w(D, w) / Q ** c)
    return out
