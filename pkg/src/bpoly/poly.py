"""Exact multivariate polynomials over the rationals.

Terms live in a dict mapping dense exponent tuples to int or Fraction
coefficients. Variables are kept in a canonical order (q, y, z, x, then
indexed families such as y1, y2, z1, z2, then anything else alphabetically),
so two polynomials built in different ways print and serialise identically.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from math import comb, factorial
from numbers import Rational
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

from .errors import NonzeroRemainder, ParseError

Number = Union[int, Fraction]
Exps = Tuple[int, ...]

_BASE = {"q": 0, "y": 1, "z": 2, "x": 3}
_INDEXED = re.compile(r"([A-Za-z]+)(\d+)$")


def var_key(name: str):
    if name in _BASE:
        return (0, _BASE[name], 0, "")
    m = _INDEXED.match(name)
    if m:
        return (1, _BASE.get(m.group(1), 9), int(m.group(2)), m.group(1))
    return (2, 0, 0, name)


def _norm(c) -> Number:
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        return _norm(Fraction(c.numerator, c.denominator))
    raise TypeError(f"unsupported coefficient {c!r}")


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str] = (), terms: Mapping[Exps, Number] | None = None):
        vs = tuple(vars)
        if list(vs) != sorted(vs, key=var_key) or len(set(vs)) != len(vs):
            order = tuple(sorted(set(vs), key=var_key))
            terms = _merge_dupes(vs, order, terms or {})
            vs = order
        self.vars: Tuple[str, ...] = vs
        out: Dict[Exps, Number] = {}
        for e, c in (terms or {}).items():
            c = _norm(c)
            if c:
                e = tuple(e)
                if len(e) != len(vs):
                    raise ValueError("exponent length does not match variables")
                out[e] = c
        self.terms = out

    # constructors
    @classmethod
    def const(cls, c: Number) -> "MultiPoly":
        return cls((), {(): c})

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls((name,), {(1,): 1})

    @classmethod
    def _raw(cls, vars: Tuple[str, ...], terms: Dict[Exps, Number]) -> "MultiPoly":
        p = cls.__new__(cls)
        p.vars = vars
        p.terms = terms
        return p

    # alignment
    def _lift(self, vars: Tuple[str, ...]) -> Dict[Exps, Number]:
        if vars == self.vars:
            return self.terms
        pos = [vars.index(v) for v in self.vars]
        k = len(vars)
        out = {}
        for e, c in self.terms.items():
            full = [0] * k
            for i, x in zip(pos, e):
                full[i] = x
            out[tuple(full)] = c
        return out

    @staticmethod
    def _union(a: Tuple[str, ...], b: Tuple[str, ...]) -> Tuple[str, ...]:
        if a == b:
            return a
        return tuple(sorted(set(a) | set(b), key=var_key))

    def with_vars(self, vars: Iterable[str]) -> "MultiPoly":
        vs = self._union(self.vars, tuple(vars))
        return MultiPoly._raw(vs, self._lift(vs))

    def trimmed(self) -> "MultiPoly":
        used = [i for i in range(len(self.vars)) if any(e[i] for e in self.terms)]
        if len(used) == len(self.vars):
            return self
        return MultiPoly._raw(tuple(self.vars[i] for i in used),
                              {tuple(e[i] for i in used): c for e, c in self.terms.items()})

    # arithmetic
    @staticmethod
    def coerce(other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.const(other)

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = MultiPoly.const(other)
        vs = self._union(self.vars, other.vars)
        out = dict(self._lift(vs))
        for e, c in other._lift(vs).items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s if type(s) is int else _norm(s)
            else:
                out.pop(e, None)
        return MultiPoly._raw(vs, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (MultiPoly, int, Fraction)):
            return NotImplemented
        return self + (-MultiPoly.coerce(other))

    def __rsub__(self, other):
        return MultiPoly.coerce(other) + (-self)

    def __mul__(self, other):
        if type(other) is not MultiPoly and isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly._raw(self.vars, {})
            return MultiPoly._raw(self.vars, {e: _norm(c * other) for e, c in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        vs = self._union(self.vars, other.vars)
        a, b = self._lift(vs), other._lift(vs)
        if len(a) < len(b):
            a, b = b, a
        out: Dict[Exps, Number] = {}
        get = out.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(map(int.__add__, e1, e2))
                out[e] = get(e, 0) + c1 * c2
        return MultiPoly._raw(vs, {e: c if type(c) is int else _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            t = other.trimmed()
            if t.vars:
                return exact_divide(self, other)
            other = t.terms.get((), 0)
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self * (Fraction(1) / other)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result = MultiPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self.trimmed(), other.trimmed()
        return a.vars == b.vars and a.terms == b.terms

    def __hash__(self):
        t = self.trimmed()
        return hash((t.vars, frozenset(t.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MultiPoly({self.pretty()})"

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def constant_value(self) -> Number:
        t = self.trimmed()
        if t.vars:
            raise ValueError("polynomial is not constant")
        return t.terms.get((), 0)

    def degree(self, var: str) -> int:
        if var not in self.vars:
            return 0 if self.terms else -1
        i = self.vars.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self, vars: Iterable[str] | None = None) -> int:
        idx = range(len(self.vars)) if vars is None else [self.vars.index(v) for v in vars if v in self.vars]
        return max((sum(e[i] for i in idx) for e in self.terms), default=-1)

    def coeff(self, var: str, k: int) -> "MultiPoly":
        return self.coeff_monomial({var: k})

    def coeff_monomial(self, powers: Mapping[str, int]) -> "MultiPoly":
        """Coefficient of the given monomial, as a polynomial in the other variables."""
        keep = [i for i, v in enumerate(self.vars) if v not in powers]
        fixed = [(self.vars.index(v), k) for v, k in powers.items() if v in self.vars]
        if any(k for v, k in powers.items() if v not in self.vars):
            return MultiPoly._raw(tuple(self.vars[i] for i in keep), {})
        out = {}
        for e, c in self.terms.items():
            if all(e[i] == k for i, k in fixed):
                out[tuple(e[i] for i in keep)] = c
        return MultiPoly._raw(tuple(self.vars[i] for i in keep), out)

    def collect(self, vars: Sequence[str]) -> Dict[Exps, "MultiPoly"]:
        """Group terms by the exponents of `vars`; values are polynomials in the rest."""
        pos = [self.vars.index(v) if v in self.vars else None for v in vars]
        keep = [i for i, v in enumerate(self.vars) if v not in vars]
        rest = tuple(self.vars[i] for i in keep)
        groups: Dict[Exps, Dict[Exps, Number]] = {}
        for e, c in self.terms.items():
            key = tuple(e[i] if i is not None else 0 for i in pos)
            groups.setdefault(key, {})[tuple(e[i] for i in keep)] = c
        return {k: MultiPoly._raw(rest, t) for k, t in groups.items()}

    # evaluation and substitution
    def evaluate(self, values: Mapping[str, Number]) -> "MultiPoly":
        """Plug in rational values; returns a polynomial in the remaining variables."""
        hit = [(i, Fraction(values[v]) if not isinstance(values[v], int) else values[v])
               for i, v in enumerate(self.vars) if v in values]
        keep = [i for i, v in enumerate(self.vars) if v not in values]
        out: Dict[Exps, Number] = {}
        for e, c in self.terms.items():
            for i, val in hit:
                if e[i]:
                    c = c * val ** e[i]
            k = tuple(e[i] for i in keep)
            out[k] = out.get(k, 0) + c
        return MultiPoly(tuple(self.vars[i] for i in keep), out)

    def __call__(self, **values) -> "MultiPoly":
        return self.evaluate(values)

    def subs(self, mapping: Mapping[str, "MultiPoly | Number"]) -> "MultiPoly":
        """Simultaneous polynomial substitution of variables."""
        repl = {v: MultiPoly.coerce(p) for v, p in mapping.items() if v in self.vars}
        if not repl:
            return self
        keep = [i for i, v in enumerate(self.vars) if v not in repl]
        rest_vars = tuple(self.vars[i] for i in keep)
        hit = [(i, repl[v]) for i, v in enumerate(self.vars) if v in repl]
        powers: Dict[Tuple[int, int], MultiPoly] = {}

        def pw(i, p, k):
            key = (i, k)
            if key not in powers:
                powers[key] = p ** k
            return powers[key]

        grouped: Dict[Exps, Dict[Exps, Number]] = {}
        for e, c in self.terms.items():
            grouped.setdefault(tuple(e[i] for i, _ in hit), {})[tuple(e[i] for i in keep)] = c
        total = MultiPoly.const(0)
        for key, rest in grouped.items():
            factor = MultiPoly._raw(rest_vars, rest)
            for (i, p), k in zip(hit, key):
                if k:
                    factor = factor * pw(i, p, k)
            total = total + factor
        return total

    # serialisation
    def to_json_obj(self) -> dict:
        terms = sorted(self.terms.items(), key=lambda t: t[0], reverse=True)
        return {"vars": list(self.vars),
                "terms": [{"c": _rat_str(c), "e": list(e)} for e, c in terms]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj) -> "MultiPoly":
        try:
            vars = tuple(obj["vars"])
            terms = {}
            for t in obj["terms"]:
                e = tuple(int(x) for x in t["e"])
                terms[e] = terms.get(e, 0) + Fraction(t["c"])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad polynomial JSON: {exc}") from exc
        return cls(vars, terms)

    @classmethod
    def from_json(cls, text: str) -> "MultiPoly":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc)) from exc
        return cls.from_json_obj(obj)

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True):
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            parts.append((sign, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])


def _merge_dupes(vs, order, terms):
    idx = {v: order.index(v) for v in order}
    out: Dict[Exps, Number] = {}
    for e, c in terms.items():
        full = [0] * len(order)
        for v, k in zip(vs, e):
            full[idx[v]] += k
        t = tuple(full)
        out[t] = out.get(t, 0) + c
    return out


def _rat_str(c: Number) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def variables(*names: str) -> Tuple[MultiPoly, ...]:
    return tuple(MultiPoly.var(n) for n in names)


ZERO = MultiPoly.const(0)
ONE = MultiPoly.const(1)


def binomial_poly(var: str, k: int) -> MultiPoly:
    """C(var, k) = var (var-1) ... (var-k+1) / k!."""
    v = MultiPoly.var(var)
    out = MultiPoly.const(1)
    for i in range(k):
        out = out * (v - i)
    return out * Fraction(1, factorial(k))


def substitute_homogeneous(p: MultiPoly, nums: Mapping[str, MultiPoly | Number],
                           den: MultiPoly | Number, clear_power: int) -> MultiPoly:
    """den^clear_power * p(..., v -> nums[v]/den, ...).

    All substituted variables share one denominator. `clear_power` must be at
    least the total degree of `p` in those variables.
    """
    names = [v for v in nums if v in p.vars]
    den = MultiPoly.coerce(den)
    if p.total_degree(names) > clear_power:
        raise ValueError("clear_power below the degree being cleared")
    groups = p.collect(names)
    num_polys = [MultiPoly.coerce(nums[v]) for v in names]
    cache: Dict[Tuple[int, int], MultiPoly] = {}

    def pw(i, base, k):
        if (i, k) not in cache:
            cache[(i, k)] = base ** k
        return cache[(i, k)]

    total = MultiPoly.const(0)
    for key, rest in groups.items():
        term = rest
        for i, k in enumerate(key):
            if k:
                term = term * pw(i, num_polys[i], k)
        d = clear_power - sum(key)
        if d:
            term = term * pw(-1, den, d)
        total = total + term
    return total


def substitute_rational(p: MultiPoly, var: str, num, den, clear_power: int) -> MultiPoly:
    """den^clear_power * p(var -> num/den)."""
    return substitute_homogeneous(p, {var: num}, den, clear_power)


def _leading(p: MultiPoly):
    e = max(p.terms)
    return e, p.terms[e]


def exact_divide(p: MultiPoly, d: MultiPoly | Number) -> MultiPoly:
    """Quotient p/d, raising NonzeroRemainder unless d divides p exactly.

    Uses lex-order multivariate division by a single divisor, which returns a
    zero remainder precisely when the division is exact.
    """
    d = MultiPoly.coerce(d)
    if d.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    vs = MultiPoly._union(p.vars, d.vars)
    rem = dict(p._lift(vs))
    dt = d._lift(vs)
    de, dc = max(dt.items())
    dc = Fraction(dc)
    quot: Dict[Exps, Number] = {}
    while rem:
        e = max(rem)
        if any(a < b for a, b in zip(e, de)):
            raise NonzeroRemainder(f"{d.pretty()} does not divide {MultiPoly._raw(vs, p._lift(vs)).pretty()}")
        shift = tuple(a - b for a, b in zip(e, de))
        c = _norm(rem[e] / dc)
        quot[shift] = c
        for e2, c2 in dt.items():
            t = tuple(a + b for a, b in zip(shift, e2))
            v = rem.get(t, 0) - c * c2
            if v:
                rem[t] = _norm(v)
            else:
                rem.pop(t, None)
    return MultiPoly._raw(vs, quot)


def falling_factorial_coeffs(p: MultiPoly, var: str = "q") -> Dict[int, MultiPoly]:
    """Coefficients c_k with p = sum_k c_k * C(var, k), via forward differences."""
    deg = p.degree(var)
    if deg < 0:
        return {}
    vals = [p.evaluate({var: k}) for k in range(deg + 1)]
    out = {}
    for k in range(deg + 1):
        c = MultiPoly.const(0)
        for j in range(k + 1):
            c = c + vals[j] * ((-1) ** (k - j) * comb(k, j))
        if c:
            out[k] = c
    return out


def from_binomial_basis(coeffs: Mapping[int, MultiPoly | Number], var: str = "q") -> MultiPoly:
    total = MultiPoly.const(0)
    for k, c in coeffs.items():
        total = total + MultiPoly.coerce(c) * binomial_poly(var, k)
    return total


def interpolate_in_q(points: Sequence[Tuple[Number, MultiPoly | Number]], degree: int,
                     var: str = "q") -> MultiPoly:
    """Lagrange interpolation through degree+1 points with polynomial values."""
    pts = list(points)
    if len(pts) != degree + 1:
        raise ValueError("need exactly degree+1 points")
    xs = [Fraction(x) for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    q = MultiPoly.var(var)
    total = MultiPoly.const(0)
    for i, (xi, (_, yi)) in enumerate(zip(xs, pts)):
        basis = MultiPoly.const(1)
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * (q - xj)
                denom *= xi - xj
        total = total + MultiPoly.coerce(yi) * basis * (1 / denom)
    return total


class QBinomial:
    """A polynomial written as sum_p coeffs[p] * C(var, p), coefficients free of var.

    B-polynomials have integer coefficients in this basis, so identities that
    only touch y and z can be compared without any rational arithmetic.
    """
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Mapping[int, MultiPoly | Number], var: str = "q"):
        self.var = var
        self.coeffs: Dict[int, MultiPoly] = {}
        for p, c in coeffs.items():
            c = MultiPoly.coerce(c)
            if c:
                self.coeffs[p] = c

    @classmethod
    def from_poly(cls, P: MultiPoly, var: str = "q") -> "QBinomial":
        return cls(falling_factorial_coeffs(P, var), var)

    def to_multipoly(self) -> MultiPoly:
        return from_binomial_basis(self.coeffs, self.var)

    def map(self, fn) -> "QBinomial":
        return QBinomial({p: fn(c) for p, c in self.coeffs.items()}, self.var)

    def __add__(self, other: "QBinomial") -> "QBinomial":
        out = dict(self.coeffs)
        for p, c in other.coeffs.items():
            out[p] = out[p] + c if p in out else c
        return QBinomial(out, self.var)

    def __neg__(self):
        return self.map(lambda c: -c)

    def __sub__(self, other: "QBinomial") -> "QBinomial":
        return self + (-other)

    def __mul__(self, other) -> "QBinomial":
        if isinstance(other, MultiPoly) and self.var in other.trimmed().vars:
            raise ValueError("multiplier must not involve the basis variable")
        return self.map(lambda c: c * other)

    __rmul__ = __mul__

    def negated_argument(self) -> "QBinomial":
        """The same polynomial with var replaced by -var.

        C(-q, p) = (-1)^p C(q+p-1, p) = (-1)^p sum_j C(p-1, p-j) C(q, j).
        """
        out: Dict[int, MultiPoly] = {}
        for p, c in self.coeffs.items():
            if p == 0:
                out[0] = out.get(0, ZERO) + c
                continue
            for j in range(1, p + 1):
                k = comb(p - 1, p - j) * (-1 if p % 2 else 1)
                out[j] = out.get(j, ZERO) + c * k
        return QBinomial(out, self.var)

    def at(self, value: int) -> MultiPoly:
        total = ZERO
        for p, c in self.coeffs.items():
            if value >= 0:
                k = comb(value, p)
            else:
                k = comb(-value + p - 1, p) * (-1 if p % 2 else 1)
            total = total + c * k
        return total

    def __eq__(self, other):
        if isinstance(other, QBinomial) and other.var == self.var:
            return self.coeffs == other.coeffs
        if isinstance(other, (MultiPoly, int, Fraction)):
            return self.to_multipoly() == other
        return NotImplemented

    __hash__ = None

    def to_json_obj(self) -> dict:
        return self.to_multipoly().to_json_obj()

    def pretty(self) -> str:
        return self.to_multipoly().pretty()

    def __repr__(self):
        return f"QBinomial({self.pretty()})"
