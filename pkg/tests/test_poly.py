from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from bpoly.errors import NonzeroRemainder, ParseError
from bpoly.poly import (MultiPoly, QBinomial, binomial_poly, exact_divide, falling_factorial_coeffs,
                        from_binomial_basis, interpolate_in_q, substitute_rational, variables)
from conftest import polys
from oracles import q as sq, same, to_sympy, y as sy, z as sz

Q, Y, Z, X = variables("q", "y", "z", "x")


# ring laws

@given(polys(), polys(), polys())
def test_addition_and_multiplication_associate(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)


@given(polys(), polys(), polys())
def test_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(polys(), polys())
def test_commutative_and_matches_sympy(a, b):
    assert a * b == b * a
    assert same(a * b, to_sympy(a) * to_sympy(b))
    assert same(a - b, to_sympy(a) - to_sympy(b))


@given(polys(max_terms=3, max_deg=2), st.integers(0, 3))
def test_power_is_repeated_product(a, k):
    expected = MultiPoly.const(1)
    for _ in range(k):
        expected = expected * a
    assert a ** k == expected


def test_variable_order_is_canonical():
    P = MultiPoly(("z", "q"), {(1, 2): 3})
    assert P.vars == ("q", "z")
    assert P == 3 * Q ** 2 * Z
    assert MultiPoly(("x", "y1", "q", "z2", "y")).vars == ("q", "y", "x", "y1", "z2")


def test_integers_and_fractions_compare_equal():
    assert MultiPoly.const(Fraction(4, 2)) == 2
    assert (Q * Fraction(1, 2)) * 2 == Q


# division

@given(polys(max_terms=3, max_deg=2), polys(max_terms=3, max_deg=2))
def test_exact_divide_recovers_factor(a, b):
    if b.is_zero():
        return
    assert exact_divide(a * b, b) == a


def test_exact_divide_reports_remainder():
    with pytest.raises(NonzeroRemainder):
        exact_divide(Q ** 2 + 1, Q - 1)
    with pytest.raises(ZeroDivisionError):
        exact_divide(Q, 0)


def test_exact_divide_multivariate():
    P = (Y - 1) ** 2 * (X - 1) * (X * Y + 3)
    assert exact_divide(exact_divide(P, (Y - 1) ** 2), X - 1) == X * Y + 3


# substitution

@given(polys(vars=("q", "y"), max_terms=4, max_deg=3),
       st.fractions(min_value=-3, max_value=3, max_denominator=3),
       st.fractions(min_value=-3, max_value=3, max_denominator=3))
def test_substitute_rational_matches_pointwise(P, qv, yv):
    # y -> (q+2)/(q-5), cleared by (q-5)^deg
    d = max(P.degree("y"), 0)
    S = substitute_rational(P, "y", Q + 2, Q - 5, d)
    if qv == 5:
        return
    direct = P.evaluate({"q": qv, "y": (qv + 2) / (qv - 5)}).constant_value()
    assert S.evaluate({"q": qv}).constant_value() == direct * (qv - 5) ** d


def test_substitute_rational_rejects_low_power():
    with pytest.raises(ValueError):
        substitute_rational(Y ** 3, "y", 1, Y, 2)


def test_subs_polynomial():
    assert (Q * Y).subs({"q": (X - 1) * (Y - 1)}) == (X - 1) * (Y - 1) * Y


# binomial basis and interpolation

@given(polys(vars=("q", "y"), max_terms=4, max_deg=4))
def test_falling_factorial_round_trip(P):
    assert from_binomial_basis(falling_factorial_coeffs(P)) == P
    assert QBinomial.from_poly(P).to_multipoly() == P


def test_binomial_poly():
    assert binomial_poly("q", 3) == Q * (Q - 1) * (Q - 2) * Fraction(1, 6)
    assert same(binomial_poly("q", 4), sp.binomial(sq, 4).expand(func=True))


@given(polys(vars=("q", "y"), max_terms=4, max_deg=3))
def test_interpolation_recovers_polynomial(P):
    deg = max(P.degree("q"), 0)
    pts = [(k, P.evaluate({"q": k})) for k in range(-1, deg)]
    assert interpolate_in_q(pts, deg) == P


def test_interpolation_validates_nodes():
    with pytest.raises(ValueError):
        interpolate_in_q([(1, 1), (1, 2)], 1)
    with pytest.raises(ValueError):
        interpolate_in_q([(1, 1)], 2)


@given(polys(vars=("q", "y"), max_terms=4, max_deg=4), st.integers(-4, 6))
def test_qbinomial_evaluation_and_negation(P, v):
    B = QBinomial.from_poly(P)
    assert B.at(v) == P.evaluate({"q": v})
    assert B.negated_argument().to_multipoly() == P.subs({"q": -Q})


def test_qbinomial_arithmetic():
    A = QBinomial({0: 1, 2: Y})
    B = QBinomial({1: Z})
    assert (A + B).to_multipoly() == A.to_multipoly() + B.to_multipoly()
    assert (A * Z).to_multipoly() == A.to_multipoly() * Z
    with pytest.raises(ValueError):
        A * Q
    assert A == A.to_multipoly()


# serialisation

@given(polys())
def test_json_round_trip(P):
    assert MultiPoly.from_json(P.to_json()) == P


def test_json_schema_and_errors():
    P = Q * Fraction(1, 2) + Y
    assert P.to_json_obj() == {"vars": ["q", "y"],
                               "terms": [{"c": "1/2", "e": [1, 0]}, {"c": "1/1", "e": [0, 1]}]}
    with pytest.raises(ParseError):
        MultiPoly.from_json("{")
    with pytest.raises(ParseError):
        MultiPoly.from_json('{"vars": ["q"], "terms": [{"c": "x", "e": [1]}]}')


def test_pretty_orders_variables():
    assert (Q * Y + X * Z - 2).pretty() == "q*y + z*x - 2"
    assert MultiPoly.const(0).pretty() == "0"


def test_evaluate_and_coefficients():
    P = Q ** 2 * Y + 3 * Q * Z
    assert P.evaluate({"q": 2}) == 4 * Y + 6 * Z
    assert P.coeff("q", 1) == 3 * Z
    assert P.coeff_monomial({"q": 2, "y": 1}) == 1
    assert P.degree("q") == 2 and P.degree("x") == 0
    assert same(P, sq ** 2 * sy + 3 * sq * sz)
