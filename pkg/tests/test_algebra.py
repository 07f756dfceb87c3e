from fractions import Fraction
from itertools import product

import sympy
from hypothesis import given
from hypothesis import strategies as st

from chromoh.algebra import A0, A1, ONE, UNIT, X, XELEM, AlgebraKind, AlgElem, basis_product, mult

A, B, C = AlgebraKind.A, AlgebraKind.B, AlgebraKind.C
x = sympy.Symbol("x")

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)
elems = st.builds(AlgElem, fractions, fractions)


def via_sympy(a, b, modulus):
    """Multiply as polynomials in x and reduce modulo the given quadratic."""
    pa = sympy.Rational(a.one.numerator, a.one.denominator) + sympy.Rational(a.x.numerator, a.x.denominator) * x
    pb = sympy.Rational(b.one.numerator, b.one.denominator) + sympy.Rational(b.x.numerator, b.x.denominator) * x
    r = sympy.Poly(sympy.rem(sympy.expand(pa * pb), modulus, x), x)
    c1 = r.coeff_monomial(1)
    cx = r.coeff_monomial(x)
    return AlgElem(Fraction(int(c1.p), int(c1.q)), Fraction(int(cx.p), int(cx.q)))


def test_basic_products():
    assert mult(A, XELEM, XELEM).is_zero()
    assert mult(B, XELEM, XELEM) == UNIT
    assert mult(B, UNIT, XELEM).is_zero()
    assert mult(C, A0, A1).is_zero()
    assert mult(C, A0, A0) == A0
    assert mult(C, A1, A1) == -A1


def test_b_is_the_difference_of_c_and_a():
    for p, q in product((ONE, X), repeat=2):
        a1, ax = basis_product(A, p, q)
        c1, cx = basis_product(C, p, q)
        assert basis_product(B, p, q) == (c1 - a1, cx - ax)


def test_unit_flags():
    assert A.unital and C.unital and not B.unital
    assert A.keeps_non_merging and C.keeps_non_merging and not B.keeps_non_merging


@given(elems, elems)
def test_a_and_c_match_quotient_rings(a, b):
    assert mult(A, a, b) == via_sympy(a, b, x**2)
    assert mult(C, a, b) == via_sympy(a, b, x**2 - 1)


@given(elems, elems, elems)
def test_commutative_and_associative(a, b, c):
    for kind in AlgebraKind:
        assert mult(kind, a, b) == mult(kind, b, a)
        assert mult(kind, mult(kind, a, b), c) == mult(kind, a, mult(kind, b, c))


@given(elems)
def test_unit(a):
    assert mult(A, UNIT, a) == a
    assert mult(C, UNIT, a) == a
