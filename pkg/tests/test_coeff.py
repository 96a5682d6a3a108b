from fractions import Fraction
from math import comb

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from oqroot.coeff import (
    LaurentPoly,
    RationalFn,
    cyclotomic_poly,
    field,
    gauss_binom,
    gauss_factorial,
    gauss_int,
    specialize,
)

import oracles

V = LaurentPoly.mono(1)
VINV = LaurentPoly.mono(-1)

laurent = st.dictionaries(
    st.integers(-10, 10), st.fractions(min_value=-5, max_value=5, max_denominator=4), max_size=6
).map(LaurentPoly)
small_laurent = st.dictionaries(st.integers(-20, 20), st.integers(-3, 3), max_size=8).map(LaurentPoly)
ells = st.sampled_from([3, 5, 7])


def cyc_from_sympy(coeffs, ell):
    return field(ell).reduce_vector([Fraction(int(c.p), int(c.q)) for c in coeffs])


# -- Gaussian integers, factorials, binomials

def test_gauss_int_examples():
    assert gauss_int(0) == LaurentPoly()
    assert gauss_int(2) == V + VINV
    assert gauss_int(5).at(1) == 5


@given(st.integers(-30, 30))
def test_gauss_int_odd(n):
    assert gauss_int(-n) == -gauss_int(n)


def test_gauss_factorial_examples():
    assert gauss_factorial(0) == LaurentPoly.const(1)
    assert gauss_factorial(2) == V + VINV
    assert gauss_factorial(3).at(1) == 6


def test_gauss_binom_examples():
    assert gauss_binom(7, 0) == LaurentPoly.const(1)
    assert gauss_binom(4, 2).at(1) == 6
    assert not specialize(gauss_binom(5, 2), 5)


@pytest.mark.parametrize("n,m", [(n, m) for n in range(-4, 9) for m in range(0, 5)])
def test_gauss_binom_matches_sympy_product(n, m):
    want = oracles.gauss_binom_expr(n, m)
    got = sum((c * oracles.v ** e for e, c in gauss_binom(n, m).terms.items()), sp.Integer(0))
    assert sp.cancel(want - got) == 0


@given(st.integers(-12, 12), st.integers(0, 8))
def test_binom_times_factorial_is_falling_product(n, m):
    prod = LaurentPoly.const(1)
    for j in range(1, m + 1):
        prod = prod * gauss_int(n - j + 1)
    assert gauss_binom(n, m) * gauss_factorial(m) == prod


@pytest.mark.parametrize("n", range(13))
def test_classical_limit(n):
    for m in range(n + 1):
        assert gauss_binom(n, m).at(1) == comb(n, m)


@pytest.mark.parametrize("ell", [3, 5, 7])
def test_quantum_binomial_vanishes_at_root(ell):
    for i in range(1, ell):
        assert not specialize(gauss_binom(ell, i), ell)
        assert all(c == 0 for c in oracles.reduce_mod_phi(oracles.gauss_binom_expr(ell, i), ell))


# -- cyclotomic polynomials and specialization

@pytest.mark.parametrize("ell", [1, 2, 3, 4, 5, 6, 7, 9, 15])
def test_cyclotomic_poly_matches_sympy(ell):
    assert list(cyclotomic_poly(ell)) == oracles.cyclotomic(ell)


def test_cyclotomic_examples():
    assert tuple(cyclotomic_poly(1)) == (-1, 1)
    assert tuple(cyclotomic_poly(3)) == (1, 1, 1)
    assert tuple(cyclotomic_poly(5)) == (1, 1, 1, 1, 1)


@pytest.mark.parametrize("ell", [3, 5, 7, 9])
def test_cyclotomic_field_shape(ell):
    F = field(ell)
    assert F.deg == sp.totient(ell)
    q = F.q()
    assert q ** ell == F.one
    assert all(q ** k != F.one for k in range(1, ell))


def test_specialize_examples():
    assert specialize(LaurentPoly.mono(3), 3) == field(3).one
    for ell in (3, 5, 7):
        assert not specialize(gauss_int(ell), ell)
    assert specialize(LaurentPoly.const(7), 5) == 7
    assert specialize(V, 5) == field(5).q()


@given(small_laurent, ells)
def test_specialize_agrees_with_sympy(p, ell):
    expr = sum((c * oracles.v ** e for e, c in p.terms.items()), sp.Integer(0))
    assert specialize(p, ell) == cyc_from_sympy(oracles.reduce_mod_phi(expr, ell), ell)


@given(small_laurent, small_laurent, ells)
def test_specialize_is_ring_map(p, r, ell):
    assert specialize(p * r, ell) == specialize(p, ell) * specialize(r, ell)
    assert specialize(p + r, ell) == specialize(p, ell) + specialize(r, ell)


# -- field operations

def test_inverse_examples():
    F = field(5)
    q = F.q()
    assert F.one.inverse() == F.one
    assert q.inverse() == q ** 4
    assert (q - 1).inverse() * (q - 1) == F.one


@pytest.mark.parametrize("ell", [3, 5, 7])
def test_inverse_matches_sympy(ell):
    F = field(ell)
    phi = sp.Poly(sp.cyclotomic_poly(ell, oracles.v), oracles.v)
    x = F.q() - 1
    inv = sp.invert(sp.Poly(oracles.v - 1, oracles.v), phi)
    coeffs = list(reversed(inv.all_coeffs()))
    assert x.inverse() == cyc_from_sympy(coeffs, ell)


@given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5), min_size=6, max_size=6), ells)
def test_field_inverse(coeffs, ell):
    F = field(ell)
    x = F.reduce_vector(coeffs[: F.deg])
    if x:
        assert x * x.inverse() == F.one
    else:
        with pytest.raises(ZeroDivisionError):
            x.inverse()


# -- Laurent polynomials

@given(laurent, laurent, laurent)
def test_laurent_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * LaurentPoly.const(1) == a
    assert all(x != 0 for x in (a * b).terms.values())


@given(laurent)
def test_laurent_text_and_json_round_trip(a):
    assert LaurentPoly.parse(str(a)) == a
    assert LaurentPoly.from_json(a.to_json()) == a


def test_laurent_text_form():
    p = LaurentPoly({4: 1, 0: 2, -2: -1})
    assert str(p) == "v^4 + 2 - v^-2"
    half = LaurentPoly({1: Fraction(3, 2), -3: Fraction(-1, 2)})
    assert str(half) == "3/2*v - 1/2*v^-3"
    assert LaurentPoly({1: Fraction(3, 2)}).to_json() == [[1, 3, 2]]


def test_inexact_division_raises():
    with pytest.raises(ArithmeticError):
        (V + LaurentPoly.const(1)).divexact(V + LaurentPoly.const(2))


@given(small_laurent, small_laurent.filter(bool))
def test_rational_functions_cancel(p, r):
    x = RationalFn(p * r, r)
    assert x.is_laurent()
    assert x.to_laurent() == p
