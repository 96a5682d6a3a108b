import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oqroot import qmatrix as Q
from oqroot.coeff import LaurentPoly

import oracles

V = LaurentPoly.mono(1)


def X(n, i, j):
    return Q.QMatElement.gen(n, i, j)


def words(n, max_deg=3):
    return st.lists(st.integers(0, n * n - 1), max_size=max_deg).map(lambda w: Q.QMatElement(n, {tuple(w): 1}))


def combos(n, max_deg=3):
    coeff = st.dictionaries(st.integers(-2, 2), st.integers(-2, 2).filter(bool), min_size=1, max_size=2).map(LaurentPoly)
    word = st.lists(st.integers(0, n * n - 1), max_size=max_deg).map(tuple)
    return st.dictionaries(word, coeff, min_size=1, max_size=3).map(lambda t: Q.QMatElement(n, t))


def test_reduce_examples():
    assert str(Q.reduce(X(2, 2, 2).concat(X(2, 1, 1)))) == "1 + v^-1 X[1,2]*X[2,1]"
    for n in (2, 3, 4):
        got = Q.reduce(X(n, 2, 1).concat(X(n, 1, 1)))
        assert got.terms == {(Q.pair(n, 1, 1), Q.pair(n, 2, 1)): LaurentPoly.mono(-1)}
    assert Q.multiply(X(2, 1, 2), X(2, 1, 1)).terms == {(0, 1): LaurentPoly.mono(-1)}


def test_three_by_three_determinant():
    got = Q.reduce(Q.parse("X[1,1]*X[2,2]*X[3,3]", 3))
    assert str(got) == (
        "1 + v X[1,1]*X[2,3]*X[3,2] + v X[1,2]*X[2,1]*X[3,3] - v^2 X[1,2]*X[2,3]*X[3,1]"
        " - v^2 X[1,3]*X[2,1]*X[3,2] + v^3 X[1,3]*X[2,2]*X[3,1]"
    )


@pytest.mark.parametrize("n", [2, 3])
def test_determinant_relation_reduces_to_one(n):
    det = Q.QMatElement(n)
    for perm in itertools.permutations(range(1, n + 1)):
        inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        word = tuple(Q.pair(n, perm[k], k + 1) for k in range(n))
        det = det + Q.QMatElement(n, {word: LaurentPoly.mono(inv, (-1) ** inv)})
    assert Q.reduce(det) == Q.QMatElement.one(n)


@pytest.mark.parametrize("n", [2, 3])
def test_commutation_families_hold_after_reduction(n):
    for (l, i), (m, j) in itertools.product(itertools.product(range(1, n + 1), repeat=2), repeat=2):
        a, b = X(n, l, i), X(n, m, j)
        if i == j and l < m:  # column relation
            assert Q.multiply(a, b) == Q.multiply(b, a).scale(V)
        if l == m and i < j:  # row relation
            assert Q.multiply(a, b) == Q.multiply(b, a).scale(V)
        if l < m and i > j:
            assert Q.multiply(a, b) == Q.multiply(b, a)
        if l < m and i < j:
            rhs = Q.multiply(b, a) + Q.multiply(X(n, l, j), X(n, m, i)).scale(V - LaurentPoly.mono(-1))
            assert Q.multiply(a, b) == rhs


@given(st.sampled_from([2, 3]).flatmap(combos))
def test_reduction_is_idempotent(x):
    r = Q.reduce(x)
    assert Q.reduce(r).terms == r.terms
    assert r.is_normal()


@given(st.sampled_from([2, 3]).flatmap(words))
def test_multiply_by_one(x):
    one = Q.QMatElement.one(x.n)
    assert Q.multiply(one, x).terms == Q.reduce(x).terms == Q.multiply(x, one).terms


@given(st.sampled_from([2, 3]).flatmap(lambda n: st.tuples(words(n), words(n))))
def test_degree_does_not_grow(pair):
    x, y = pair
    deg = max((len(w) for w in x.terms), default=0) + max((len(w) for w in y.terms), default=0)
    assert all(len(w) <= deg for w in Q.multiply(x, y).terms)


@given(st.sampled_from([2, 3]).flatmap(lambda n: st.tuples(words(n), words(n))))
def test_integrality_and_support(pair):
    x, y = pair
    r = Q.multiply(x, y)
    assert Q.is_integral(r)
    assert all(m.in_xi() for m in r.monomials())


@pytest.mark.parametrize("n", [2, 3])
def test_confluence(n):
    assert Q.confluence_sample(n, 300, seed=7) == []


def test_agreement_with_rank_one_algebra():
    assert Q.oq_agreement(100, seed=7, ell=3) == []
    assert Q.oq_agreement(40, seed=8, ell=5) == []


@pytest.mark.parametrize("n,d,want", [(2, 1, 5), (2, 2, 14), (3, 0, 1), (2, 3, None), (3, 2, None)])
def test_xi_monomials(n, d, want):
    got = Q.xi_monomials(n, d)
    assert len(got) == oracles.xi_count(n, d)
    if want is not None:
        assert len(got) == want
    assert all(m.in_xi() and m.degree <= d for m in got)


def test_text_round_trip():
    x = Q.parse("X[2,1]*X[1,1] - v^-1 X[1,1]*X[2,1]", 2)
    assert Q.reduce(x) == Q.QMatElement(2)
    y = Q.parse("(v^2 - 1) X[1,2]^2 + 3/2", 2)
    assert Q.parse(str(y), 2).terms == y.terms
    for bad in ("", "X[3,1]", "X[1,1] $"):
        with pytest.raises(ValueError):
            Q.parse(bad, 2)


def test_json_form():
    js = Q.reduce(Q.parse("X[2,2]*X[1,1]", 2)).to_json()
    assert js == [
        {"matrix": [[0, 0], [0, 0]], "coeff": [[0, 1, 1]]},
        {"matrix": [[0, 1], [1, 0]], "coeff": [[-1, 1, 1]]},
    ]


def test_step_budget_guard():
    alg = Q.QuantumMatrixAlgebra(3, budget=5)
    with pytest.raises(Q.StepBudgetExceeded):
        alg.reduce_terms({(8, 4, 0, 8, 4, 0): LaurentPoly.const(1)})
