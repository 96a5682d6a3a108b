import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oqroot import oq, uq
from oqroot.coeff import field
from oqroot.linalg import rank
from oqroot.oq import OqElement
from oqroot.uq import E, F, K, KINV, AlgebraElement

ELL = 3
FLD = field(ELL)
q = FLD.q()
a, b, c, d = (OqElement.gen(x, ELL) for x in "abcd")
KEYS = {D: oq.monomials(D) for D in range(7)}


def mono(key, ell=ELL):
    return OqElement.monomial(key, ell)


def elements(max_deg=3, ell=ELL):
    keys = st.sampled_from(KEYS[max_deg])
    coeff = st.integers(-3, 3).filter(bool)
    return st.dictionaries(keys, coeff, min_size=1, max_size=4).map(lambda t: OqElement(ell, t))


def words(ell=ELL, max_len=3):
    gens = st.sampled_from([E(1), F(1), K, KINV, E(ell), F(ell), E(2), F(2)])
    return st.lists(gens, min_size=0, max_size=max_len).map(lambda w: AlgebraElement.word(ell, *w))


# -- products

def test_commutation_examples():
    assert b * a == q.inverse() * (a * b)
    assert d * a == 1 + q.inverse() * (b * c)
    assert a * d == 1 + q * (b * c)
    assert a * b == q * (b * a)
    assert b * c == c * b


def test_square_of_a_plus_d_by_evaluation():
    # (a + d)^2 is the trace of V_1 (x) V_1: check against traces of actual matrices
    x = (a + d) * (a + d)
    assert x == a * a + d * d + (q + q.inverse()) * (b * c) + 2
    VV = uq.tensor(uq.weyl_module(1, ELL), uq.weyl_module(1, ELL))
    rng = random.Random(3)
    G = [E(1), F(1), K, KINV, E(2), F(2), E(3), F(3)]
    for _ in range(20):
        u = AlgebraElement.word(ELL, *[rng.choice(G) for _ in range(rng.randint(0, 4))])
        M = VV.act(u)
        tr = sum((M.get(i, i, FLD.zero) for i in range(VV.dim)), FLD.zero)
        assert oq.evaluate(x, u) == tr


@given(elements(), elements(), elements())
def test_associativity(x, y, z):
    assert (x * y) * z == x * (y * z)


@given(elements(), elements())
def test_degree_subadditive(x, y):
    assert (x * y).degree <= x.degree + y.degree


def test_normal_form_excludes_mixed_a_d():
    for key in KEYS[4]:
        m, l, _, _ = key
        assert m == 0 or l == 0
    with pytest.raises(ValueError):
        OqElement(ELL, {(1, 1, 0, 0): 1})


def test_text_grammar_round_trip():
    x = OqElement.parse("a^2*b - (1/2)q^-1*c*d", ELL)
    assert x == a * a * b - FLD(1) / 2 * q.inverse() * (c * d)
    assert OqElement.parse(str(x), ELL) == x
    assert OqElement.from_json(x.to_json(), ELL) == x


@given(elements(4))
def test_json_round_trip(x):
    assert OqElement.from_json(x.to_json(), ELL) == x
    assert OqElement.parse(str(x), ELL) == x


# -- Hopf structure

def test_coproduct_examples():
    one = OqElement.one(ELL)
    assert oq.comultiply(one) == {((0, 0, 0, 0), (0, 0, 0, 0)): FLD.one}
    key = lambda e: next(iter(e.terms))
    assert oq.comultiply(a) == {(key(a), key(a)): FLD.one, (key(b), key(c)): FLD.one}
    assert oq.comultiply(d) == {(key(c), key(b)): FLD.one, (key(d), key(d)): FLD.one}


def apply_pair(delta, left, right):
    out = OqElement(ELL)
    for (k1, k2), x in delta.items():
        out = out + left(k1) * right(k2) * x
    return out


@given(elements(4))
def test_counit_axiom(x):
    one = OqElement.one(ELL)
    delta = oq.comultiply(x)
    assert apply_pair(delta, lambda k: one * oq.counit_key(k), mono) == x
    assert apply_pair(delta, mono, lambda k: one * oq.counit_key(k)) == x


@given(elements(2))
def test_coassociativity(x):
    left, right = {}, {}
    for (k1, k2), cf in oq.comultiply(x).items():
        for (k11, k12), c1 in oq.comultiply_key(k1, ELL).items():
            t = (k11, k12, k2)
            left[t] = left.get(t, FLD.zero) + cf * c1
        for (k21, k22), c2 in oq.comultiply_key(k2, ELL).items():
            t = (k1, k21, k22)
            right[t] = right.get(t, FLD.zero) + cf * c2
    strip = lambda m: {k: v for k, v in m.items() if v}
    assert strip(left) == strip(right)


@given(elements(), elements())
def test_coproduct_is_multiplicative(x, y):
    # Delta(xy) = Delta(x) Delta(y), compared after pairing with random pairs of words
    rng = random.Random(hash((str(x), str(y))) & 0xFFFF)
    u1 = AlgebraElement.word(ELL, *[rng.choice([E(1), F(1), K]) for _ in range(2)])
    u2 = AlgebraElement.word(ELL, *[rng.choice([E(1), F(1), K]) for _ in range(2)])

    def pair(delta):
        return sum((cf * oq.evaluate(mono(k1), u1) * oq.evaluate(mono(k2), u2) for (k1, k2), cf in delta.items()), FLD.zero)

    dx, dy = oq.comultiply(x), oq.comultiply(y)
    lhs = pair(oq.comultiply(x * y))
    rhs = FLD.zero
    for (x1, x2), cx in dx.items():
        for (y1, y2), cy in dy.items():
            rhs = rhs + cx * cy * oq.evaluate(mono(x1) * mono(y1), u1) * oq.evaluate(mono(x2) * mono(y2), u2)
    assert lhs == rhs


def test_antipode_examples():
    assert oq.antipode(OqElement.one(ELL)) == OqElement.one(ELL)
    assert oq.antipode(a) == d and oq.antipode(d) == a
    assert oq.antipode(b) == -q.inverse() * b
    assert oq.antipode(c) == -q * c
    assert oq.antipode(a * b) == -q.inverse() * (b * d)


@given(elements(), elements())
def test_antipode_reverses_products(x, y):
    assert oq.antipode(x * y) == oq.antipode(y) * oq.antipode(x)


@given(elements(4))
def test_counit_of_antipode(x):
    assert oq.counit(oq.antipode(x)) == oq.counit(x)


@pytest.mark.parametrize("D", [2, 4])
def test_antipode_bijective_but_not_involutive(D):
    images = [oq.antipode(mono(k)).terms for k in KEYS[D]]
    assert rank(images) == len(KEYS[D])
    assert oq.antipode(oq.antipode(b)) != b


def test_antipode_axiom():
    # m (S (x) id) Delta = eps = m (id (x) S) Delta on low-degree monomials
    for key in KEYS[3]:
        delta = oq.comultiply_key(key, ELL)
        one = OqElement.one(ELL)
        want = one * oq.counit_key(key)
        assert apply_pair(delta, lambda k: oq.antipode(mono(k)), mono) == want
        assert apply_pair(delta, mono, lambda k: oq.antipode(mono(k))) == want


# -- evaluation pairing

def test_evaluation_examples():
    Kw = AlgebraElement.word(ELL, K)
    assert oq.evaluate(OqElement.one(ELL), Kw) == 1
    assert oq.evaluate(a, Kw) == q
    assert oq.evaluate(d, Kw) == q.inverse()
    assert oq.evaluate(b, AlgebraElement.word(ELL, E(1))) == 1


@pytest.mark.parametrize("ell", [3, 5])
def test_k_power_ell_pairs_to_zero(ell):
    u = AlgebraElement.word(ell, *([K] * ell)) - AlgebraElement.one(ell)
    for key in oq.monomials(6):
        assert not oq.evaluate(mono(key, ell), u)


def coproduct_terms(g, ell):
    if g == K:
        return [(field(ell).one, (K,), (K,))]
    return oq.symbol_coproduct(g, ell)


@given(st.sampled_from(KEYS[3]), st.sampled_from(KEYS[3]), st.sampled_from([E(1), F(1), K, E(3), F(3), E(2)]))
def test_pairing_product_compatibility(k1, k2, g):
    f, h = mono(k1), mono(k2)
    u = AlgebraElement.word(ELL, g)
    rhs = FLD.zero
    for cf, w1, w2 in coproduct_terms(g, ELL):
        rhs = rhs + cf * oq.evaluate(f, AlgebraElement.word(ELL, *w1)) * oq.evaluate(h, AlgebraElement.word(ELL, *w2))
    assert oq.evaluate(f * h, u) == rhs


# -- the two actions

def test_rho_examples():
    Kw = AlgebraElement.word(ELL, K)
    assert oq.rho1(Kw, a) == q * a
    assert oq.rho2(Kw, a) == q.inverse() * a  # (S K, a) = (K^-1, a)


@given(elements())
def test_rho_identity(f):
    assert oq.rho1(AlgebraElement.one(ELL), f) == f
    assert oq.rho2(AlgebraElement.one(ELL), f) == f


@given(elements(), words(max_len=2), words(max_len=2))
def test_actions_commute(f, u, w):
    assert oq.rho1(u, oq.rho2(w, f)) == oq.rho2(w, oq.rho1(u, f))


@given(elements(2), words(max_len=2))
def test_fast_actions_match_definition(f, u):
    assert oq.rho1(u, f) == oq.rho1_literal(u, f)
    assert oq.rho2(u, f) == oq.rho2_literal(u, f)


@given(elements(3), words(max_len=2))
def test_actions_preserve_degree_window(f, u):
    assert oq.rho1(u, f).degree <= f.degree
    assert oq.rho2(u, f).degree <= f.degree


@given(elements(2), words(max_len=2), words(max_len=2))
def test_rho1_is_a_representation(f, u, w):
    assert oq.rho1(u, oq.rho1(w, f)) == oq.rho1(u * w, f)
    assert oq.rho2(u, oq.rho2(w, f)) == oq.rho2(u * w, f)


# -- matrix coefficients and traces

def test_matrix_coefficient_examples():
    assert oq.matrix_coeffs(uq.weyl_module(0, ELL)).elements() == [OqElement.one(ELL)]
    M1 = oq.matrix_coeffs(uq.weyl_module(1, ELL))
    assert M1.dim == 4 and all(M1.contains(x) for x in (a, b, c, d))
    assert oq.matrix_coeffs(uq.tilting_module(4, ELL)).dim == 26


def test_matrix_coefficients_are_bistable():
    for V in (uq.tilting_module(4, ELL), uq.simple_module(4, ELL), uq.dual_weyl_module(3, ELL)):
        M = oq.matrix_coeffs(V)
        for f in M.elements():
            for g in uq.generating_set(ELL):
                u = AlgebraElement.word(ELL, g)
                assert M.contains(oq.rho1(u, f)) and M.contains(oq.rho2(u, f))


def test_matrix_coefficients_of_tensor_are_products():
    V1, V2 = uq.weyl_module(1, ELL), uq.weyl_module(2, ELL)
    M = oq.matrix_coeffs(uq.tensor(V1, V2))
    prods = [x * y for x in oq.matrix_coeffs(V1).elements() for y in oq.matrix_coeffs(V2).elements()]
    assert oq.same_span(M.elements(), prods, ELL)


def test_trace_examples():
    V0, V1 = uq.weyl_module(0, ELL), uq.weyl_module(1, ELL)
    assert oq.trace(V0) == OqElement.one(ELL)
    assert oq.trace(V1) == a + d
    assert oq.trace(uq.tensor(V1, V1)) == (a + d) * (a + d)


def test_trace_multiplicative_and_additive():
    V2, V3 = uq.weyl_module(2, ELL), uq.weyl_module(3, ELL)
    assert oq.trace(uq.tensor(V2, V3)) == oq.trace(V2) * oq.trace(V3)
    L0, L4 = uq.simple_module(0, ELL), uq.simple_module(4, ELL)
    assert oq.trace(uq.tilting_module(4, ELL)) == oq.trace(L0) * 2 + oq.trace(L4)
    assert oq.trace(uq.weyl_module(4, ELL)) == oq.trace(L0) + oq.trace(L4)


def test_trace_is_basis_independent():
    T = uq.tilting_module(4, ELL)
    assert oq.trace(T) == oq.trace(uq.dual(uq.dual(T)))


@pytest.mark.parametrize("ell", [3, 5])
def test_simple_traces_independent(ell):
    traces = [oq.trace(uq.simple_module(n, ell)).terms for n in range(2 * ell + 1)]
    assert rank(traces) == len(traces)


# -- cocommutative elements

def test_cocommutative_examples():
    assert oq.cocommutative_basis(0, 3) == [OqElement.one(3)]
    B = oq.cocommutative_basis(2, 3)
    assert len(B) == 3
    assert oq.same_span(B, [OqElement.one(3), a + d, (a + d) ** 2], 3)
    assert len(oq.cocommutative_basis(5, 5)) == 6


@pytest.mark.parametrize("ell,D", [(3, 4), (5, 3)])
def test_cocommutative_elements_are_central_for_pairing(ell, D):
    # f(u u') = f(u' u) for the basis and products of generators
    rng = random.Random(11)
    G = [E(1), F(1), K, E(ell), F(ell)]
    for f in oq.cocommutative_basis(D, ell):
        for _ in range(10):
            w1 = [rng.choice(G) for _ in range(rng.randint(1, 2))]
            w2 = [rng.choice(G) for _ in range(rng.randint(1, 2))]
            lhs = oq.evaluate(f, AlgebraElement.word(ell, *(w1 + w2)))
            rhs = oq.evaluate(f, AlgebraElement.word(ell, *(w2 + w1)))
            assert lhs == rhs
