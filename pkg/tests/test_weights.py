import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oqroot.weights import (
    AffineReflection,
    Weight,
    dot_reflect,
    in_fundamental_domain,
    is_steinberg_family,
    linkage_representative,
    orbit_dominant,
    positive_roots,
    sl2_prime,
    sl2_sequence,
    sort_key,
)

import oracles

ALPHA1, ALPHA2, THETA = (0, 0), (1, 1), (0, 1)


def rank1_dot(m, n, ell):
    return dot_reflect(AffineReflection((0, 0), m, ell), Weight.of(n)).coords[0]


def test_rank1_dot_examples():
    assert rank1_dot(1, 0, 3) == 4
    assert rank1_dot(0, -1, 3) == -1


@given(st.integers(-40, 40), st.integers(-5, 5), st.sampled_from([3, 5, 7]))
def test_rank1_dot_formula(n, m, ell):
    assert rank1_dot(m, n, ell) == -n - 2 + 2 * m * ell


def test_rank2_dot_example():
    assert dot_reflect(AffineReflection(ALPHA1, 0, 5), Weight.of(3, 1)) == Weight.of(-5, 5)


@given(st.integers(-12, 12), st.integers(-12, 12), st.integers(-3, 3), st.sampled_from([0, 1]))
def test_rank2_dot_matches_matrix_oracle(a, b, m, i):
    beta = ALPHA1 if i == 0 else ALPHA2
    got = dot_reflect(AffineReflection(beta, m, 5), Weight.of(a, b))
    assert got.coords == oracles.dot_rank2((a, b), i, 5, m)


@given(st.integers(-12, 12), st.integers(-12, 12), st.sampled_from(positive_roots(2)))
def test_linear_reflections_are_involutions(a, b, beta):
    r = AffineReflection(beta, 0, 5)
    w = Weight.of(a, b)
    assert dot_reflect(r, dot_reflect(r, w)) == w


@given(st.integers(-30, 30), st.integers(-4, 4))
def test_affine_reflections_are_involutions_rank1(n, m):
    r = AffineReflection((0, 0), m, 3)
    assert dot_reflect(r, dot_reflect(r, Weight.of(n))) == Weight.of(n)


def test_fundamental_domain_rank1():
    assert in_fundamental_domain(Weight.of(-1), 3)
    assert in_fundamental_domain(Weight.of(2), 3)
    assert not in_fundamental_domain(Weight.of(3), 3)
    assert [n for n in range(-5, 10) if in_fundamental_domain(Weight.of(n), 3)] == [-1, 0, 1, 2]


def test_fundamental_domain_rank2_uses_highest_root():
    # (4,0) + rho = (5,1) pairs to 6 > 5 with the highest root
    assert not in_fundamental_domain(Weight.of(4, 0), 5)
    assert in_fundamental_domain(Weight.of(3, 0), 5)
    assert in_fundamental_domain(Weight.of(-1, -1), 5)


@pytest.mark.parametrize("w,ell,want", [
    (0, 3, [0, 4, 6, 10, 12]),
    (-1, 3, [5, 11, 17]),
    (-1, 5, [9, 19, 29]),
    (2, 3, [2, 8, 14]),
    (1, 5, [1, 7, 11, 17, 21]),
])
def test_rank1_orbits(w, ell, want):
    bound = want[-1] + 1
    got = [c[0] for c in orbit_dominant(Weight.of(w), ell, bound).coords()]
    assert got == want == oracles.rank1_orbit(w, ell, bound - 1)


def test_orbit_needs_fundamental_domain():
    with pytest.raises(ValueError):
        orbit_dominant(Weight.of(3), 3, 10)


@pytest.mark.parametrize("ell", [3, 5, 7])
def test_rank1_partition(ell):
    reps = [w for w in range(-1, ell)]
    members = {}
    for w in reps:
        for c in orbit_dominant(Weight.of(w), ell, 51).coords():
            members.setdefault(c[0], []).append(w)
    assert sorted(members) == list(range(51))
    assert all(len(v) == 1 for v in members.values())


def test_rank2_partition():
    ell, top = 5, 12
    bound = 2 * top + 2
    reps = [w for w in itertools.product(range(-1, ell), repeat=2) if in_fundamental_domain(Weight(w), ell)]
    owner = {}
    for r in reps:
        for c in orbit_dominant(Weight(r), ell, bound).coords():
            if max(c) <= top:
                owner.setdefault(tuple(c), []).append(r)
    assert set(owner) == set(itertools.product(range(top + 1), repeat=2))
    assert all(len(v) == 1 for v in owner.values())
    for w, (r,) in list(owner.items())[:40]:
        assert linkage_representative(Weight(w), ell) == Weight(r)


def test_rank2_orbit_is_a_linear_extension():
    orbit = orbit_dominant(Weight.of(0, 0), 5, 20).members
    for i, x in enumerate(orbit):
        for y in orbit[:i]:
            # y before x never has x <= y in dominance (difference a sum of positive roots)
            d = (y - x).coords
            a1 = (2 * d[0] + d[1]) / 3
            a2 = (d[0] + 2 * d[1]) / 3
            assert not (a1 >= 0 and a2 >= 0 and a1 == int(a1) and a2 == int(a2) and (a1 or a2))
        assert sort_key(x) >= sort_key(orbit[i - 1]) if i else True


def test_sl2_prime_examples():
    assert sl2_prime(3, 3) == 1
    assert sl2_prime(2, 3) is None
    assert sl2_prime(7, 5) == 1
    assert sl2_prime(1, 3) is None


@given(st.integers(0, 200), st.sampled_from([3, 5, 7]))
def test_sl2_prime_decreases(n, ell):
    p = sl2_prime(n, ell)
    if p is not None:
        assert 0 <= p < n
        assert sl2_prime(n, ell) == (ell - 2 - n % ell) + ell * (n // ell - 1)


def test_sl2_sequence_examples():
    assert sl2_sequence(0, 3, 5) == [0, 4, 6, 10, 12]
    assert sl2_sequence(1, 3, 4) == [1, 3, 7, 9]
    with pytest.raises(ValueError):
        sl2_sequence(2, 3, 3)


@pytest.mark.parametrize("ell", [3, 5, 7])
def test_sequence_agrees_with_orbit(ell):
    for n in range(ell - 1):
        seq = sl2_sequence(n, ell, 6)
        assert seq[0] == n
        assert all(sl2_prime(b, ell) == a for a, b in zip(seq, seq[1:]))
        assert seq == oracles.rank1_orbit(n, ell, seq[-1])


def test_steinberg_family():
    assert is_steinberg_family(Weight.of(2), 3)
    assert not is_steinberg_family(Weight.of(4), 3)
    assert is_steinberg_family(Weight.of(4, 4), 5)
    assert is_steinberg_family(Weight.of(9, 4), 5)
    assert not is_steinberg_family(Weight.of(4, 3), 5)
