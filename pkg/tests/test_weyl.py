import itertools
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbvar.rootsys import build_root_system
from orbvar.rsk import left_descents, permutation_from_word
from orbvar.weyl import WeylError, WeylGroup, weyl_order

ORDERS = {"A1": 2, "A3": 24, "A5": 720, "B2": 8, "B3": 48, "C3": 48, "D4": 192, "G2": 12, "F4": 1152, "D5": 1920}


@pytest.fixture(scope="module")
def groups():
    return {}


def group(groups, name):
    if name not in groups:
        groups[name] = WeylGroup(build_root_system(name))
    return groups[name]


@pytest.mark.parametrize("name,order", sorted(ORDERS.items()))
def test_group_orders(groups, name, order):
    W = group(groups, name)
    assert len(W) == order == weyl_order(name[0], int(name[1:]))
    assert len(W.longest) == len(W.rs.positive)


def test_weyl_order_formula_small_cases():
    # |W(A_n)| = (n+1)!, |W(B_n)| = 2^n n!, |W(D_n)| = 2^(n-1) n!
    for n in range(1, 7):
        assert weyl_order("A", n) == factorial(n + 1)
        assert weyl_order("B", n) == weyl_order("C", n) == 2 ** n * factorial(n)
    for n in range(4, 8):
        assert weyl_order("D", n) == 2 ** (n - 1) * factorial(n)
    assert weyl_order("E", 8) == 696729600


def test_cutoff_refuses_large_groups():
    with pytest.raises(WeylError):
        WeylGroup(build_root_system("E8"))
    with pytest.raises(WeylError):
        WeylGroup(build_root_system("D4"), cutoff=100)


def test_lengths_equal_inversion_counts(groups):
    for name in ("B3", "G2", "D4"):
        W = group(groups, name)
        for w in W:
            assert len(w) == len(W.inversion_indices(w)) == W.length_from_perm(w)


def test_words_are_lex_least_reduced(groups):
    W = group(groups, "A3")
    for w in W:
        words = [x for x in itertools.product(range(3), repeat=len(w)) if W.from_word(x) == w]
        assert w.word == min(words)


def test_type_a_against_permutations(groups):
    # oracle: S_4 acting on 1..4; length = inversions, tau = left descents
    W = group(groups, "A3")
    seen = set()
    for w in W:
        p = permutation_from_word(w.word, 4)
        seen.add(p)
        inv = sum(1 for i in range(4) for j in range(i + 1, 4) if p[i] > p[j])
        assert inv == len(w)
        assert W.tau(w) == left_descents(p)
    assert len(seen) == 24


def test_tau_is_left_descent_set(groups):
    W = group(groups, "F4")
    for w in W.elements[::37]:
        for i in range(4):
            shorter = len(W.mul(W.simple(i), w)) < len(w)
            assert (i in W.tau(w)) == shorter


def test_steinberg_and_inversion_partition_positive_roots(groups):
    W = group(groups, "D4")
    pos = frozenset(W.rs.positive)
    for w in W:
        a, b = W.inversion_indices(w), W.steinberg_indices(w)
        assert a | b == pos and not a & b


def test_d4_tau_values(groups):
    W = group(groups, "D4")
    assert W.tau(W.parse_word("s1s3s1")) == {0, 2}
    w = W.parse_word("s1s2s4s3s1s2s4")
    assert len(w) == 7 and W.tau(w) == {0, 1, 3}
    w = W.parse_word("s3s1s2s4s3s1s2s4s3")
    assert len(w) == 9 and W.tau(w) == {2}


def test_rank_two_tau_values(groups):
    B2 = group(groups, "B2")
    assert B2.tau(B2.simple(0)) == {0}
    assert B2.tau(B2.from_word([1, 0, 1])) == {1}
    G2 = group(groups, "G2")
    assert G2.tau(G2.simple(1)) == {1}
    assert G2.tau(G2.from_word([0, 1, 0, 1, 0])) == {0}


def test_parse_word_round_trip(groups):
    W = group(groups, "B3")
    for w in W:
        assert W.parse_word(w.word_str()) == w
    assert W.identity.word_str() == "e"
    with pytest.raises(WeylError):
        W.parse_word("s4")


@pytest.mark.parametrize("name,subset", [("B3", (1, 2)), ("F4", (1, 2)), ("D5", (1, 2, 3, 4)), ("A4", (0, 2))])
def test_parabolic_data(groups, name, subset):
    W = group(groups, name)
    par = W.parabolic(subset)
    assert len(par.W_I) * len(par.D_I) == len(W)
    w0I = max(par.W_I, key=len)
    assert par.d_m == W.mul(w0I, W.longest)
    for d in par.D_I:
        assert not W.tau(d) & set(subset)


word_strategy = st.lists(st.integers(0, 3), max_size=14)


@settings(max_examples=150, deadline=None)
@given(u=word_strategy, v=word_strategy)
def test_multiplication_matches_concatenation(u, v):
    W = _F4
    assert W.mul(W.from_word(u), W.from_word(v)) == W.from_word(u + v)
    assert len(W.from_word(u + v)) <= len(u) + len(v)
    assert (len(W.from_word(u)) - len(u)) % 2 == 0


@settings(max_examples=100, deadline=None)
@given(u=word_strategy, subset=st.sets(st.integers(0, 3)))
def test_parabolic_decomposition_property(u, subset):
    W = _F4
    w = W.from_word(u)
    w_I, d = W.parabolic_decompose(w, subset)
    assert W.mul(w_I, d) == w
    assert len(w) == len(w_I) + len(d)
    assert W.in_parabolic(w_I, subset)
    assert W.check_projection_identity(w, subset)


@settings(max_examples=100, deadline=None)
@given(u=word_strategy)
def test_inverse(u):
    W = _F4
    w = W.from_word(u)
    assert W.mul(w, W.inverse(w)) == W.identity
    assert W.inverse(w) == W.from_word(reversed(u))


_F4 = WeylGroup(build_root_system("F4"))
