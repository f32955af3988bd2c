import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbvar.nilorbits import (
    OrbitError,
    OrbitId,
    classical_poset,
    dominance_leq,
    jordan_from_ranks,
    jordan_type,
    orbit_dim,
    partitions,
    signature_poset,
    transpose,
    valid_partitions,
)
from orbvar.linalg import exact_rank, matmul

PARTITION_NUMBERS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_partition_counts():
    for n, p in enumerate(PARTITION_NUMBERS):
        assert len(partitions(n)) == p


@pytest.mark.parametrize("name,count", [("B2", 4), ("B3", 7), ("C2", 4), ("C3", 8), ("D4", 10), ("A4", 7)])
def test_orbit_counts(name, count):
    # D4 has 12 orbits: the two very even classes each carry one flagged node
    assert len(valid_partitions(name[0], int(name[1:]))) == count


def test_very_even_flag():
    d4 = {o.partition: o for o in valid_partitions("D", 4)}
    assert d4[(4, 4)].very_even and d4[(2, 2, 2, 2)].very_even
    assert not d4[(3, 3, 1, 1)].very_even
    assert d4[(4, 4)].label == "(4,4)*"


def test_invalid_partitions_rejected():
    with pytest.raises(OrbitError):
        OrbitId("B", 2, (2, 1, 1, 1))
    with pytest.raises(OrbitError):
        OrbitId("C", 2, (3, 1))
    with pytest.raises(OrbitError):
        OrbitId("B", 2, partition=(5,), signature=(8,))


def test_dominance():
    assert dominance_leq((2, 2, 1), (3, 1, 1))
    assert not dominance_leq((3, 1, 1, 1), (2, 2, 2))
    assert not dominance_leq((2, 2, 2), (3, 1, 1, 1))
    with pytest.raises(OrbitError):
        dominance_leq((2, 1), (2, 2))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 9).flatmap(lambda n: st.tuples(st.sampled_from(partitions(n)), st.sampled_from(partitions(n)))))
def test_dominance_reverses_under_transpose(pair):
    a, b = pair
    assert dominance_leq(a, b) == dominance_leq(transpose(b), transpose(a))


@pytest.mark.parametrize("name,dims", [
    ("B2", {(5,): 8, (3, 1, 1): 6, (2, 2, 1): 4, (1, 1, 1, 1, 1): 0}),
    ("C2", {(4,): 8, (2, 2): 6, (2, 1, 1): 4, (1, 1, 1, 1): 0}),
    ("D4", {(7, 1): 24, (3, 3, 1, 1): 18, (3, 2, 2, 1): 16, (2, 2, 2, 2): 12, (2, 2, 1, 1, 1, 1): 10}),
])
def test_known_dimensions(name, dims):
    fam, rank = name[0], int(name[1:])
    for lam, d in dims.items():
        assert orbit_dim(OrbitId(fam, rank, lam)) == d


def _block_nilpotent(lam):
    n = sum(lam)
    m = [[0] * n for _ in range(n)]
    start = 0
    for p in lam:
        for i in range(start, start + p - 1):
            m[i][i + 1] = 1
        start += p
    return m


def _centralizer_dim(m):
    # dimension of {X : MX = XM}, as the nullity of X -> MX - XM on n x n matrices
    n = len(m)
    rows = []
    for i in range(n):
        for j in range(n):
            row = [0] * (n * n)
            for k in range(n):
                row[k * n + j] += m[i][k]
                row[i * n + k] -= m[k][j]
            rows.append(row)
    return n * n - exact_rank(rows)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_type_a_dimension_against_centralizer(n):
    for lam in partitions(n):
        assert orbit_dim(OrbitId("A", n - 1, lam)) == n * n - _centralizer_dim(_block_nilpotent(lam))


def _unimodular(n, rng):
    p = [[int(i == j) for j in range(n)] for i in range(n)]
    q = [row[:] for row in p]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        for k in range(n):
            p[i][k] += c * p[j][k]  # row op on P
            q[k][j] -= c * q[k][i]  # inverse column op on P^-1
    return p, q


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 7).flatmap(lambda n: st.sampled_from(partitions(n))), st.integers(0, 10 ** 6))
def test_jordan_type_conjugation_invariant(lam, seed):
    m = _block_nilpotent(lam)
    p, q = _unimodular(len(m), random.Random(seed))
    assert matmul(p, q) == [[int(i == j) for j in range(len(m))] for i in range(len(m))]
    assert jordan_type(matmul(matmul(p, m), q)) == tuple(lam)


def test_jordan_type_rejects_non_nilpotent():
    with pytest.raises(OrbitError):
        jordan_type([[1, 0], [0, 0]])


def test_jordan_from_ranks():
    assert jordan_from_ranks(5, [2, 0]) == (2, 2, 1)
    assert jordan_from_ranks(5, [3, 1, 0]) == (3, 2)
    with pytest.raises(OrbitError):
        jordan_from_ranks(5, [3, 2])


def test_so5_covering_pairs():
    poset = classical_poset("B", 2)
    labels = {(hi.label, lo.label) for hi, lo in poset.covering_pairs()}
    assert labels == {("(5)", "(3,1,1)"), ("(3,1,1)", "(2,2,1)"), ("(2,2,1)", "(1,1,1,1,1)")}


def test_d4_poset_covering():
    poset = classical_poset("D", 4)
    o = {x.partition: x for x in poset.orbits}
    assert poset.is_covering(o[(3, 3, 1, 1)], o[(3, 2, 2, 1)])
    assert not poset.is_covering(o[(3, 3, 1, 1)], o[(2, 2, 2, 2)])
    assert poset.maximum() == [o[(7, 1)]]
    assert poset.minimum() == [o[(1,) * 8]]


def test_signature_poset_is_heuristic():
    orbs = [OrbitId("G", 2, signature=s) for s in [(12, 10, 8), (6, 1), (8, 5, 2), ()]]
    poset = signature_poset(orbs)
    assert poset.heuristic
    zero = OrbitId("G", 2, signature=())
    assert poset.minimum() == [zero]
    assert '"heuristic": true' in poset.to_json()


@pytest.mark.parametrize("name", ["B2", "B3", "C3", "D4"])
def test_every_orbit_is_reached_by_a_steinberg_space(lab, name):
    # surjectivity of w -> O_w doubles as an oracle for the validity rules and dimensions
    data = lab.steinberg(name)
    seen = set()
    for obs in data.observe_all():
        seen.add(obs.orbit.partition)
        assert orbit_dim(obs.orbit) == obs.ad_rank
    fam, rank = name[0], int(name[1:])
    assert seen == {o.partition for o in valid_partitions(fam, rank)}
