import pytest

from orbvar.chevalley import (
    AlgebraElement,
    ChevalleyError,
    adjoint,
    build_chevalley,
    check_rep,
    defining_rep,
    preserves_form,
)
from orbvar.linalg import exact_rank, matmul
from orbvar.rootsys import build_root_system

DIMS = {"A1": 3, "A2": 8, "B2": 10, "G2": 14, "B3": 21, "C3": 21, "D4": 28, "A5": 35, "F4": 52}


@pytest.fixture(scope="module")
def algebras():
    return {name: build_chevalley(build_root_system(name)) for name in DIMS}


@pytest.mark.parametrize("name", sorted(DIMS))
def test_dimension(algebras, name):
    assert algebras[name].dim == DIMS[name]


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "B3", "C3"])
def test_full_jacobi(algebras, name):
    alg = algebras[name]
    d = alg.dim
    assert alg.check_jacobi() == d * (d - 1) * (d - 2) // 6


def test_sampled_jacobi_f4(algebras):
    assert algebras["F4"].sample_jacobi(5000, seed=3) == 5000


def _string_length(rs, r, s):
    p = 0
    while tuple(a - (p + 1) * b for a, b in zip(s, r)) in rs.index:
        p += 1
    return p


@pytest.mark.parametrize("name", ["B2", "G2", "F4"])
def test_constants_oracle(algebras, name):
    # |N(r, s)| = p + 1 where s - p r, ..., s is the r-string through s; N(r, s) = -N(s, r)
    alg = algebras[name]
    rs = alg.rs
    for r in rs.roots:
        for s in rs.roots:
            t = tuple(a + b for a, b in zip(r, s))
            if t in rs.index:
                assert abs(alg.N(r, s)) == _string_length(rs, r, s) + 1
                assert alg.N(r, s) == -alg.N(s, r)
            else:
                assert alg.N(r, s) == 0


def test_max_constants(algebras):
    assert algebras["A1"].max_constant == 0
    assert algebras["B2"].max_constant == 2
    assert algebras["G2"].max_constant == 3


def test_bracket_antisymmetric(algebras):
    alg = algebras["G2"]
    for x in range(alg.dim):
        for y in range(alg.dim):
            a = alg.bracket(alg.basis_element(x), alg.basis_element(y))
            b = alg.bracket(alg.basis_element(y), alg.basis_element(x))
            assert (a + b).is_zero()


def test_cartan_action(algebras):
    alg = algebras["B2"]
    rs = alg.rs
    for i in range(rs.rank):
        h = alg.basis_element(alg.h_basis(i))
        for r in rs.roots:
            got = alg.bracket(h, alg.root_vector(r))
            assert got.coeffs == {alg.root_basis(r): rs.pairing(r, i)} or (rs.pairing(r, i) == 0 and got.is_zero())


def test_adjoint_is_a_representation(algebras):
    alg = algebras["B2"]
    for x in range(alg.dim):
        for y in range(alg.dim):
            ax = adjoint(alg, alg.basis_element(x))
            ay = adjoint(alg, alg.basis_element(y))
            comm = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(matmul(ax, ay), matmul(ay, ax))]
            assert comm == adjoint(alg, AlgebraElement(dict(alg.bracket_basis(x, y))))


def test_regular_nilpotent_adjoint_rank(algebras):
    # sum of simple root vectors is regular: rank(ad e) = dim g - rank
    for name, alg in algebras.items():
        e = AlgebraElement({alg.root_basis(alg.rs.simple_root(i)): 1 for i in range(alg.rs.rank)})
        assert exact_rank(adjoint(alg, e)) == alg.dim - alg.rs.rank


@pytest.mark.parametrize("name,degree", [("A1", 2), ("A3", 4), ("B2", 5), ("B3", 7), ("C2", 4), ("C3", 6), ("D4", 8), ("D5", 10)])
def test_defining_representations(name, degree):
    alg = build_chevalley(build_root_system(name))
    rep = defining_rep(alg)
    assert rep.degree == degree
    assert check_rep(alg, rep) == alg.dim ** 2
    assert preserves_form(rep, name[0])


def test_defining_rep_refused_for_exceptional(algebras):
    with pytest.raises(ChevalleyError):
        defining_rep(algebras["G2"])


def test_cached_constants_reproduce_table(algebras):
    alg = algebras["F4"]
    again = type(alg)(alg.rs, constants=alg.constants)
    assert again._table == alg._table
    bad = dict(alg.constants)
    k = next(iter(bad))
    bad[k] = -bad[k]
    with pytest.raises(ChevalleyError):
        type(alg)(alg.rs, constants=bad)
