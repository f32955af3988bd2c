from fractions import Fraction
from itertools import combinations, product

import pytest

from orbvar.rootsys import (
    RootSystem,
    RootSystemError,
    RootSystemSpec,
    build_root_system,
    cartan_matrix,
    subsystem_type,
)

ROOT_COUNTS = {
    "A1": 2, "A2": 6, "A5": 30, "B2": 8, "B3": 18, "C3": 18, "D4": 24,
    "D5": 40, "G2": 12, "F4": 48, "E6": 72,
}


@pytest.mark.parametrize("name,count", sorted(ROOT_COUNTS.items()))
def test_root_counts(name, count):
    rs = build_root_system(name)
    assert len(rs.roots) == count
    assert len(rs.positive) == count // 2


def _euclidean(family, n):
    """Simple roots and full root set of A/B/C/D in R^m (independent of the Cartan closure)."""
    def e(i, m):
        v = [0] * m
        v[i] = 1
        return v

    if family == "A":
        m = n + 1
        simple = [tuple(a - b for a, b in zip(e(i, m), e(i + 1, m))) for i in range(n)]
        roots = {tuple(a - b for a, b in zip(e(i, m), e(j, m))) for i in range(m) for j in range(m) if i != j}
        return simple, roots
    m = n
    pm = set()
    for i, j in combinations(range(m), 2):
        for si, sj in product((1, -1), repeat=2):
            v = [0] * m
            v[i], v[j] = si, sj
            pm.add(tuple(v))
    simple = [tuple(a - b for a, b in zip(e(i, m), e(i + 1, m))) for i in range(n - 1)]
    if family == "B":
        simple.append(tuple(e(n - 1, m)))
        roots = pm | {tuple(s * x for x in e(i, m)) for i in range(m) for s in (1, -1)}
    elif family == "C":
        simple.append(tuple(2 * x for x in e(n - 1, m)))
        roots = pm | {tuple(2 * s * x for x in e(i, m)) for i in range(m) for s in (1, -1)}
    else:
        simple.append(tuple(a + b for a, b in zip(e(n - 2, m), e(n - 1, m))))
        roots = pm
    return simple, roots


def _solve(simple, v):
    # coordinates of v in the simple-root basis, by exact least squares on a square subsystem
    n = len(simple)
    gram = [[Fraction(sum(a * b for a, b in zip(s, t))) for t in simple] for s in simple]
    rhs = [Fraction(sum(a * b for a, b in zip(s, v))) for s in simple]
    for c in range(n):
        p = next(r for r in range(c, n) if gram[r][c])
        gram[c], gram[p] = gram[p], gram[c]
        rhs[c], rhs[p] = rhs[p], rhs[c]
        for r in range(n):
            if r != c and gram[r][c]:
                f = gram[r][c] / gram[c][c]
                gram[r] = [x - f * y for x, y in zip(gram[r], gram[c])]
                rhs[r] -= f * rhs[c]
    return tuple(int(rhs[i] / gram[i][i]) for i in range(n))


@pytest.mark.parametrize("name", ["A3", "B2", "B3", "C3", "D4", "D5"])
def test_roots_match_euclidean_realisation(name):
    rs = build_root_system(name)
    simple, roots = _euclidean(rs.spec.family, rs.rank)
    if name == "D4":
        # central node sits at index 2: reorder e1-e2, e3-e4, e2-e3, e3+e4
        simple = [simple[0], simple[2], simple[1], simple[3]]
    coords = {_solve(simple, v) for v in roots}
    assert coords == set(rs.roots)
    for i, s in enumerate(simple):
        for j, t in enumerate(simple):
            # inner products agree up to one global scale
            assert rs.inner(rs.simple_root(i), rs.simple_root(j)) * sum(x * x for x in simple[-1]) == \
                sum(a * b for a, b in zip(s, t)) * rs.norm(rs.simple_root(rs.rank - 1))


@pytest.mark.parametrize("name,highest", [
    ("B3", (1, 2, 2)), ("C3", (2, 2, 1)), ("D4", (1, 1, 2, 1)), ("D5", (1, 2, 2, 1, 1)),
    ("G2", (3, 2)), ("F4", (2, 3, 4, 2)), ("E6", (1, 2, 2, 3, 2, 1)),
])
def test_highest_root(name, highest):
    assert build_root_system(name).highest_root() == highest


def test_b2_lengths_and_reflection():
    rs = build_root_system("B2")
    assert rs.is_long(rs.simple_root(0)) and not rs.is_long(rs.simple_root(1))
    # reflecting the long simple root in the short one gives beta + 2 alpha
    assert rs.reflect(1, (1, 0)) == (1, 2)
    assert rs.norm((1, 0)) == 2 * rs.norm((0, 1))


def test_g2_lengths():
    rs = build_root_system("G2")
    assert not rs.is_long(rs.simple_root(0)) and rs.is_long(rs.simple_root(1))
    assert rs.norm((0, 1)) == 3 * rs.norm((1, 0))


def test_d4_reflection_through_central_node():
    rs = build_root_system("D4")
    assert rs.reflect(2, (1, 0, 0, 0)) == (1, 0, 1, 0)


def test_reflection_is_involution_and_preserves_roots():
    for name in ("B3", "G2", "F4"):
        rs = build_root_system(name)
        for i in range(rs.rank):
            for r in rs.roots:
                s = rs.reflect(i, r)
                assert s in rs.index
                assert rs.reflect(i, s) == r
                assert rs.norm(s) == rs.norm(r)


def test_reflect_rejects_non_roots():
    rs = build_root_system("A2")
    with pytest.raises(RootSystemError):
        rs.reflect(0, (2, 0))


def test_canonical_order_is_height_then_lex():
    rs = build_root_system("B3")
    keys = [(sum(r), r) for r in rs.roots]
    assert keys == sorted(keys)
    assert all(sum(rs.roots[k]) > 0 for k in rs.positive)


@pytest.mark.parametrize("label", ["X3", "A0", "B", "E9", "G3", "D3"])
def test_invalid_types_rejected(label):
    with pytest.raises(RootSystemError):
        spec = RootSystemSpec.parse(label)
        spec.validate()
        build_root_system(spec)


def test_nonstandard_cartan_rejected():
    with pytest.raises(RootSystemError):
        RootSystemSpec("A", 2, ((2, 1), (1, 2))).validate()


def test_serialisation_round_trip():
    rs = build_root_system("F4")
    back = RootSystem.from_dict(rs.to_dict())
    assert back.roots == rs.roots
    assert back.cartan == rs.cartan


def test_cartan_matrix_symmetrizable():
    for fam, n in [("B", 4), ("C", 4), ("F", 4), ("G", 2)]:
        a = cartan_matrix(fam, n)
        rs = build_root_system(f"{fam}{n}")
        d = rs.lengths
        for i in range(n):
            for j in range(n):
                assert d[i] * a[i][j] == d[j] * a[j][i]


def test_subsystem_types():
    assert subsystem_type(build_root_system("B3"), (1, 2)) == "B2"
    assert subsystem_type(build_root_system("C3"), (1, 2)) == "B2"
    assert subsystem_type(build_root_system("F4"), (1, 2)) == "B2"
    assert subsystem_type(build_root_system("D5"), (1, 2, 3, 4)) == "D4"
    assert subsystem_type(build_root_system("A4"), (0, 1)) == "A2"
    assert subsystem_type(build_root_system("A4"), (0, 2)) == "reducible"
