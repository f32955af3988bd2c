"""Chevalley bases with integer structure constants.

Basis order: root vectors ``e_r`` for negative roots (canonical order), then
the simple coroots ``h_1 .. h_n``, then ``e_r`` for positive roots.  Because
the canonical root order lists negative roots first, root index ``k`` maps to
basis index ``k`` for negative roots and ``k + rank`` for positive ones.

Structure constants are fixed by the extraspecial-pair algorithm: for each
positive non-simple root ``xi`` take the decomposition ``xi = a + b`` with
``a`` earliest in the canonical order and set ``N[a, b] = p + 1`` (positive
sign), then derive every other constant from the standard identities::

    N[r, s] = -N[s, r]
    N[-r, -s] = -N[r, s]
    N[r, s] / (t, t) = N[s, t] / (r, r) = N[t, r] / (s, s)      (r + s + t = 0)
    sum over the three pairings of N N / (pair sum, pair sum) = 0  (r + s + t + u = 0)
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import exact_rank, matmul
from .rootsys import Root, RootSystem


class ChevalleyError(RuntimeError):
    pass


@dataclass
class AlgebraElement:
    coeffs: dict[int, Fraction | int] = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {k: v for k, v in self.coeffs.items() if v}

    @property
    def support(self) -> set[int]:
        return set(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return AlgebraElement(out)

    def scale(self, c) -> "AlgebraElement":
        return AlgebraElement({k: c * v for k, v in self.coeffs.items()})


@dataclass(frozen=True)
class MatrixRep:
    kind: str
    degree: int
    matrices: tuple  # one square matrix per basis element

    def image(self, x: AlgebraElement) -> list[list]:
        n = self.degree
        out = [[0] * n for _ in range(n)]
        for k, c in x.coeffs.items():
            m = self.matrices[k]
            for i in range(n):
                row = m[i]
                orow = out[i]
                for j in range(n):
                    if row[j]:
                        orow[j] += c * row[j]
        return out


class ChevalleyAlgebra:
    def __init__(self, rs: RootSystem, check: bool = True, constants: dict[tuple[int, int], int] | None = None):
        self.rs = rs
        self.rank = rs.rank
        self.nneg = len(rs.positive)
        self.dim = len(rs.roots) + rs.rank
        self._norm = {r: rs.norm(r) for r in rs.roots}
        self._extraspecial: dict[Root, tuple[Root, Root, int]] = {}
        self._npos: dict[tuple[Root, Root], int] = {}
        self._find_extraspecial()
        self.constants: dict[tuple[int, int], int] = {}
        if constants is not None:
            # tables loaded from a cache; verify_constants still guards them
            self.constants = dict(constants)
        else:
            for a in rs.roots:
                for b in rs.roots:
                    s = _add(a, b)
                    if s in rs.index:
                        self.constants[rs.index[a], rs.index[b]] = self.N(a, b)
        self._table = self._build_table()
        if check:
            self.verify_constants()

    # -- indexing ---------------------------------------------------------

    def root_basis(self, r: Root) -> int:
        k = self.rs.index[tuple(r)]
        return k if k < self.nneg else k + self.rank

    def h_basis(self, i: int) -> int:
        return self.nneg + i

    def basis_root(self, b: int) -> Root | None:
        if b < self.nneg:
            return self.rs.roots[b]
        if b < self.nneg + self.rank:
            return None
        return self.rs.roots[b - self.rank]

    def basis_label(self, b: int) -> str:
        r = self.basis_root(b)
        if r is None:
            return f"h{b - self.nneg + 1}"
        return "e" + "".join(str(c) if c >= 0 else f"({c})" for c in r)

    @property
    def positive_basis(self) -> list[int]:
        return list(range(self.nneg + self.rank, self.dim))

    @property
    def borel_basis(self) -> list[int]:
        return list(range(self.nneg, self.dim))

    # -- structure constants ----------------------------------------------

    def _find_extraspecial(self):
        rs = self.rs
        pos = rs.positive_roots
        for xi in pos:
            if sum(xi) == 1:
                continue
            for a in pos:
                b = _sub(xi, a)
                if b in rs.index and sum(b) > 0:
                    p = 0
                    while _sub(b, _scale(a, p + 1)) in rs.index:
                        p += 1
                    self._extraspecial[xi] = (a, b, p)
                    break

    def _string_p(self, r: Root, s: Root) -> int:
        """Largest p with ``s - p r`` a root."""
        p = 0
        while _sub(s, _scale(r, p + 1)) in self.rs.index:
            p += 1
        return p

    def N(self, r: Root, s: Root) -> int:
        """Structure constant with ``[e_r, e_s] = N(r, s) e_{r+s}``; 0 if ``r+s`` is not a root."""
        t = _add(r, s)
        if t not in self.rs.index:
            return 0
        rpos, spos = sum(r) > 0, sum(s) > 0
        if rpos and spos:
            return self._N_positive(r, s)
        if not rpos and not spos:
            return -self._N_positive(_neg(r), _neg(s))
        if not rpos:
            return -self.N(s, r)
        # r > 0 > s
        t = _neg(t)
        nr, ns, nt = self._norm[r], self._norm[s], self._norm[t]
        if sum(t) < 0:
            val = Fraction(nt, nr) * self.N(s, t)
        else:
            val = Fraction(nt, ns) * self.N(t, r)
        if val.denominator != 1:
            raise ChevalleyError(f"non-integral constant N{r, s} = {val}")
        return int(val)

    def _N_positive(self, r: Root, s: Root) -> int:
        key = (r, s)
        got = self._npos.get(key)
        if got is not None:
            return got
        xi = _add(r, s)
        a, b, p = self._extraspecial[xi]
        if (r, s) == (a, b):
            val = p + 1
        elif (r, s) == (b, a):
            val = -(p + 1)
        else:
            na, nb = _neg(a), _neg(b)
            acc = Fraction(0)
            sa = _add(s, na)
            if sa in self.rs.index:
                acc += Fraction(self.N(s, na) * self.N(r, nb), self._norm[sa])
            ra = _add(r, na)
            if ra in self.rs.index:
                acc += Fraction(self.N(na, r) * self.N(s, nb), self._norm[ra])
            q = -self._norm[xi] * acc / self.N(na, nb)
            if q.denominator != 1:
                raise ChevalleyError(f"non-integral constant N{r, s} = {q}")
            val = int(q)
        self._npos[key] = val
        return val

    def verify_constants(self) -> None:
        rs = self.rs
        for (i, j), n in self.constants.items():
            a, b = rs.roots[i], rs.roots[j]
            if self.constants[j, i] != -n:
                raise ChevalleyError(f"antisymmetry fails for {a}, {b}")
            if abs(n) != self._string_p(a, b) + 1:
                raise ChevalleyError(f"|N{a, b}| = {abs(n)} but string length gives {self._string_p(a, b) + 1}")

    # -- bracket ----------------------------------------------------------

    def _build_table(self) -> list[list[tuple[tuple[int, int], ...]]]:
        rs = self.rs
        dim = self.dim
        table = [[() for _ in range(dim)] for _ in range(dim)]
        for x in range(dim):
            rx = self.basis_root(x)
            for y in range(dim):
                ry = self.basis_root(y)
                out: list[tuple[int, int]] = []
                if rx is None and ry is None:
                    pass
                elif rx is None:
                    c = rs.pairing(ry, x - self.nneg)
                    if c:
                        out.append((y, c))
                elif ry is None:
                    c = rs.pairing(rx, y - self.nneg)
                    if c:
                        out.append((x, -c))
                elif _add(rx, ry) == (0,) * self.rank:
                    for i, c in enumerate(rs.coroot_coeffs(rx)):
                        if c:
                            out.append((self.h_basis(i), c))
                else:
                    s = _add(rx, ry)
                    if s in rs.index:
                        out.append((self.root_basis(s), self.constants[rs.index[rx], rs.index[ry]]))
                table[x][y] = tuple(out)
        return table

    def bracket_basis(self, x: int, y: int) -> tuple[tuple[int, int], ...]:
        return self._table[x][y]

    def bracket(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        out: dict[int, Fraction | int] = {}
        for i, a in x.coeffs.items():
            row = self._table[i]
            for j, b in y.coeffs.items():
                for k, c in row[j]:
                    out[k] = out.get(k, 0) + a * b * c
        return AlgebraElement(out)

    def basis_element(self, b: int) -> AlgebraElement:
        return AlgebraElement({b: 1})

    def root_vector(self, r: Root) -> AlgebraElement:
        return self.basis_element(self.root_basis(r))

    def jacobi_violation(self, x: int, y: int, z: int) -> AlgebraElement:
        ex, ey, ez = (self.basis_element(b) for b in (x, y, z))
        br = self.bracket
        return br(ex, br(ey, ez)) + br(ey, br(ez, ex)) + br(ez, br(ex, ey))

    def check_jacobi(self, triples: Iterable[tuple[int, int, int]] | None = None) -> int:
        """Check the Jacobi identity; raises on the first failing triple, returns the count checked."""
        if triples is None:
            d = self.dim
            triples = ((x, y, z) for x in range(d) for y in range(x + 1, d) for z in range(y + 1, d))
        n = 0
        for t in triples:
            v = self.jacobi_violation(*t)
            if not v.is_zero():
                labels = tuple(self.basis_label(b) for b in t)
                raise ChevalleyError(f"Jacobi identity fails on {labels}: {v.coeffs}")
            n += 1
        return n

    def sample_jacobi(self, count: int, seed: int = 0) -> int:
        rng = random.Random(seed)
        d = self.dim
        return self.check_jacobi(
            tuple(rng.randrange(d) for _ in range(3)) for _ in range(count)
        )

    @property
    def max_constant(self) -> int:
        return max((abs(v) for v in self.constants.values()), default=0)

    def to_dict(self) -> dict:
        return {
            "type": self.rs.name,
            "constants": sorted([i, j, n] for (i, j), n in self.constants.items()),
        }


def build_chevalley(rs: RootSystem, check: bool = True) -> ChevalleyAlgebra:
    return ChevalleyAlgebra(rs, check=check)


def adjoint(alg: ChevalleyAlgebra, x: AlgebraElement) -> list[list]:
    """Matrix of ``ad x`` in the Chevalley basis (column j = [x, b_j])."""
    d = alg.dim
    m = [[0] * d for _ in range(d)]
    table = alg._table
    for i, a in x.coeffs.items():
        row = table[i]
        for j in range(d):
            for k, c in row[j]:
                m[k][j] += a * c
    return m


def element_from_roots(alg: ChevalleyAlgebra, coeffs: Mapping[Root, int]) -> AlgebraElement:
    return AlgebraElement({alg.root_basis(r): c for r, c in coeffs.items()})


# -- defining representations ---------------------------------------------


def _E(n, i, j, c=1):
    m = [[0] * n for _ in range(n)]
    m[i][j] = c
    return m


def _madd(a, b, cb=1):
    return [[x + cb * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _comm(a, b):
    return _madd(matmul(a, b), matmul(b, a), -1)


def _transpose(a):
    return [list(r) for r in zip(*a)]


def _mscale(a, c):
    return [[c * x for x in row] for row in a]


def _classical_generators(family: str, rank: int) -> tuple[int, list[list[list[int]]]]:
    """Raising generators of the classical matrix models in Bourbaki order."""
    n = rank
    if family == "A":
        N = n + 1
        return N, [_E(N, i, i + 1) for i in range(n)]

    def mirror(N, i):
        return N - 1 - i

    if family in "BD":
        N = 2 * n + 1 if family == "B" else 2 * n
        gens = []
        for i in range(n - 1):
            gens.append(_madd(_E(N, i, i + 1), _E(N, mirror(N, i + 1), mirror(N, i)), -1))
        if family == "B":
            gens.append(_madd(_E(N, n - 1, n), _E(N, n, n + 1), -1))
        else:
            gens.append(_madd(_E(N, n - 2, n), _E(N, n - 1, n + 1), -1))
        return N, gens
    if family == "C":
        N = 2 * n
        gens = []
        for i in range(n - 1):
            gens.append(_madd(_E(N, i, i + 1), _E(N, mirror(N, i + 1), mirror(N, i)), -1))
        gens.append(_E(N, n - 1, n))
        return N, gens
    raise ChevalleyError(f"no classical defining representation for family {family}")


def _gram(family: str, N: int) -> list[list[int]]:
    g = [[0] * N for _ in range(N)]
    for i in range(N):
        g[i][N - 1 - i] = 1 if (family != "C" or i < N // 2) else -1
    return g


def defining_rep(alg: ChevalleyAlgebra) -> MatrixRep:
    """Matrix model sl_n / so_{2n+1} / sp_{2n} / so_{2n} compatible with the Chevalley basis."""
    rs = alg.rs
    family, n = rs.spec.family, rs.rank
    if family not in "ABCD":
        raise ChevalleyError(f"defining representation unsupported for family {family}; use adjoint signatures")
    N, gens = _classical_generators(family, n)
    if family == "D" and n == 4:
        # central node sits at index 2 in this library's D4 numbering
        gens = [gens[0], gens[2], gens[1], gens[3]]
    e: dict[Root, list] = {}
    for i, g in enumerate(gens):
        a = rs.simple_root(i)
        f = _transpose(g)
        h = _comm(g, f)
        # [h, e] = lam e; rescale f so that [e_i, f_i] = h_i with <alpha_i, alpha_i^vee> = 2
        lam = _comm(h, g)
        pos = next((p, q) for p in range(N) for q in range(N) if g[p][q])
        scale = Fraction(2) / Fraction(lam[pos[0]][pos[1]], g[pos[0]][pos[1]])
        e[a] = g
        e[_neg(a)] = _mscale(f, scale)
    for xi in rs.positive_roots:
        if sum(xi) == 1:
            continue
        a, b, _ = alg._extraspecial[xi]
        e[xi] = _mscale(_comm(e[a], e[b]), Fraction(1, alg.N(a, b)))
        e[_neg(xi)] = _mscale(_comm(e[_neg(a)], e[_neg(b)]), Fraction(1, alg.N(_neg(a), _neg(b))))
    mats: list = [None] * alg.dim
    for r, m in e.items():
        mats[alg.root_basis(r)] = _normalize(m)
    for i in range(n):
        a = rs.simple_root(i)
        mats[alg.h_basis(i)] = _normalize(_comm(e[a], e[_neg(a)]))
    return MatrixRep("defining", N, tuple(mats))


def _normalize(m):
    return [[int(x) if isinstance(x, Fraction) and x.denominator == 1 else x for x in row] for row in m]


def check_rep(alg: ChevalleyAlgebra, rep: MatrixRep) -> int:
    """Verify rho([x, y]) = [rho(x), rho(y)] on every basis pair; returns pairs checked."""
    n = 0
    for x in range(alg.dim):
        for y in range(alg.dim):
            lhs = rep.image(AlgebraElement(dict(alg.bracket_basis(x, y))))
            rhs = _comm(rep.matrices[x], rep.matrices[y])
            if lhs != rhs and _madd(lhs, rhs, -1) != [[0] * rep.degree for _ in range(rep.degree)]:
                raise ChevalleyError(
                    f"{rep.kind} representation not bracket-compatible on ({alg.basis_label(x)}, {alg.basis_label(y)})"
                )
            n += 1
    return n


def preserves_form(rep: MatrixRep, family: str) -> bool:
    """Every image matrix X satisfies X^T J + J X = 0 for the model's Gram matrix J."""
    if family == "A":
        return all(sum(m[i][i] for i in range(rep.degree)) == 0 for m in rep.matrices)
    J = _gram(family, rep.degree)
    for m in rep.matrices:
        s = _madd(matmul(_transpose(m), J), matmul(J, m))
        if any(any(row) for row in s):
            return False
    return True


def adjoint_rank(alg: ChevalleyAlgebra, x: AlgebraElement) -> int:
    return exact_rank(adjoint(alg, x))


# -- tuple helpers ----------------------------------------------------------


def _add(a: Sequence[int], b: Sequence[int]) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Sequence[int], b: Sequence[int]) -> Root:
    return tuple(x - y for x, y in zip(a, b))


def _neg(a: Sequence[int]) -> Root:
    return tuple(-x for x in a)


def _scale(a: Sequence[int], c: int) -> Root:
    return tuple(c * x for x in a)
