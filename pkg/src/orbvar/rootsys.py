"""Finite crystallographic root systems built from Cartan matrices.

Roots are integer coordinate vectors over the simple roots.  The Cartan
matrix uses the convention ``cartan[i][j] = <alpha_j, alpha_i^vee>`` so the
simple reflection ``s_i`` acts by ``r -> r - (sum_j cartan[i][j] r_j) alpha_i``.

Simple roots follow Bourbaki numbering, except for D4 where the central node
is node 3 (index 2) and nodes 1, 2, 4 hang off it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

Root = tuple[int, ...]

FAMILIES = "ABCDEFG"

# Hard cap on the reflection closure, guards against non-finite input.
_MAX_ROOTS = 20000


class RootSystemError(ValueError):
    pass


def _chain(rank: int) -> list[list[int]]:
    a = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        a[i][i] = 2
        if i + 1 < rank:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def _link(a, i, j):
    a[i][j] = a[j][i] = -1


def cartan_matrix(family: str, rank: int) -> list[list[int]]:
    """Standard Cartan matrix of the given finite type.

    Row ``i`` holds the pairings of the simple roots with the coroot of
    ``alpha_i``; a short simple root next to a long one therefore carries the
    entry -2 (or -3 for G2) in its own row.
    """
    family = family.upper()
    if family not in FAMILIES:
        raise RootSystemError(f"unknown family {family!r}")
    valid = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }[family]
    if not valid:
        raise RootSystemError(f"no finite root system of type {family}{rank}")

    if family == "A":
        return _chain(rank)
    if family == "B":
        a = _chain(rank)
        a[rank - 1][rank - 2] = -2
        return a
    if family == "C":
        a = _chain(rank)
        a[rank - 2][rank - 1] = -2
        return a
    if family == "D":
        a = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            a[i][i] = 2
        if rank == 4:
            # central node is index 2
            for i in (0, 1, 3):
                _link(a, i, 2)
            return a
        for i in range(rank - 3):
            _link(a, i, i + 1)
        _link(a, rank - 3, rank - 2)
        _link(a, rank - 3, rank - 1)
        return a
    if family == "E":
        a = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            a[i][i] = 2
        _link(a, 0, 2)
        _link(a, 1, 3)
        for i in range(2, rank - 1):
            _link(a, i, i + 1)
        return a
    if family == "F":
        a = _chain(4)
        a[2][1] = -2
        return a
    # G2: alpha_1 short, alpha_2 long
    return [[2, -3], [-1, 2]]


@dataclass(frozen=True)
class RootSystemSpec:
    family: str
    rank: int
    cartan: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "family", self.family.upper())
        if not self.cartan:
            object.__setattr__(
                self, "cartan", tuple(map(tuple, cartan_matrix(self.family, self.rank)))
            )
        else:
            object.__setattr__(self, "cartan", tuple(tuple(int(x) for x in row) for row in self.cartan))
        self.validate()

    @classmethod
    def parse(cls, label: str) -> "RootSystemSpec":
        """``"B2"`` -> RootSystemSpec("B", 2)."""
        label = label.strip()
        if len(label) < 2 or not label[1:].isdigit():
            raise RootSystemError(f"cannot parse type label {label!r}")
        return cls(label[0], int(label[1:]))

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def validate(self) -> None:
        a = self.cartan
        n = self.rank
        if n < 1 or len(a) != n or any(len(row) != n for row in a):
            raise RootSystemError(f"Cartan matrix of {self.name} must be {n}x{n}")
        for i in range(n):
            if a[i][i] != 2:
                raise RootSystemError(f"diagonal entry ({i},{i}) is {a[i][i]}, expected 2")
            for j in range(n):
                if i != j and a[i][j] > 0:
                    raise RootSystemError(f"off-diagonal entry ({i},{j}) is positive")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise RootSystemError(f"entries ({i},{j}) and ({j},{i}) vanish asymmetrically")
        standard = tuple(map(tuple, cartan_matrix(self.family, n)))
        if a != standard:
            raise RootSystemError(
                f"matrix is not the standard finite-type Cartan matrix of {self.name}: "
                f"got {a}, expected {standard}"
            )


def symmetrizer(cartan: Sequence[Sequence[int]]) -> list[int]:
    """Half squared lengths ``d_i`` of the simple roots, shortest normalised to 1.

    Satisfies ``d_i * cartan[i][j] == d_j * cartan[j][i]``.
    """
    from fractions import Fraction

    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and cartan[i][j] != 0:
                    val = d[i] * cartan[i][j] / cartan[j][i]
                    if d[j] is None:
                        d[j] = val
                        stack.append(j)
                    elif d[j] != val:
                        raise RootSystemError("Cartan matrix is not symmetrizable")
    # normalise each component so its shortest root has d = 1
    comp = _components(cartan)
    out = [0] * n
    for nodes in comp:
        m = min(d[i] for i in nodes)
        for i in nodes:
            q = d[i] / m
            if q.denominator != 1:
                raise RootSystemError("non-integral root length ratio")
            out[i] = int(q)
    return out


def _components(cartan) -> list[list[int]]:
    n = len(cartan)
    seen: set[int] = set()
    comps = []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and cartan[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def height(r: Root) -> int:
    return sum(r)


def root_key(r: Root) -> tuple:
    """Canonical order: height first, then lexicographic on coefficients."""
    return (sum(r), tuple(r))


@dataclass(frozen=True, eq=False)
class RootSystem:
    spec: RootSystemSpec
    roots: tuple[Root, ...]
    index: dict = field(repr=False)
    positive: tuple[int, ...]
    simple: tuple[int, ...]
    lengths: tuple[int, ...] = field(repr=False)  # half squared length d_i of simple roots

    @property
    def rank(self) -> int:
        return self.spec.rank

    @property
    def cartan(self):
        return self.spec.cartan

    @property
    def name(self) -> str:
        return self.spec.name

    def __len__(self):
        return len(self.roots)

    def __repr__(self):
        return f"RootSystem({self.name}, |R|={len(self.roots)})"

    @property
    def positive_roots(self) -> list[Root]:
        return [self.roots[k] for k in self.positive]

    @property
    def simple_roots(self) -> list[Root]:
        return [self.roots[k] for k in self.simple]

    def is_root(self, r: Sequence[int]) -> bool:
        return tuple(r) in self.index

    def is_positive(self, r: Root) -> bool:
        return sum(r) > 0

    def pairing(self, r: Root, i: int) -> int:
        """``<r, alpha_i^vee>``."""
        row = self.spec.cartan[i]
        return sum(c * a for c, a in zip(r, row))

    def inner(self, r: Root, s: Root) -> int:
        """Symmetric form with the short simple roots of squared length 2."""
        a, d = self.spec.cartan, self.lengths
        n = self.rank
        return sum(r[i] * s[j] * d[i] * a[i][j] for i in range(n) if r[i] for j in range(n) if s[j])

    def norm(self, r: Root) -> int:
        return self.inner(r, r)

    def is_long(self, r: Root) -> bool:
        longest = max(self.norm(s) for s in self.simple_roots)
        return self.norm(r) == longest

    def simple_root(self, i: int) -> Root:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def reflect(self, i: int, r: Sequence[int]) -> Root:
        r = tuple(r)
        if r not in self.index:
            raise RootSystemError(f"{r} is not a root of {self.name}")
        c = self.pairing(r, i)
        out = list(r)
        out[i] -= c
        return tuple(out)

    def coroot_coeffs(self, r: Root) -> tuple[int, ...]:
        """Coefficients of ``r^vee`` over the simple coroots."""
        d = self.lengths
        dr = self.norm(r) // 2
        out = []
        for i, c in enumerate(r):
            num = c * d[i]
            if num % dr:
                raise RootSystemError("non-integral coroot")
            out.append(num // dr)
        return tuple(out)

    def highest_root(self) -> Root:
        return self.roots[-1]

    def to_dict(self) -> dict:
        return {
            "family": self.spec.family,
            "rank": self.spec.rank,
            "cartan": [list(row) for row in self.spec.cartan],
            "roots": [list(r) for r in self.roots],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RootSystem":
        spec = RootSystemSpec(data["family"], data["rank"], tuple(map(tuple, data["cartan"])))
        rs = build_root_system(spec)
        if [list(r) for r in rs.roots] != data["roots"]:
            raise RootSystemError("serialized root list disagrees with rebuilt system")
        return rs


def build_root_system(spec: RootSystemSpec | str) -> RootSystem:
    """Close the simple roots under simple reflections."""
    if isinstance(spec, str):
        spec = RootSystemSpec.parse(spec)
    n = spec.rank
    a = spec.cartan
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                c = sum(x * y for x, y in zip(r, a[i]))
                if c == 0:
                    continue
                s = list(r)
                s[i] -= c
                s = tuple(s)
                if s not in found:
                    if any(x > 0 for x in s) and any(x < 0 for x in s):
                        raise RootSystemError(f"mixed-sign vector {s} produced; not a finite root system")
                    found.add(s)
                    nxt.append(s)
        if len(found) > _MAX_ROOTS:
            raise RootSystemError(f"reflection closure exceeded {_MAX_ROOTS} roots; not finite type")
        frontier = nxt

    roots = tuple(sorted(found, key=root_key))
    index = {r: k for k, r in enumerate(roots)}
    positive = tuple(k for k, r in enumerate(roots) if sum(r) > 0)
    simple_idx = tuple(index[r] for r in simple)
    if 2 * len(positive) != len(roots):
        raise RootSystemError("root set is not symmetric")
    return RootSystem(
        spec=spec,
        roots=roots,
        index=index,
        positive=positive,
        simple=simple_idx,
        lengths=tuple(symmetrizer(a)),
    )


def subsystem_type(rs: RootSystem, subset: Sequence[int]) -> str:
    """Cartan type label of the parabolic subsystem spanned by ``subset``.

    Only the irreducible cases needed downstream are recognised exactly
    (A_k, B2 = C2, G2, D4); anything else is reported as ``"other"``.
    """
    subset = sorted(subset)
    k = len(subset)
    sub = [[rs.cartan[i][j] for j in subset] for i in subset]
    if k == 0:
        return "empty"
    if len(_components(sub)) != 1:
        return "reducible"
    degrees = [sum(1 for j in range(k) if j != i and sub[i][j]) for i in range(k)]
    laced = all(sub[i][j] in (0, -1) for i in range(k) for j in range(k) if i != j)
    if laced:
        if max(degrees) <= 2:
            return f"A{k}"
        if k == 4 and sorted(degrees) == [1, 1, 1, 3]:
            return "D4"
        return "other"
    if k == 2:
        m = min(sub[0][1], sub[1][0])
        return {-2: "B2", -3: "G2"}.get(m, "other")
    return "other"
