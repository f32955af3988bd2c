"""Nilpotent orbits: partition labels, dominance order, dimensions, Jordan types.

Classical orbits are labelled by the Jordan type of their elements in the
defining representation.  G2, F4 and E-type orbits have no partition label
here; they are identified by the ranks of the powers of ``ad x``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .linalg import exact_rank, identity, matmul

Partition = tuple[int, ...]


class OrbitError(ValueError):
    pass


def partitions(n: int, largest: int | None = None) -> list[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    largest = n if largest is None else largest
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return out


def transpose(lam: Sequence[int]) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


def multiplicities(lam: Sequence[int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in lam:
        out[p] = out.get(p, 0) + 1
    return out


def defining_degree(family: str, rank: int) -> int:
    return {"A": rank + 1, "B": 2 * rank + 1, "C": 2 * rank, "D": 2 * rank}[family]


def is_valid(family: str, rank: int, lam: Sequence[int]) -> bool:
    lam = tuple(lam)
    if list(lam) != sorted(lam, reverse=True) or any(p <= 0 for p in lam):
        return False
    if sum(lam) != defining_degree(family, rank):
        return False
    mult = multiplicities(lam)
    if family in "BD":
        return all(m % 2 == 0 for p, m in mult.items() if p % 2 == 0)
    if family == "C":
        return all(m % 2 == 0 for p, m in mult.items() if p % 2 == 1)
    return True


def is_very_even(family: str, lam: Sequence[int]) -> bool:
    return family == "D" and bool(lam) and all(p % 2 == 0 for p in lam)


@dataclass(frozen=True)
class OrbitId:
    """Orbit label: a partition for classical types, an ad-rank signature otherwise."""

    family: str
    rank: int
    partition: Partition | None = None
    signature: tuple[int, ...] | None = None
    very_even: bool = False

    def __post_init__(self):
        if (self.partition is None) == (self.signature is None):
            raise OrbitError("OrbitId needs exactly one of partition or signature")
        if self.partition is not None:
            if not is_valid(self.family, self.rank, self.partition):
                raise OrbitError(f"{self.partition} is not a valid partition for {self.family}{self.rank}")
            object.__setattr__(self, "very_even", is_very_even(self.family, self.partition))

    @property
    def label(self) -> str:
        if self.partition is not None:
            s = "(" + ",".join(map(str, self.partition)) + ")"
            return s + "*" if self.very_even else s
        return "sig[" + ",".join(map(str, self.signature)) + "]"

    def __str__(self):
        return self.label

    def sort_key(self):
        return (self.partition or (), self.signature or ())


def valid_partitions(family: str, rank: int) -> list[OrbitId]:
    family = family.upper()
    if family not in "ABCD":
        raise OrbitError(f"partition labels only exist for classical families, not {family}")
    n = defining_degree(family, rank)
    return [OrbitId(family, rank, lam) for lam in partitions(n) if is_valid(family, rank, lam)]


def dominance_leq(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """``lam <= mu`` in dominance order (orbit of ``lam`` lies in the closure of ``mu``'s)."""
    if sum(lam) != sum(mu):
        raise OrbitError(f"cannot compare partitions of {sum(lam)} and {sum(mu)}")
    a = b = 0
    for x, y in itertools.zip_longest(lam, mu, fillvalue=0):
        a += x
        b += y
        if a > b:
            return False
    return True


def signature_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """Termwise comparison of ad-power rank signatures (padded with zeros)."""
    return all(x <= y for x, y in itertools.zip_longest(a, b, fillvalue=0))


@dataclass
class OrbitPoset:
    orbits: list[OrbitId]
    heuristic: bool = False
    _leq: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for a in self.orbits:
            for b in self.orbits:
                self._leq[a, b] = self._compare(a, b)

    def _compare(self, a: OrbitId, b: OrbitId) -> bool:
        if a.partition is not None and b.partition is not None:
            return dominance_leq(a.partition, b.partition)
        return signature_leq(a.signature, b.signature)

    def leq(self, a: OrbitId, b: OrbitId) -> bool:
        return self._leq[a, b]

    def lt(self, a: OrbitId, b: OrbitId) -> bool:
        return a != b and self._leq[a, b]

    def strictly_between(self, lo: OrbitId, hi: OrbitId) -> list[OrbitId]:
        return [c for c in self.orbits if self.lt(lo, c) and self.lt(c, hi)]

    def covering_pairs(self) -> list[tuple[OrbitId, OrbitId]]:
        """Pairs ``(upper, lower)`` with ``lower < upper`` and nothing strictly between."""
        out = []
        for hi in self.orbits:
            for lo in self.orbits:
                if self.lt(lo, hi) and not self.strictly_between(lo, hi):
                    out.append((hi, lo))
        return out

    def is_covering(self, hi: OrbitId, lo: OrbitId) -> bool:
        return self.lt(lo, hi) and not self.strictly_between(lo, hi)

    def maximum(self) -> list[OrbitId]:
        return [a for a in self.orbits if all(self.leq(b, a) for b in self.orbits)]

    def minimum(self) -> list[OrbitId]:
        return [a for a in self.orbits if all(self.leq(a, b) for b in self.orbits)]

    def to_json(self) -> str:
        nodes = [
            {
                "label": o.label,
                "partition": list(o.partition) if o.partition is not None else None,
                "signature": list(o.signature) if o.signature is not None else None,
                "veryEven": o.very_even,
            }
            for o in self.orbits
        ]
        edges = [[hi.label, lo.label] for hi, lo in self.covering_pairs()]
        return json.dumps({"heuristic": self.heuristic, "nodes": nodes, "edges": edges}, indent=2)


def classical_poset(family: str, rank: int) -> OrbitPoset:
    return OrbitPoset(valid_partitions(family, rank))


def signature_poset(orbits: Iterable[OrbitId]) -> OrbitPoset:
    """Dimension-graded order refined by termwise signature dominance; heuristic."""
    orbits = sorted(set(orbits), key=lambda o: o.signature)
    return OrbitPoset(orbits, heuristic=True)


def covering_pairs(poset: OrbitPoset) -> list[tuple[OrbitId, OrbitId]]:
    return poset.covering_pairs()


# -- Jordan types -------------------------------------------------------------


def jordan_type(m: Sequence[Sequence]) -> Partition:
    """Jordan type of a nilpotent matrix from the ranks of its powers.

    The number of blocks of size >= k is ``rank(M^(k-1)) - rank(M^k)``.
    """
    n = len(m)
    ranks = [n]
    p = identity(n)
    for _ in range(n):
        p = matmul(p, m)
        r = exact_rank(p)
        ranks.append(r)
        if r == 0:
            break
    if ranks[-1] != 0:
        raise OrbitError(f"matrix is not nilpotent: rank of M^{n} is {ranks[-1]}")
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    parts = []
    for k in range(len(at_least), 0, -1):
        exact = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        parts.extend([k] * exact)
    return tuple(parts)


def jordan_from_ranks(n: int, ranks: Sequence[int]) -> Partition:
    """Decode ``ranks = [rank M, rank M^2, ...]`` (ending in 0) into a partition of ``n``."""
    seq = [n, *ranks]
    if seq[-1] != 0:
        raise OrbitError("rank sequence does not reach zero")
    at_least = [seq[k - 1] - seq[k] for k in range(1, len(seq))]
    parts = []
    for k in range(len(at_least), 0, -1):
        exact = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        if exact < 0:
            raise OrbitError(f"rank sequence {ranks} is not that of a nilpotent matrix")
        parts.extend([k] * exact)
    return tuple(parts)


# -- dimensions ---------------------------------------------------------------


def orbit_dim(orbit: OrbitId) -> int:
    """Dimension of the orbit: classical formula or ``rank(ad x)`` from the signature."""
    if orbit.signature is not None:
        return orbit.signature[0] if orbit.signature else 0
    lam = orbit.partition
    fam, n = orbit.family, orbit.rank
    sq = sum(c * c for c in transpose(lam))
    odd = sum(1 for p in lam if p % 2)
    if fam == "A":
        N = n + 1
        return N * N - sq
    if fam == "B":
        return 2 * n * n + n - (sq - odd) // 2
    if fam == "C":
        return 2 * n * n + n - (sq + odd) // 2
    if fam == "D":
        return 2 * n * n - n - (sq - odd) // 2
    raise OrbitError(f"unsupported family {fam}")
