"""Robinson-Schensted correspondence and standard Young tableaux.

Permutations are one-line words on ``1..n``.  The simple reflection ``s_i`` of
A_{n-1} (0-based index ``i``) is the transposition ``(i+1, i+2)``.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterator, Sequence

from .nilorbits import Partition, partitions


@dataclass(frozen=True)
class StandardTableau:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows if r)
        object.__setattr__(self, "rows", rows)
        n = self.n
        if sorted(x for r in rows for x in r) != list(range(1, n + 1)):
            raise ValueError(f"entries of {rows} are not 1..{n}")
        for i, r in enumerate(rows):
            if any(a >= b for a, b in zip(r, r[1:])):
                raise ValueError(f"row {i} of {rows} does not increase")
            if i and len(r) > len(rows[i - 1]):
                raise ValueError(f"{rows} does not have partition shape")
            if i and any(r[j] <= rows[i - 1][j] for j in range(len(r))):
                raise ValueError(f"column condition fails in {rows}")

    @property
    def shape(self) -> Partition:
        return tuple(len(r) for r in self.rows)

    @property
    def n(self) -> int:
        return sum(len(r) for r in self.rows)

    def row_of(self, x: int) -> int:
        for i, r in enumerate(self.rows):
            if x in r:
                return i
        raise KeyError(x)

    def to_list(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __str__(self):
        return "/".join(" ".join(map(str, r)) for r in self.rows)


def _insert(rows: list[list[int]], x: int) -> int:
    """Row-insert ``x``; returns the index of the row that grew."""
    i = 0
    while True:
        if i == len(rows):
            rows.append([x])
            return i
        row = rows[i]
        j = bisect.bisect_right(row, x)
        if j == len(row):
            row.append(x)
            return i
        x, row[j] = row[j], x
        i += 1


def rs_pair(p: Sequence[int]) -> tuple[StandardTableau, StandardTableau]:
    """Insertion tableau P and recording tableau Q of the permutation ``p``."""
    p = list(p)
    n = len(p)
    if sorted(p) != list(range(1, n + 1)):
        raise ValueError(f"{p} is not a permutation of 1..{n}")
    P: list[list[int]] = []
    Q: list[list[int]] = []
    for step, x in enumerate(p, start=1):
        i = _insert(P, x)
        if i == len(Q):
            Q.append([])
        Q[i].append(step)
    return StandardTableau(tuple(map(tuple, P))), StandardTableau(tuple(map(tuple, Q)))


def inverse_permutation(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p, start=1):
        inv[x - 1] = i
    return tuple(inv)


def _corners(shape: Partition) -> Iterator[int]:
    for i, r in enumerate(shape):
        if i + 1 == len(shape) or shape[i + 1] < r:
            yield i


@lru_cache(maxsize=None)
def _syt(shape: Partition) -> tuple[tuple[tuple[int, ...], ...], ...]:
    n = sum(shape)
    if n == 0:
        return ((),)
    out = []
    for i in _corners(shape):
        smaller = list(shape)
        smaller[i] -= 1
        smaller_t = tuple(x for x in smaller if x)
        for t in _syt(smaller_t):
            rows = [list(r) for r in t]
            if i == len(rows):
                rows.append([])
            rows[i].append(n)
            out.append(tuple(map(tuple, rows)))
    return tuple(sorted(out))


def tableaux_of_shape(shape: Sequence[int]) -> list[StandardTableau]:
    """All standard Young tableaux of the given shape (largest entry removed from a corner recursively)."""
    return [StandardTableau(t) for t in _syt(tuple(shape))]


def count_syt(shape: Sequence[int]) -> int:
    """Hook length formula."""
    shape = tuple(shape)
    n = sum(shape)
    conj = [sum(1 for r in shape if r > j) for j in range(shape[0])] if shape else []
    hooks = 1
    for i, r in enumerate(shape):
        for j in range(r):
            hooks *= (r - j - 1) + (conj[j] - i - 1) + 1
    return factorial(n) // hooks


def rs_bijection_count(n: int) -> int:
    """``sum over shapes of (#SYT)^2``; equals n! by the RS bijection."""
    return sum(len(tableaux_of_shape(lam)) ** 2 for lam in partitions(n))


def tableau_tau(t: StandardTableau) -> frozenset[int]:
    """Descents ``i`` (``i+1`` in a strictly lower row than ``i``) as 0-based simple indices."""
    row = {x: k for k, r in enumerate(t.rows) for x in r}
    return frozenset(i - 1 for i in range(1, t.n) if row[i + 1] > row[i])


# -- permutations <-> Weyl group elements of type A ----------------------------


def permutation_from_word(word: Sequence[int], n: int) -> tuple[int, ...]:
    """One-line notation of ``s_a1 ... s_ak`` acting on ``1..n`` (``s_i`` swaps i+1, i+2)."""
    sigma = list(range(1, n + 1))
    # sigma as a function: apply the rightmost generator first
    for a in word:
        # compose on the right: sigma := sigma o t_a
        sigma[a], sigma[a + 1] = sigma[a + 1], sigma[a]
    return tuple(sigma)


def word_from_permutation(p: Sequence[int]) -> tuple[int, ...]:
    """A reduced word for ``p`` (bubble sort)."""
    p = list(p)
    word = []
    changed = True
    while changed:
        changed = False
        for i in range(len(p) - 1):
            if p[i] > p[i + 1]:
                p[i], p[i + 1] = p[i + 1], p[i]
                word.append(i)
                changed = True
    return tuple(reversed(word))


def left_descents(p: Sequence[int]) -> frozenset[int]:
    """``i`` (0-based) with ``i+2`` appearing before ``i+1`` in ``p``."""
    pos = {x: k for k, x in enumerate(p)}
    return frozenset(i for i in range(len(p) - 1) if pos[i + 2] < pos[i + 1])


@dataclass(frozen=True)
class RSConvention:
    """Which RS tableau labels a fiber, and whether orbit shapes are transposed."""

    label: str  # "P" (insertion) or "Q" (recording)
    transpose: bool

    @property
    def stamp(self) -> str:
        return f"rs-label={self.label};rs-shape={'transposed' if self.transpose else 'direct'}"

    def fiber_label(self, p: Sequence[int]) -> StandardTableau:
        P, Q = rs_pair(p)
        return P if self.label == "P" else Q

    def orbit_shape(self, p: Sequence[int]) -> Partition:
        from .nilorbits import transpose

        shape = rs_pair(p)[0].shape
        return transpose(shape) if self.transpose else shape


ALL_CONVENTIONS = tuple(RSConvention(lbl, tr) for lbl in ("P", "Q") for tr in (False, True))
