"""Exact matrix rank over Q by fraction-free (Bareiss) elimination."""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Sequence

log = logging.getLogger(__name__)

Matrix = Sequence[Sequence]


def _integer_rows(m: Matrix) -> list[list[int]]:
    rows = []
    for row in m:
        row = list(row)
        if any(isinstance(x, Fraction) and x.denominator != 1 for x in row):
            den = 1
            for x in row:
                den = math.lcm(den, Fraction(x).denominator)
            row = [int(Fraction(x) * den) for x in row]
        else:
            row = [int(x) for x in row]
        if any(row):
            rows.append(row)
    return rows


def bareiss_rank(m: Matrix) -> int:
    """Rank via Bareiss elimination; every division is exact."""
    a = _integer_rows(m)
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    prev = 1
    for col in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        prow = a[r]
        p = prow[col]
        tail = range(col + 1, ncols)
        for i in range(r + 1, nrows):
            row = a[i]
            c = row[col]
            if c:
                for j in tail:
                    row[j] = (p * row[j] - c * prow[j]) // prev
                row[col] = 0
            elif p != prev:
                for j in tail:
                    if row[j]:
                        row[j] = p * row[j] // prev
        prev = p
        r += 1
    return r


def modular_rank(m: Matrix, prime: int) -> int:
    """Rank of ``m`` reduced modulo ``prime`` (a lower bound for the rank over Q)."""
    a = [[x % prime for x in row] for row in _integer_rows(m)]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        prow = a[r]
        inv = pow(prow[col], -1, prime)
        for i in range(r + 1, nrows):
            c = a[i][col]
            if c:
                f = c * inv % prime
                row = a[i]
                for j in range(col, ncols):
                    if prow[j]:
                        row[j] = (row[j] - f * prow[j]) % prime
        r += 1
    return r


_verification_prime: int | None = None


def set_verification_prime(prime: int | None) -> None:
    """Default prime for the logged modular cross-check in ``exact_rank`` (None disables it)."""
    global _verification_prime
    if prime is not None and prime < 2:
        raise ValueError("verification prime must be at least 2")
    _verification_prime = prime


def exact_rank(m: Matrix, prime: int | None = None) -> int:
    """Exact rank over Q.  ``prime`` adds a modular cross-check that is only logged."""
    prime = _verification_prime if prime is None else prime
    rank = bareiss_rank(m)
    if prime:
        mod = modular_rank(m, prime)
        if mod != rank:
            log.info("rank mod %d is %d, exact rank %d; keeping exact value", prime, mod, rank)
    return rank


def matmul(a: Matrix, b: Matrix) -> list[list]:
    # row-by-row accumulation skips zero entries; ad matrices are very sparse
    ncols = len(b[0]) if b else 0
    brows = [[(j, y) for j, y in enumerate(row) if y] for row in b]
    out = []
    for row in a:
        acc = [0] * ncols
        for k, x in enumerate(row):
            if x:
                for j, y in brows[k]:
                    acc[j] += x * y
        out.append(acc)
    return out


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(n: int, m: int | None = None) -> list[list[int]]:
    return [[0] * (n if m is None else m) for _ in range(n)]


def is_zero(a: Matrix) -> bool:
    return not any(any(row) for row in a)


def power_ranks(a: Matrix, limit: int | None = None) -> list[int]:
    """``[rank(a), rank(a^2), ...]`` up to and including the first zero rank.

    Stops after ``limit`` powers when given; callers use that to detect
    non-nilpotent input.
    """
    n = len(a)
    limit = n + 1 if limit is None else limit
    out = []
    p = [list(row) for row in a]
    for _ in range(limit):
        r = exact_rank(p)
        out.append(r)
        if r == 0:
            break
        p = matmul(p, a)
    return out
