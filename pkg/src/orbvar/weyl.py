"""Weyl groups as permutations of the canonical root list.

An element ``w`` is stored by the permutation ``perm`` with
``roots[perm[k]] == w(roots[k])``; a word ``(a1, ..., ak)`` stands for
``s_a1 s_a2 ... s_ak``.  Equality and hashing go through ``perm`` only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .rootsys import Root, RootSystem

DEFAULT_CUTOFF = 10**7


class WeylError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class WeylElement:
    word: tuple[int, ...]
    perm: tuple[int, ...] = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __len__(self):
        return len(self.word)

    @property
    def length(self) -> int:
        return len(self.word)

    def word_str(self, one_based: bool = True) -> str:
        if not self.word:
            return "e"
        off = 1 if one_based else 0
        return "".join(f"s{i + off}" for i in self.word)


def weyl_order(family: str, rank: int) -> int:
    """|W| from the classical formulas (used for the cutoff guard)."""
    f, n = family.upper(), rank
    if f == "A":
        return math.factorial(n + 1)
    if f in "BC":
        return 2**n * math.factorial(n)
    if f == "D":
        return 2 ** (n - 1) * math.factorial(n)
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600, ("F", 4): 1152, ("G", 2): 12}[(f, n)]


@dataclass(frozen=True)
class ParabolicData:
    subset: tuple[int, ...]
    W_I: tuple[WeylElement, ...]
    D_I: tuple[WeylElement, ...]
    d_m: WeylElement


class WeylGroup:
    """All elements of W(rs) together with the per-element root operations."""

    def __init__(self, rs: RootSystem, cutoff: int = DEFAULT_CUTOFF, elements: Sequence[WeylElement] | None = None):
        order = weyl_order(rs.spec.family, rs.rank)
        if order > cutoff:
            raise WeylError(
                f"|W({rs.name})| = {order} exceeds the enumeration cutoff {cutoff}"
            )
        self.rs = rs
        self.cutoff = cutoff
        nroots = len(rs.roots)
        self._negative = tuple(sum(r) < 0 for r in rs.roots)
        self.gens = tuple(
            tuple(rs.index[rs.reflect(i, r)] for r in rs.roots) for i in range(rs.rank)
        )
        self.identity = WeylElement((), tuple(range(nroots)))
        self.elements: list[WeylElement] = self._enumerate() if elements is None else list(elements)
        self._by_perm = {w.perm: w for w in self.elements}
        if len(self.elements) != order:
            raise WeylError(f"enumerated {len(self.elements)} elements, expected {order}")
        self.longest = self.elements[-1]
        self._inv_cache: dict[tuple, tuple] = {}

    def _enumerate(self) -> list[WeylElement]:
        # BFS by length; words within a level stay in lexicographic order,
        # so the first word reaching an element is its lex-least reduced word.
        seen = {self.identity.perm}
        out = [self.identity]
        level = [self.identity]
        while level:
            nxt = []
            for w in level:
                for i, g in enumerate(self.gens):
                    p = tuple(w.perm[k] for k in g)
                    if p not in seen:
                        seen.add(p)
                        nxt.append(WeylElement(w.word + (i,), p))
            nxt.sort(key=lambda e: e.word)
            out.extend(nxt)
            level = nxt
        return out

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"WeylGroup({self.rs.name}, |W|={len(self.elements)})"

    # -- group operations -------------------------------------------------

    def lookup(self, perm: Sequence[int]) -> WeylElement:
        return self._by_perm[tuple(perm)]

    def mul(self, u: WeylElement, v: WeylElement) -> WeylElement:
        p = tuple(u.perm[k] for k in v.perm)
        return self._by_perm[p]

    def inverse(self, w: WeylElement) -> WeylElement:
        inv = [0] * len(w.perm)
        for k, j in enumerate(w.perm):
            inv[j] = k
        return self._by_perm[tuple(inv)]

    def _inv_perm(self, w: WeylElement) -> tuple[int, ...]:
        got = self._inv_cache.get(w.perm)
        if got is None:
            got = self.inverse(w).perm
            self._inv_cache[w.perm] = got
        return got

    def from_word(self, word: Iterable[int]) -> WeylElement:
        p = self.identity.perm
        for i in word:
            if not 0 <= i < self.rs.rank:
                raise WeylError(f"generator index {i} out of range for {self.rs.name}")
            p = tuple(p[k] for k in self.gens[i])
        return self._by_perm[p]

    def parse_word(self, text: str) -> WeylElement:
        """Parse ``"s1s3s1"`` (1-based generator labels) or ``"e"``."""
        text = text.replace(" ", "").replace("*", "")
        if text in ("", "e", "1"):
            return self.identity
        parts = text.split("s")
        if parts[0] != "" or any(not p.isdigit() for p in parts[1:]):
            raise WeylError(f"cannot parse word {text!r}")
        return self.from_word(int(p) - 1 for p in parts[1:])

    def simple(self, i: int) -> WeylElement:
        return self._by_perm[self.gens[i]]

    def act(self, w: WeylElement, r: Root) -> Root:
        return self.rs.roots[w.perm[self.rs.index[tuple(r)]]]

    def length_from_perm(self, w: WeylElement) -> int:
        neg = self._negative
        return sum(1 for k in self.rs.positive if neg[w.perm[k]])

    # -- root subsets -----------------------------------------------------

    def inversion_indices(self, w: WeylElement) -> frozenset[int]:
        inv, neg = self._inv_perm(w), self._negative
        return frozenset(k for k in self.rs.positive if neg[inv[k]])

    def steinberg_indices(self, w: WeylElement) -> frozenset[int]:
        inv, neg = self._inv_perm(w), self._negative
        return frozenset(k for k in self.rs.positive if not neg[inv[k]])

    def inversion_set(self, w: WeylElement) -> set[Root]:
        """S(w): positive roots sent negative by ``w^-1``."""
        return {self.rs.roots[k] for k in self.inversion_indices(w)}

    def steinberg_roots(self, w: WeylElement) -> set[Root]:
        """Roots spanning n cap w(n): positive roots kept positive by ``w^-1``."""
        return {self.rs.roots[k] for k in self.steinberg_indices(w)}

    def tau(self, w: WeylElement) -> frozenset[int]:
        """Simple indices in the inversion set (the left descent set)."""
        inv, neg = self._inv_perm(w), self._negative
        return frozenset(i for i, k in enumerate(self.rs.simple) if neg[inv[k]])

    # -- parabolic subgroups ----------------------------------------------

    def in_parabolic(self, w: WeylElement, subset: Iterable[int]) -> bool:
        return set(w.word) <= set(subset)

    def parabolic_decompose(
        self, w: WeylElement, subset: Iterable[int]
    ) -> tuple[WeylElement, WeylElement]:
        """Factor ``w = w_I * d_I`` with ``w_I`` in W_I and ``d_I`` minimal in ``W_I d_I``.

        ``d_I`` has no left descents in ``I``, so ``d_I^-1`` keeps every root of
        ``I`` positive and lengths add.
        """
        subset = frozenset(subset)
        d = w
        peeled: list[int] = []
        while True:
            hit = sorted(self.tau(d) & subset)
            if not hit:
                break
            i = hit[0]
            d = self.mul(self.simple(i), d)
            peeled.append(i)
        w_I = self.from_word(peeled)
        return w_I, d

    def parabolic(self, subset: Iterable[int]) -> ParabolicData:
        subset = tuple(sorted(set(subset)))
        sset = frozenset(subset)
        W_I = tuple(w for w in self.elements if set(w.word) <= sset)
        D_I = tuple(w for w in self.elements if not (self.tau(w) & sset))
        top = max(len(d) for d in D_I)
        longest = [d for d in D_I if len(d) == top]
        if len(longest) != 1:
            raise WeylError(f"D_I for I={subset} has {len(longest)} elements of maximal length")
        return ParabolicData(subset, W_I, D_I, longest[0])

    def positive_in_span(self, subset: Iterable[int]) -> frozenset[int]:
        """Indices of R_I^+ (positive roots supported on ``subset``)."""
        sset = set(subset)
        return frozenset(
            k for k in self.rs.positive
            if all(c == 0 for j, c in enumerate(self.rs.roots[k]) if j not in sset)
        )

    def check_projection_identity(self, w: WeylElement, subset: Iterable[int]) -> bool:
        """``R_I^+ cap w(R^+) == R_I^+ cap w_I(R_I^+)``."""
        subset = tuple(subset)
        RI = self.positive_in_span(subset)
        w_I, _ = self.parabolic_decompose(w, subset)
        lhs = RI & self.steinberg_indices(w)
        inv = self._inv_perm(w_I)
        rhs = frozenset(k for k in RI if inv[k] in RI)
        return lhs == rhs

    def tau_names(self, w: WeylElement) -> list[str]:
        return [f"alpha{i + 1}" for i in sorted(self.tau(w))]


def enumerate_weyl(rs: RootSystem, cutoff: int = DEFAULT_CUTOFF) -> WeylGroup:
    return WeylGroup(rs, cutoff=cutoff)
