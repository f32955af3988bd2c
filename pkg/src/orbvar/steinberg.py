"""Generic elements of n cap w(n), their orbits, and orbital-variety labels.

Rank quantities are lower semicontinuous, so for each ``w`` we draw ``k``
random elements with coefficients in ``[1, bound]`` on exactly the roots of
``n cap w(n)`` and keep the maximum.  When the samples disagree on the orbit
the result is flagged unstable instead of being silently resolved.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .chevalley import AlgebraElement, ChevalleyAlgebra, ChevalleyError, adjoint, defining_rep
from .linalg import exact_rank, matmul
from .nilorbits import OrbitId, dominance_leq, jordan_type, orbit_dim
from .rootsys import Root
from .rsk import ALL_CONVENTIONS, RSConvention, StandardTableau, permutation_from_word, tableau_tau
from .weyl import WeylElement, WeylGroup

log = logging.getLogger(__name__)

DEFAULT_SEED = 20240601
DEFAULT_SAMPLES = 5
DEFAULT_BOUND = 997


@dataclass(frozen=True)
class SampleConfig:
    seed: int = DEFAULT_SEED
    k: int = DEFAULT_SAMPLES
    bound: int = DEFAULT_BOUND

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("need at least one sample")
        if self.bound < 1:
            raise ValueError("coefficient bound must be positive")


@dataclass(frozen=True)
class GenericSample:
    roots: tuple[Root, ...]
    coeffs: tuple[int, ...]
    seed: str
    index: int


def sample_rng(config: SampleConfig, type_name: str, w: WeylElement) -> random.Random:
    """Independent deterministic stream per (seed, type, element)."""
    key = "e" if not w.word else ".".join(map(str, w.word))
    return random.Random(f"{config.seed}|{type_name}|{key}")


def generic_samples(
    alg: ChevalleyAlgebra,
    roots: Iterable[Root],
    seed,
    k: int = DEFAULT_SAMPLES,
    bound: int = DEFAULT_BOUND,
) -> list[GenericSample]:
    roots = tuple(sorted(roots, key=lambda r: (sum(r), r)))
    if any(sum(r) <= 0 for r in roots):
        raise ValueError("generic elements are drawn from n: roots must be positive")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    tag = str(seed) if not isinstance(seed, random.Random) else "stream"
    return [
        GenericSample(roots, tuple(rng.randint(1, bound) for _ in roots), tag, i)
        for i in range(k)
    ]


def sample_element(alg: ChevalleyAlgebra, sample: GenericSample) -> AlgebraElement:
    return AlgebraElement({alg.root_basis(r): c for r, c in zip(sample.roots, sample.coeffs)})


def generic_element(alg: ChevalleyAlgebra, roots: Iterable[Root], seed=0, k: int = 1) -> AlgebraElement:
    """First of ``k`` generic samples supported exactly on ``roots`` (zero for no roots)."""
    return sample_element(alg, generic_samples(alg, roots, seed, k)[0])


def bsaturation_rank(alg: ChevalleyAlgebra, x: AlgebraElement, roots: Iterable[Root]) -> int:
    """``dim([b, x] + span of the root vectors)``: the tangent space of B(n cap w(n)) at x."""
    pos = alg.positive_basis
    col = {b: c for c, b in enumerate(pos)}
    rows = []
    for b in alg.borel_basis:
        v = alg.bracket(alg.basis_element(b), x)
        if v.coeffs:
            row = [0] * len(pos)
            for kk, c in v.coeffs.items():
                row[col[kk]] = c
            rows.append(row)
    for r in roots:
        row = [0] * len(pos)
        row[col[alg.root_basis(r)]] = 1
        rows.append(row)
    return exact_rank(rows) if rows else 0


def ad_signature(alg: ChevalleyAlgebra, x: AlgebraElement) -> tuple[int, ...]:
    """Ranks of ``ad x, (ad x)^2, ...`` up to the first zero."""
    m = adjoint(alg, x)
    out = []
    p = m
    for _ in range(alg.dim):
        r = exact_rank(p)
        if r == 0:
            break
        out.append(r)
        p = matmul(p, m)
    return tuple(out)


@dataclass
class Observation:
    """Everything measured for one Weyl element."""

    w: WeylElement
    roots: frozenset
    orbit: OrbitId
    stable: bool
    sample_labels: list[str]
    ad_rank: int
    bsat_dim: int
    per_sample: list[tuple[int, int]] = field(default_factory=list)  # (bsat, ad rank)

    @property
    def half_dimension_ok(self) -> bool:
        return 2 * self.bsat_dim == self.ad_rank


class SteinbergData:
    """Per-type cache of Steinberg computations over the whole Weyl group."""

    def __init__(self, W: WeylGroup, alg: ChevalleyAlgebra, config: SampleConfig | None = None,
                 use_signature: bool | None = None):
        self.W = W
        self.alg = alg
        self.rs = W.rs
        self.config = config or SampleConfig()
        fam = self.rs.spec.family
        self.use_signature = fam not in "ABCD" if use_signature is None else use_signature
        self.rep = None if self.use_signature else defining_rep(alg)
        self._obs: dict[WeylElement, Observation] = {}

    def samples(self, w: WeylElement) -> list[GenericSample]:
        roots = self.W.steinberg_roots(w)
        rng = sample_rng(self.config, self.rs.name, w)
        return generic_samples(self.alg, roots, rng, self.config.k, self.config.bound)

    def _orbit_and_rank(self, x: AlgebraElement) -> tuple[OrbitId, int]:
        fam, rank = self.rs.spec.family, self.rs.rank
        if self.use_signature:
            sig = ad_signature(self.alg, x)
            return OrbitId(fam, rank, signature=sig), (sig[0] if sig else 0)
        orbit = OrbitId(fam, rank, partition=jordan_type(self.rep.image(x)))
        return orbit, exact_rank(adjoint(self.alg, x))

    def observe(self, w: WeylElement) -> Observation:
        got = self._obs.get(w)
        if got is not None:
            return got
        roots = self.W.steinberg_roots(w)
        orbits, per = [], []
        for s in self.samples(w):
            x = sample_element(self.alg, s)
            orbit, ad_rank = self._orbit_and_rank(x)
            orbits.append(orbit)
            per.append((bsaturation_rank(self.alg, x, roots), ad_rank))
        orbit, stable = _consensus(orbits)
        if not stable:
            log.warning("unstable orbit identification for %s in %s: %s",
                        w.word_str(), self.rs.name, [o.label for o in orbits])
        obs = Observation(
            w=w,
            roots=frozenset(roots),
            orbit=orbit,
            stable=stable,
            sample_labels=[o.label for o in orbits],
            ad_rank=max(a for _, a in per),
            bsat_dim=max(b for b, _ in per),
            per_sample=per,
        )
        self._obs[w] = obs
        return obs

    def observe_all(self) -> list[Observation]:
        return [self.observe(w) for w in self.W]

    def identify_orbit(self, w: WeylElement) -> OrbitId:
        return self.observe(w).orbit

    def bsaturation_dim(self, w: WeylElement) -> int:
        return self.observe(w).bsat_dim

    def orbits(self) -> list[OrbitId]:
        return sorted({o.orbit for o in self.observe_all()}, key=OrbitId.sort_key)


def _consensus(orbits: Sequence[OrbitId]) -> tuple[OrbitId, bool]:
    distinct = list(dict.fromkeys(orbits))
    if len(distinct) == 1:
        return distinct[0], True

    def dominated(a: OrbitId, b: OrbitId) -> bool:
        if a.partition is not None:
            return dominance_leq(a.partition, b.partition)
        return all(x <= y for x, y in zip(a.signature + (0,) * 64, b.signature + (0,) * 64))

    top = [a for a in distinct if all(dominated(b, a) for b in distinct)]
    if top:
        return top[0], False
    return max(distinct, key=OrbitId.sort_key), False


def identify_orbit(data: SteinbergData, w: WeylElement) -> OrbitId:
    return data.identify_orbit(w)


def bsaturation_dim(data: SteinbergData, w: WeylElement) -> int:
    return data.bsaturation_dim(w)


# -- orbital variety labels ----------------------------------------------------


@dataclass(frozen=True)
class OrbitalVarietyLabel:
    orbit: OrbitId
    tau: frozenset
    vdim: int
    fiber: StandardTableau | str

    @property
    def fiber_key(self) -> str:
        return str(self.fiber)


def type_a_permutation(w: WeylElement, rank: int) -> tuple[int, ...]:
    return permutation_from_word(w.word, rank + 1)


def label_varieties(data: SteinbergData, convention: RSConvention | None = None) -> dict[WeylElement, OrbitalVarietyLabel]:
    """Label every ``w`` by its orbit, tau-invariant and half orbit dimension.

    Type A labels carry the RS fiber tableau; other types carry the
    representative word only and no two ``w`` are ever merged.
    """
    W = data.W
    type_a = data.rs.spec.family == "A"
    if type_a and convention is None:
        raise ValueError("type A labelling needs a calibrated RS convention")
    out = {}
    for w in W:
        obs = data.observe(w)
        dim = orbit_dim(obs.orbit)
        if dim % 2 or dim != obs.ad_rank:
            raise ChevalleyError(
                f"orbit {obs.orbit} of {w.word_str()}: formula dimension {dim}, rank(ad X) {obs.ad_rank}"
            )
        if type_a:
            fiber = convention.fiber_label(type_a_permutation(w, data.rs.rank))
        else:
            fiber = w.word_str()
        out[w] = OrbitalVarietyLabel(obs.orbit, W.tau(w), dim // 2, fiber)
    return out


# -- RS convention calibration ------------------------------------------------


@dataclass
class Calibration:
    convention: RSConvention
    checked: int
    rejected: dict[str, str]


def calibrate_rs_convention(config: SampleConfig | None = None, sizes: Sequence[int] = (3, 4)) -> Calibration:
    """Pick the RS convention matching the Jordan-type oracle on small symmetric groups.

    A convention survives when, for every ``w``, the orbit of ``n cap w(n)``
    has the predicted shape and ``tau(w)`` equals the descent set of the
    fiber tableau.  Exactly one convention must survive.
    """
    from .chevalley import build_chevalley
    from .rootsys import build_root_system

    alive = {c: "" for c in ALL_CONVENTIONS}
    checked = 0
    for n in sizes:
        rs = build_root_system(f"A{n - 1}")
        W = WeylGroup(rs)
        data = SteinbergData(W, build_chevalley(rs), config)
        for w in W:
            obs = data.observe(w)
            p = type_a_permutation(w, rs.rank)
            tau = W.tau(w)
            checked += 1
            for c in ALL_CONVENTIONS:
                if alive.get(c) != "":
                    continue
                if c.orbit_shape(p) != obs.orbit.partition:
                    alive[c] = f"shape mismatch at {w.word_str()} in S{n}"
                elif tableau_tau(c.fiber_label(p)) != tau:
                    alive[c] = f"tau/descent mismatch at {w.word_str()} in S{n}"
    survivors = [c for c, why in alive.items() if why == ""]
    if len(survivors) != 1:
        raise RuntimeError(f"RS calibration left {len(survivors)} conventions: {survivors}")
    rejected = {c.stamp: why for c, why in alive.items() if why}
    return Calibration(survivors[0], checked, rejected)
