"""Tau-obstruction scans, counterexample scenarios and their reports.

The logic: if ``O2`` lies in the closure of ``O1``, every orbital variety
``V1`` of ``O1`` has a closure meeting ``O2``.  If no orbital variety ``V2``
of ``O2`` has ``tau(V2) >= tau(V1)``, none of them can sit inside the closure
of ``V1``, so that closure is not a union of orbital varieties.  An
OBSTRUCTED verdict therefore needs the full list of varieties of ``O2``;
without a completeness certificate the scan answers UNKNOWN.
"""

from __future__ import annotations

import importlib.resources
import itertools
import json
from dataclasses import asdict, dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import __version__
from .cache import TABLE_STAMP
from .chevalley import ChevalleyAlgebra, build_chevalley
from .nilorbits import OrbitId, OrbitPoset, classical_poset, orbit_dim, signature_leq, signature_poset
from .rootsys import RootSystem, build_root_system, subsystem_type
from .rsk import RSConvention, count_syt, partitions, rs_bijection_count, tableau_tau
from .steinberg import (
    SampleConfig,
    SteinbergData,
    calibrate_rs_convention,
    label_varieties,
    type_a_permutation,
)
from .weyl import DEFAULT_CUTOFF, WeylElement, WeylGroup

PASS, FAIL = "pass", "fail"
OBSTRUCTED, COMPATIBLE, UNKNOWN = "OBSTRUCTED", "COMPATIBLE", "UNKNOWN"

STRUCTURE_STAMP = TABLE_STAMP

CLOSURE_ASSUMPTION = (
    "theorem input: the closure of an orbital variety of O meets every orbit in the closure of O "
    "(not certified by computation)"
)


# -- results -------------------------------------------------------------------


@dataclass
class Assertion:
    id: str
    anchor: str
    status: str
    provenance: str = "computed"
    detail: str = ""


@dataclass
class ScenarioResult:
    scenario: str
    seed: int
    convention: str
    assertions: list[Assertion] = field(default_factory=list)
    assumptions: list[str] = field(default_factory=list)
    findings: list[dict] = field(default_factory=list)
    aborted: bool = False

    @property
    def passed(self) -> bool:
        return not self.aborted and all(a.status == PASS for a in self.assertions)

    def check(self, id: str, ok: bool, anchor: str, provenance: str = "computed", detail: str = "") -> bool:
        self.assertions.append(Assertion(id, anchor, PASS if ok else FAIL, provenance, detail))
        return ok

    def get(self, id: str) -> Assertion:
        return next(a for a in self.assertions if a.id == id)

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "status": PASS if self.passed else FAIL,
            "aborted": self.aborted,
            "seed": self.seed,
            "conventionStamp": self.convention,
            "assertions": [asdict(a) for a in self.assertions],
            "assumptions": list(self.assumptions),
            "findings": list(self.findings),
        }


@dataclass(frozen=True)
class ObstructionReport:
    type: str
    upper: str
    lower: str
    variety: str
    tau: tuple[int, ...]
    lower_taus: tuple[tuple[int, ...], ...]
    verdict: str
    certificate: str | None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["tau"] = list(self.tau)
        d["lower_taus"] = [list(t) for t in self.lower_taus]
        return d


@dataclass(frozen=True)
class VarietyEntry:
    key: str
    tau: frozenset
    source: str = "sweep"


class CertificateError(RuntimeError):
    pass


def load_certificates() -> dict:
    text = importlib.resources.files("orbvar.data").joinpath("certificates.json").read_text()
    data = json.loads(text)
    if data.get("version") != 1:
        raise CertificateError(f"unsupported certificate file version {data.get('version')}")
    return data


# -- lab: shared per-type state ------------------------------------------------


class Lab:
    """Builds and memoises root systems, Weyl groups, algebras and Steinberg data."""

    def __init__(self, config: SampleConfig | None = None, cutoff: int = DEFAULT_CUTOFF, cache=None):
        self.config = config or SampleConfig()
        self.cutoff = cutoff
        self.cache = cache
        self._rs: dict[str, RootSystem] = {}
        self._W: dict[str, WeylGroup] = {}
        self._alg: dict[str, ChevalleyAlgebra] = {}
        self._data: dict[str, SteinbergData] = {}
        self.certificates = load_certificates()["certificates"]

    def root_system(self, name: str) -> RootSystem:
        if name not in self._rs:
            self._rs[name] = build_root_system(name)
        return self._rs[name]

    def weyl(self, name: str) -> WeylGroup:
        if name not in self._W:
            rs = self.root_system(name)
            if self.cache is not None:
                self._W[name] = self.cache.weyl_group(rs, self.cutoff)
            else:
                self._W[name] = WeylGroup(rs, cutoff=self.cutoff)
        return self._W[name]

    def algebra(self, name: str) -> ChevalleyAlgebra:
        if name not in self._alg:
            rs = self.root_system(name)
            if self.cache is not None:
                self._alg[name] = self.cache.algebra(rs)
            else:
                self._alg[name] = build_chevalley(rs)
        return self._alg[name]

    def steinberg(self, name: str) -> SteinbergData:
        if name not in self._data:
            self._data[name] = SteinbergData(self.weyl(name), self.algebra(name), self.config)
        return self._data[name]

    @cached_property
    def calibration(self):
        return calibrate_rs_convention(self.config)

    @property
    def convention(self) -> RSConvention:
        return self.calibration.convention

    @property
    def stamp(self) -> str:
        return f"{STRUCTURE_STAMP};{self.convention.stamp}"

    def result(self, scenario: str) -> ScenarioResult:
        return ScenarioResult(scenario, self.config.seed, self.stamp)

    # -- variety catalogues --

    def catalog(self, name: str) -> dict[OrbitId, list[VarietyEntry]]:
        data = self.steinberg(name)
        convention = self.convention if data.rs.spec.family == "A" else None
        labels = label_varieties(data, convention)
        out: dict[OrbitId, list[VarietyEntry]] = {}
        for w in data.W:
            lab = labels[w]
            entries = out.setdefault(lab.orbit, [])
            key = lab.fiber_key
            if any(e.key == key for e in entries):
                continue
            entries.append(VarietyEntry(key, lab.tau))
        return out

    def certified(self, name: str) -> dict[OrbitId, tuple[str, list[VarietyEntry]]]:
        """Orbits whose variety list is certified complete by a cited fact."""
        out = {}
        data = self.steinberg(name)
        for c in self.certificates:
            if c["type"] != name or c["kind"] != "complete-variety-list":
                continue
            orbit = data.identify_orbit(data.W.parse_word(c["orbit_word"]))
            entries = []
            for word in c["varieties"]:
                w = data.W.parse_word(word)
                if data.identify_orbit(w) != orbit:
                    raise CertificateError(f"certificate {c['id']}: {word} is not in orbit {orbit}")
                entries.append(VarietyEntry(w.word_str(), data.W.tau(w), "certificate"))
            out[orbit] = (c["id"], entries)
        return out

    def certificate(self, cert_id: str) -> dict:
        return next(c for c in self.certificates if c["id"] == cert_id)

    def poset(self, name: str) -> OrbitPoset:
        rs = self.root_system(name)
        if rs.spec.family in "ABCD":
            return classical_poset(rs.spec.family, rs.rank)
        return signature_poset(self.steinberg(name).orbits())


# -- the scan -------------------------------------------------------------------


def _tau_tuple(t: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(t))


def tau_obstruction_scan(
    type_name: str,
    catalog: dict[OrbitId, list[VarietyEntry]],
    poset: OrbitPoset,
    complete: dict[OrbitId, str],
    pairs: Sequence[tuple[OrbitId, OrbitId]] | None = None,
    extra: dict[OrbitId, list[VarietyEntry]] | None = None,
) -> list[ObstructionReport]:
    """One report per (pair, distinct tau of an upper-orbit variety).

    ``complete`` maps orbits to the name of the certificate that their
    variety list (catalogue plus ``extra``) is exhaustive.
    """
    extra = extra or {}
    pairs = poset.covering_pairs() if pairs is None else pairs
    reports = []
    for hi, lo in pairs:
        lower = list(catalog.get(lo, [])) + list(extra.get(lo, []))
        lower_taus = sorted({_tau_tuple(e.tau) for e in lower})
        seen = set()
        for e in catalog.get(hi, []):
            t = _tau_tuple(e.tau)
            if t in seen:
                continue
            seen.add(t)
            if any(set(t) <= set(lt) for lt in lower_taus):
                verdict = COMPATIBLE
            elif lo in complete:
                verdict = OBSTRUCTED
            else:
                verdict = UNKNOWN
            reports.append(
                ObstructionReport(
                    type_name, hi.label, lo.label, e.key, t, tuple(lower_taus), verdict,
                    complete.get(lo) if verdict == OBSTRUCTED else None,
                )
            )
    return reports


def completeness(lab: Lab, name: str, catalog) -> tuple[dict[OrbitId, str], dict[OrbitId, list[VarietyEntry]]]:
    """Completeness certificates and cited variety lists for the orbits of ``name``."""
    rs = lab.root_system(name)
    complete: dict[OrbitId, str] = {}
    extra: dict[OrbitId, list[VarietyEntry]] = {}
    for orbit, entries in catalog.items():
        if orbit_dim(orbit) == 0:
            complete[orbit] = "zero orbit"
        elif rs.spec.family == "A" and len(entries) == count_syt(orbit.partition):
            complete[orbit] = "SYT enumeration"
    for orbit, (cid, entries) in lab.certified(name).items():
        complete.setdefault(orbit, f"cited:{cid}")
        extra[orbit] = entries
    return complete, extra


def scan_type(lab: Lab, name: str) -> ScenarioResult:
    """Full tau-obstruction scan over the covering pairs of one type."""
    res = lab.result(f"scan-{name}")
    rs = lab.root_system(name)
    data = lab.steinberg(name)
    obs = data.observe_all()
    res.check(
        "half-dimension law", all(o.half_dimension_ok for o in obs), "half-dimension law",
        detail=f"{sum(o.half_dimension_ok for o in obs)}/{len(obs)} elements",
    )
    unstable = [o.w.word_str() for o in obs if not o.stable]
    res.check("stable orbit identification", not unstable, "genericity protocol",
              detail=f"unstable: {unstable}" if unstable else f"k={lab.config.k}")
    catalog = lab.catalog(name)
    poset = lab.poset(name)
    complete, extra = completeness(lab, name, catalog)
    for orbit, (cid, entries) in lab.certified(name).items():
        cited = {_tau_tuple(e.tau) for e in entries}
        swept = {_tau_tuple(e.tau) for e in catalog.get(orbit, [])}
        res.check(f"sweep agrees with {cid}", swept <= cited, "cited variety list",
                  detail=f"swept tau {sorted(swept)}, cited tau {sorted(cited)}")
        res.assumptions.append(f"{cid}: {lab.certificate(cid)['citation']}")
    if poset.heuristic:
        res.assumptions.append("closure order: dimension-graded signature dominance (heuristic)")
    reports = tau_obstruction_scan(name, catalog, poset, complete, extra=extra)
    res.findings = [r.to_dict() for r in reports]
    res.assumptions.append(CLOSURE_ASSUMPTION)
    n_obs = sum(r.verdict == OBSTRUCTED for r in reports)
    res.check("scan completed", True, "tau-obstruction scan",
              detail=f"{len(reports)} reports, {n_obs} OBSTRUCTED, "
                     f"{sum(r.verdict == UNKNOWN for r in reports)} UNKNOWN")
    return res


# -- rank-two scenarios ------------------------------------------------------------


def _named_simple(rs: RootSystem) -> tuple[int, int]:
    """(long index, short index) of a rank-two non-simply-laced system."""
    long_ = [i for i in range(rs.rank) if rs.is_long(rs.simple_root(i))]
    short = [i for i in range(rs.rank) if not rs.is_long(rs.simple_root(i))]
    if len(long_) != 1 or len(short) != 1:
        raise ValueError(f"{rs.name} has no long/short simple pair")
    return long_[0], short[0]


def _rank2_scenario(lab: Lab, name: str, lower_len: int, beta: int | None, alpha: int | None) -> ScenarioResult:
    res = lab.result(f"{name}-counterexample")
    rs = lab.root_system(name)
    W = lab.weyl(name)
    data = lab.steinberg(name)
    if beta is None or alpha is None:
        beta, alpha = _named_simple(rs)
    names = {beta: "beta", alpha: "alpha"}
    guard = rs.is_long(rs.simple_root(beta)) and not rs.is_long(rs.simple_root(alpha))
    res.check(
        "labeling: beta long, alpha short", guard, "s is the reflection of the long root beta",
        provenance="guard",
        detail=f"beta=alpha{beta + 1} |beta|^2={rs.norm(rs.simple_root(beta))}, "
               f"alpha=alpha{alpha + 1} |alpha|^2={rs.norm(rs.simple_root(alpha))}",
    )
    if not guard:
        res.aborted = True
        return res

    lower_word = [alpha if k % 2 == 0 else beta for k in range(lower_len)]
    lower_name = "".join("t" if i == alpha else "s" for i in lower_word)
    s = W.simple(beta)
    low = W.from_word(lower_word)

    def tau_str(w: WeylElement) -> str:
        return "{" + ",".join(names[i] for i in sorted(W.tau(w))) + "}"

    res.check("tau(s)={beta}", W.tau(s) == {beta}, f"{name}: tau(s)", detail=f"tau(s)={tau_str(s)}")
    res.check(f"tau({lower_name})={{alpha}}", W.tau(low) == {alpha}, f"{name}: tau({lower_name})",
              detail=f"tau({lower_name})={tau_str(low)}")
    res.check(f"{lower_name} is reduced", len(low) == lower_len, f"{name}: word length",
              detail=f"length {len(low)}")

    o_s, o_low = data.observe(s), data.observe(low)
    O1, O2 = o_s.orbit, o_low.orbit
    res.check(f"O_s != O_{lower_name}", O1 != O2, f"{name}: distinct orbits",
              detail=f"O_s={O1.label}, O_{lower_name}={O2.label}")
    d1, d2 = orbit_dim(O1), orbit_dim(O2)
    res.check(f"dim O_s > dim O_{lower_name}", d1 > d2, f"{name}: orbit dimensions", detail=f"{d1} > {d2}")
    res.check("orbit dimensions equal rank(ad X)", d1 == o_s.ad_rank and d2 == o_low.ad_rank,
              "rank oracle", detail=f"rank(ad X_s)={o_s.ad_rank}, rank(ad X_{lower_name})={o_low.ad_rank}")
    res.check("half-dimension law at s and " + lower_name,
              o_s.half_dimension_ok and o_low.half_dimension_ok, "half-dimension law",
              detail=f"bsat dims {o_s.bsat_dim}, {o_low.bsat_dim}")

    poset = lab.poset(name)
    if rs.spec.family in "ABCD":
        res.check(f"O_s covers O_{lower_name}", poset.is_covering(O1, O2), f"{name}: no intermediate orbit",
                  detail=f"{O1.label} > {O2.label}; between: {[o.label for o in poset.strictly_between(O2, O1)]}")
    else:
        cert = lab.certificate(f"{name}-closure-containment")
        res.assumptions.append(f"{cert['id']}: {cert['citation']}")
        res.check("closure containment consistent with ad-rank signatures",
                  signature_leq(O2.signature, O1.signature), f"{name}: closure containment (necessary condition)",
                  detail=f"{O2.label} <= {O1.label} termwise")
        between = [o.label for o in poset.strictly_between(O2, O1)]
        res.check("signatures separate all observed orbits",
                  len({orbit_dim(o) for o in poset.orbits}) == len(poset.orbits), f"{name}: orbit separation",
                  detail=f"{len(poset.orbits)} orbits; between O_s and O_{lower_name}: {between}")

    cid = f"{name}-lower-orbit-unique-variety"
    cert = lab.certificate(cid)
    res.assumptions.append(f"{cid}: {cert['citation']}")
    res.assumptions.append(CLOSURE_ASSUMPTION)
    swept = sorted({_tau_tuple(W.tau(o.w)) for o in data.observe_all() if o.orbit == O2})
    res.check(f"every w with O_w = O_{lower_name} has tau = {{alpha}}", swept == [(alpha,)],
              "cited variety list corroborated by sweep", detail=f"swept tau sets {swept}")

    catalog = lab.catalog(name)
    complete, extra = completeness(lab, name, catalog)
    reports = tau_obstruction_scan(name, catalog, poset, complete, pairs=[(O1, O2)], extra=extra)
    mine = [r for r in reports if r.tau == (beta,)]
    verdict = mine[0].verdict if mine else "missing"
    res.check("obstruction verdict OBSTRUCTED", verdict == OBSTRUCTED, f"{name}: tau(s) not contained in tau(V2)",
              detail=f"V_s tau={{beta}} against lower tau sets {[list(t) for t in mine[0].lower_taus] if mine else []}")
    res.findings = [r.to_dict() for r in reports]
    return res


def scenario_b2(lab: Lab, beta: int | None = None, alpha: int | None = None) -> ScenarioResult:
    return _rank2_scenario(lab, "B2", 3, beta, alpha)


def scenario_g2(lab: Lab, beta: int | None = None, alpha: int | None = None) -> ScenarioResult:
    return _rank2_scenario(lab, "G2", 5, beta, alpha)


# -- D4 ----------------------------------------------------------------------------


D4_UPPER = "s1s3s1"
D4_LOWER = ("s1s2s4s3s1s2s4", "s3s1s2s4s3s1s2s4s3")


def scenario_d4(lab: Lab) -> ScenarioResult:
    res = lab.result("D4-counterexample")
    W = lab.weyl("D4")
    data = lab.steinberg("D4")
    rs = W.rs
    center = [i for i in range(4) if sum(1 for j in range(4) if j != i and rs.cartan[i][j]) == 3]
    if not res.check("node 3 is the trivalent node", center == [2], "D4 labeling", provenance="guard",
                     detail=f"central index {[c + 1 for c in center]}"):
        res.aborted = True
        return res
    res.check("s3(alpha_i) = alpha_i + alpha_3 for i = 1, 2, 4",
              all(rs.reflect(2, rs.simple_root(i)) == tuple(int(j in (i, 2)) for j in range(4)) for i in (0, 1, 3)),
              "D4: reflection s3")

    up = W.parse_word(D4_UPPER)
    lows = [W.parse_word(x) for x in D4_LOWER]
    expected_tau = {D4_UPPER: {0, 2}, D4_LOWER[0]: {0, 1, 3}, D4_LOWER[1]: {2}}
    for word, w in [(D4_UPPER, up), *zip(D4_LOWER, lows)]:
        got = W.tau(w)
        res.check(f"tau({word})={{{','.join(f'alpha{i + 1}' for i in sorted(expected_tau[word]))}}}",
                  got == expected_tau[word], f"D4: tau({word})",
                  detail=f"computed {{{','.join(f'alpha{i + 1}' for i in sorted(got))}}}")
    O1 = data.identify_orbit(up)
    res.check(f"O_{D4_UPPER} = (3,3,1,1)", O1.partition == (3, 3, 1, 1), "D4: O1 <-> (3,3,1,1)",
              detail=f"Jordan type {O1.label}")
    for word, w in zip(D4_LOWER, lows):
        o = data.identify_orbit(w)
        res.check(f"O_{word} = (3,2,2,1)", o.partition == (3, 2, 2, 1), "D4: O2 <-> (3,2,2,1)",
                  detail=f"Jordan type {o.label}")
    O2 = data.identify_orbit(lows[0])
    stable = all(data.observe(w).stable for w in [up, *lows])
    res.check("orbit identification stable over samples", stable, "genericity protocol")
    res.check("orbit dimensions equal rank(ad X)",
              all(orbit_dim(data.observe(w).orbit) == data.observe(w).ad_rank for w in [up, *lows]),
              "rank oracle",
              detail=f"dim O1={orbit_dim(O1)}, dim O2={orbit_dim(O2)}")
    poset = lab.poset("D4")
    res.check("(3,3,1,1) covers (3,2,2,1)", poset.is_covering(O1, O2), "D4: no intermediate orbit",
              detail=f"between: {[o.label for o in poset.strictly_between(O2, O1)]}")

    cid = "D4-lower-orbit-two-varieties"
    res.assumptions.append(f"{cid}: {lab.certificate(cid)['citation']}")
    res.assumptions.append(CLOSURE_ASSUMPTION)
    swept = sorted({_tau_tuple(W.tau(o.w)) for o in data.observe_all() if o.orbit == O2})
    res.check("every w with O_w = (3,2,2,1) has one of the two cited tau sets",
              swept == sorted([(0, 1, 3), (2,)]), "cited variety list corroborated by sweep",
              detail=f"swept tau sets {swept}")

    catalog = lab.catalog("D4")
    complete, extra = completeness(lab, "D4", catalog)
    reports = tau_obstruction_scan("D4", catalog, poset, complete, pairs=[(O1, O2)], extra=extra)
    mine = [r for r in reports if r.tau == (0, 2)]
    res.check("obstruction verdict OBSTRUCTED", bool(mine) and mine[0].verdict == OBSTRUCTED,
              "D4: {alpha1,alpha3} not contained in either lower tau set",
              detail=f"verdict {mine[0].verdict if mine else 'missing'}")
    res.findings = [r.to_dict() for r in reports]
    return res


# -- lifting to larger algebras -------------------------------------------------------


def default_lift_subset(family: str, rank: int) -> tuple[int, ...]:
    family = family.upper()
    if family in "BC":
        return (rank - 2, rank - 1)
    if family == "F":
        return (1, 2)
    if family == "D":
        return tuple(range(rank - 4, rank))
    if family == "E":
        return (1, 2, 3, 4)
    raise ValueError(f"type {family}{rank} has no B2 or D4 parabolic to lift from")


def lift_counterexample(lab: Lab, name: str, subset: Sequence[int] | None = None) -> ScenarioResult:
    """Lift the rank-two or D4 counterexample along ``w = w_I d_m``."""
    rs = lab.root_system(name)
    fam = rs.spec.family
    subset = tuple(sorted(default_lift_subset(fam, rs.rank) if subset is None else subset))
    res = lab.result(f"lift-{name}-I={'.'.join(str(i + 1) for i in subset)}")
    wanted = "B2" if fam in "BCF" else "D4" if fam in "DE" else None
    got = subsystem_type(rs, subset)
    if wanted is None or got != wanted:
        raise ValueError(f"I={subset} in {name} has type {got}; the lift needs type {wanted}")
    W = lab.weyl(name)
    small = lab.weyl(wanted)
    srs = small.rs

    if wanted == "B2":
        long_ = [i for i in subset if rs.is_long(rs.simple_root(i))]
        short = [i for i in subset if i not in long_]
        to_small = {long_[0]: 0, short[0]: 1}
        w_I = W.simple(long_[0])
        expected_tau = {long_[0]}
    else:
        deg = {i: sum(1 for j in subset if j != i and rs.cartan[i][j]) for i in subset}
        c = next(i for i in subset if deg[i] == 3)
        outer = sorted(i for i in subset if i != c)
        to_small = {outer[0]: 0, outer[1]: 1, c: 2, outer[2]: 3}
        w_I = W.from_word([outer[0], c, outer[0]])
        expected_tau = {outer[0], c}
    from_small = {v: k for k, v in to_small.items()}

    par = W.parabolic(subset)
    d_m = par.d_m
    w = W.mul(w_I, d_m)
    res.check("|W| = |W_I| * |D_I|", len(W) == len(par.W_I) * len(par.D_I), "parabolic decomposition",
              detail=f"{len(W)} = {len(par.W_I)} * {len(par.D_I)}")
    w0_I = max(par.W_I, key=len)
    res.check("d_m = w0(I) * w0", d_m == W.mul(w0_I, W.longest), "maximal element of D_I",
              detail=f"l(d_m)={len(d_m)}")
    dec = W.parabolic_decompose(w, subset)
    res.check("decompose(w_I d_m) = (w_I, d_m)", dec == (w_I, d_m), "unique expression w = w_I d_I",
              detail=f"w_I={dec[0].word_str()}, l(d)={len(dec[1])}")
    res.check("l(w) = l(w_I) + l(d_m)", len(w) == len(w_I) + len(d_m), "length additivity",
              detail=f"{len(w)} = {len(w_I)} + {len(d_m)}")
    res.check("projection identity at w", W.check_projection_identity(w, subset), "projection identity")

    small_w = small.from_word([to_small[i] for i in w_I.word])
    small_tau = {from_small[i] for i in small.tau(small_w)}
    tau_w = set(W.tau(w)) & set(subset)
    res.check("tau(w) cap I = tau_{W_I}(w_I)", tau_w == small_tau, "tau restricts to the Levi",
              detail=f"tau(w) cap I={sorted(i + 1 for i in tau_w)}, tau_I(w_I)={sorted(i + 1 for i in small_tau)}")
    RI = W.positive_in_span(subset)
    inv = W.inverse(w_I).perm
    star = frozenset(k for k in RI if inv[k] in RI)
    res.check("n cap w(n) = n_I cap w_I(n_I)", W.steinberg_indices(w) == star,
              "Steinberg space of the lifted element",
              detail=f"{len(star)} roots")
    res.check("inherited obstruction: tau(w) cap I is the counterexample's tau(V1)",
              tau_w == expected_tau, f"{wanted} counterexample lifted",
              detail=f"w_I={w_I.word_str()}, tau={sorted(i + 1 for i in tau_w)}")
    res.findings = [{
        "type": name, "I": [i + 1 for i in subset], "subtype": wanted,
        "w_I": w_I.word_str(), "d_m_length": len(d_m), "w_length": len(w),
        "tau_w": sorted(i + 1 for i in W.tau(w)),
    }]
    res.assumptions.append(
        "theorem input: projections of orbital variety closures onto the Levi are closures of orbital varieties"
    )
    res.assumptions.append(CLOSURE_ASSUMPTION)
    return res


# -- type A ---------------------------------------------------------------------------


def scenario_sln(lab: Lab, n: int) -> ScenarioResult:
    if not 2 <= n <= 7:
        raise ValueError("scenario_sln needs 2 <= n <= 7")
    name = f"A{n - 1}"
    res = lab.result(f"sl{n}-support")
    data = lab.steinberg(name)
    W = data.W
    conv = lab.convention
    obs = data.observe_all()

    mismatches = [o.w.word_str() for o in obs
                  if o.orbit.partition != conv.orbit_shape(type_a_permutation(o.w, W.rs.rank))]
    res.check("Steinberg-RS law: orbit of n cap w(n) = RS shape", not mismatches, "type A fibers via RS",
              detail=f"{len(obs)} elements, {len(mismatches)} mismatches, k={lab.config.k}")
    res.check("half-dimension law", all(o.half_dimension_ok for o in obs), "half-dimension law")
    res.check("orbit identification stable", all(o.stable for o in obs), "genericity protocol")

    labels = label_varieties(data, conv)
    fibers: dict[str, list[WeylElement]] = {}
    for w in W:
        fibers.setdefault(labels[w].fiber_key, []).append(w)
    bad_tau = []
    for key, ws in fibers.items():
        t = tableau_tau(labels[ws[0]].fiber)
        if any(W.tau(w) != t for w in ws):
            bad_tau.append(key)
    res.check("tau constant on RS fibers", not bad_tau, "tau is constant on an orbital variety",
              detail=f"{len(fibers)} fiber classes")
    nsyt = sum(count_syt(lam) for lam in partitions(n))
    res.check("fiber classes = standard tableaux", len(fibers) == nsyt, "SYT enumeration",
              detail=f"{len(fibers)} classes, {nsyt} tableaux")

    catalog = lab.catalog(name)
    poset = lab.poset(name)
    complete, extra = completeness(lab, name, catalog)
    reports = tau_obstruction_scan(name, catalog, poset, complete, extra=extra)
    n_obs = sum(r.verdict == OBSTRUCTED for r in reports)
    n_unk = sum(r.verdict == UNKNOWN for r in reports)
    res.check("zero OBSTRUCTED", n_obs == 0, "type A: some V2 lies in the closure of V1",
              detail=f"{len(reports)} reports over {len(poset.covering_pairs())} covering pairs")
    res.check("every lower variety list certified", n_unk == 0, "SYT enumeration")
    order2 = [r for r in reports if max(map(int, r.upper.strip("()*").split(","))) <= 2]
    res.check("order-2 orbits pass the scan", all(r.verdict == COMPATIBLE for r in order2),
              "nilpotent order 2", detail=f"{len(order2)} reports with upper orbit of order <= 2")

    rich_bad = []
    for size in range(n):
        for subset in itertools.combinations(range(n - 1), size):
            w0I = W.from_word(_longest_word(W, subset))
            RI = W.positive_in_span(subset)
            m_I = frozenset(W.rs.positive) - RI
            o = data.observe(w0I)
            if W.steinberg_indices(w0I) != m_I or orbit_dim(o.orbit) != 2 * len(m_I) or o.ad_rank != 2 * len(m_I):
                rich_bad.append([i + 1 for i in subset])
    res.check("Richardson dimension identity for all I", not rich_bad, "Richardson components",
              detail=f"{2 ** (n - 1)} subsets, failures {rich_bad}")
    res.findings = [r.to_dict() for r in reports]
    res.assumptions.append(CLOSURE_ASSUMPTION)
    return res


def _longest_word(W: WeylGroup, subset: Sequence[int]) -> tuple[int, ...]:
    sset = set(subset)
    best = W.identity
    for w in W:
        if set(w.word) <= sset and len(w) > len(best):
            best = w
    return best.word


# -- sweeps -----------------------------------------------------------------------------


def half_dimension_sweep(lab: Lab, name: str) -> ScenarioResult:
    res = lab.result(f"half-dimension-{name}")
    data = lab.steinberg(name)
    obs = data.observe_all()
    bad = [o.w.word_str() for o in obs if not o.half_dimension_ok]
    res.check("bsaturation_dim = rank(ad X)/2 for every w", not bad, "half-dimension law",
              detail=f"{len(obs)} elements, {len(bad)} violations")
    if data.rep is not None:
        dims = [o.w.word_str() for o in obs if orbit_dim(o.orbit) != o.ad_rank]
        res.check("orbit_dim(Jordan type) = rank(ad X)", not dims, "dimension formula cross-check",
                  detail=f"{len(dims)} disagreements")
    unstable = sum(not o.stable for o in obs)
    res.check("no unstable orbit identification", unstable == 0, "genericity protocol",
              detail=f"{unstable} unstable")
    return res


def projection_identity_sweep(lab: Lab, name: str) -> ScenarioResult:
    res = lab.result(f"projection-identity-{name}")
    W = lab.weyl(name)
    n = W.rs.rank
    bad, total = 0, 0
    for size in range(n + 1):
        for subset in itertools.combinations(range(n), size):
            for w in W:
                total += 1
                w_I, d = W.parabolic_decompose(w, subset)
                ok = (W.mul(w_I, d) == w and len(w) == len(w_I) + len(d)
                      and W.in_parabolic(w_I, subset) and not (W.tau(d) & set(subset))
                      and W.check_projection_identity(w, subset))
                bad += not ok
    res.check("projection identity and decomposition for all (w, I)", bad == 0, "projection identity",
              detail=f"{total} pairs, {bad} violations")
    return res


def algebra_integrity(lab: Lab, name: str, sample: int | None = None) -> ScenarioResult:
    res = lab.result(f"algebra-{name}")
    alg = lab.algebra(name)
    rs = alg.rs
    res.check("dim g = |R| + rank", alg.dim == len(rs.roots) + rs.rank, "dimension", detail=f"dim={alg.dim}")
    if sample is None:
        n = alg.check_jacobi()
    else:
        n = alg.sample_jacobi(sample, seed=lab.config.seed)
    res.check("Jacobi identity", True, "Jacobi identity", detail=f"{n} triples")
    alg.verify_constants()
    res.check("antisymmetry and |N| = p+1", True, "structure constants", detail=f"max |N| = {alg.max_constant}")
    return res


def tableau_integrity(lab: Lab, nmax: int = 7) -> ScenarioResult:
    from math import factorial

    res = lab.result("rs-bijection")
    for n in range(1, nmax + 1):
        c = rs_bijection_count(n)
        res.check(f"sum #SYT^2 = {n}!", c == factorial(n), "RS bijection", detail=f"{c}")
    return res


# -- reports ------------------------------------------------------------------------------


def emit_report(results: Sequence[ScenarioResult], seed: int | None = None, convention: str = "") -> tuple[str, str]:
    """Deterministic JSON (source of truth) and Markdown rendered from it."""
    doc = {
        "library": "orbvar",
        "version": __version__,
        "seed": seed,
        "conventionStamp": convention,
        "overall": PASS if all(r.passed for r in results) else FAIL,
        "scenarios": [r.to_dict() for r in results],
    }
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    return text, render_markdown(json.loads(text))


def render_markdown(doc: dict) -> str:
    lines = [
        "# orbvar report",
        "",
        f"- version: {doc['version']}",
        f"- seed: {doc['seed']}",
        f"- convention: `{doc['conventionStamp']}`",
        f"- overall: **{doc['overall']}**",
        "",
    ]
    for sc in doc["scenarios"]:
        lines += [f"## {sc['scenario']} ({sc['status']})", ""]
        if sc["assertions"]:
            lines += ["| assertion | status | provenance | detail |", "|---|---|---|---|"]
            for a in sc["assertions"]:
                lines.append(f"| {a['id']} | {a['status']} | {a['provenance']} | {a['detail']} |")
            lines.append("")
        if sc["assumptions"]:
            lines.append("Assumptions:")
            lines += [f"- {x}" for x in sc["assumptions"]]
            lines.append("")
        obstructed = [f for f in sc["findings"] if f.get("verdict") == OBSTRUCTED]
        if obstructed:
            lines.append("OBSTRUCTED findings:")
            for f in obstructed:
                lines.append(f"- {f['type']}: {f['upper']} > {f['lower']}, V={f['variety']} "
                             f"tau={f['tau']} vs {f['lower_taus']} [{f['certificate']}]")
            lines.append("")
    return "\n".join(lines)
