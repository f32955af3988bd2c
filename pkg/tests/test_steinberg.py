import pytest

from orbvar.chevalley import build_chevalley
from orbvar.nilorbits import OrbitId
from orbvar.rootsys import build_root_system
from orbvar.steinberg import (
    SampleConfig,
    SteinbergData,
    _consensus,
    bsaturation_rank,
    calibrate_rs_convention,
    generic_element,
    generic_samples,
    label_varieties,
    sample_element,
)
from orbvar.weyl import WeylGroup


@pytest.fixture(scope="module")
def b2():
    rs = build_root_system("B2")
    return SteinbergData(WeylGroup(rs), build_chevalley(rs))


def test_samples_are_deterministic_and_supported(b2):
    w = b2.W.longest
    a, b = b2.samples(w), b2.samples(w)
    assert a == b
    assert len(a) == 5
    for s in a:
        x = sample_element(b2.alg, s)
        assert {b2.alg.basis_root(k) for k in x.coeffs} == b2.W.steinberg_roots(w)
        assert all(1 <= c <= 997 for c in s.coeffs)


def test_seed_changes_samples():
    rs = build_root_system("B2")
    W, alg = WeylGroup(rs), build_chevalley(rs)
    one = SteinbergData(W, alg, SampleConfig(seed=1)).samples(W.identity)
    two = SteinbergData(W, alg, SampleConfig(seed=2)).samples(W.identity)
    assert one != two


def test_generic_samples_reject_negative_roots(b2):
    with pytest.raises(ValueError):
        generic_samples(b2.alg, [(-1, 0)], seed=0)
    with pytest.raises(ValueError):
        SampleConfig(k=0)


def test_zero_element_for_longest(b2):
    w0 = b2.W.longest
    assert b2.W.steinberg_roots(w0) == set()
    obs = b2.observe(w0)
    assert obs.orbit.partition == (1, 1, 1, 1, 1)
    assert obs.ad_rank == 0 and obs.bsat_dim == 0


def test_identity_gives_regular_orbit(b2):
    obs = b2.observe(b2.W.identity)
    assert obs.orbit.partition == (5,)
    assert obs.bsat_dim == len(b2.rs.positive)
    assert obs.half_dimension_ok


def test_bsaturation_of_simple_root_vector(b2):
    # [b, e_beta] = span(e_beta, e_{beta+alpha}): only the short simple root moves e_beta
    alg = b2.alg
    x = generic_element(alg, [(1, 0)])
    assert bsaturation_rank(alg, x, [(1, 0)]) == 2
    y = generic_element(alg, [(0, 1)])
    # [b, e_alpha] also contains [e_{alpha+beta}, e_alpha], a multiple of e_{beta+2alpha}
    assert bsaturation_rank(alg, y, [(0, 1)]) == 3


def test_consensus_flags_disagreement():
    a = OrbitId("B", 2, (3, 1, 1))
    b = OrbitId("B", 2, (2, 2, 1))
    assert _consensus([a, a]) == (a, True)
    assert _consensus([b, a, b]) == (a, False)


def test_signature_mode_for_exceptional():
    rs = build_root_system("G2")
    data = SteinbergData(WeylGroup(rs), build_chevalley(rs))
    assert data.use_signature
    obs = data.observe(data.W.simple(1))
    assert obs.orbit.signature[0] == obs.ad_rank == 10


def test_labels_and_calibration():
    cal = calibrate_rs_convention()
    assert cal.convention.label == "P" and not cal.convention.transpose
    assert len(cal.rejected) == 3
    rs = build_root_system("A3")
    data = SteinbergData(WeylGroup(rs), build_chevalley(rs))
    labels = label_varieties(data, cal.convention)
    assert len({lab.fiber_key for lab in labels.values()}) == 10  # standard tableaux with 4 boxes
    with pytest.raises(ValueError):
        label_varieties(data)
