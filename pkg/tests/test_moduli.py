import pytest

from k0genus2.fixtures import fixture
from k0genus2.groebner import ideal_contains
from k0genus2.laurent import LaurentPolynomial, lp_substitute
from k0genus2.moduli import (
    M2_ALPHABET,
    MBAR2_ALPHABET,
    delta1_basis_readings,
    verify_transcribed_bases,
)


def test_m2(rings):
    m2 = rings.get("M2")
    assert m2.ok, m2.mismatches
    assert m2.report.rank_Q == 18 and m2.report.free
    assert len(m2.report.basis) == 18
    j = m2.to_json()
    assert j["reference_match"] == {"rank": True, "relations": True, "basis": True}
    assert j["relations"] == [str(fixture("m2_relation_1").rename(M2_ALPHABET)),
                              str(fixture("m2_relation_2").rename(M2_ALPHABET))]


def test_bg(rings):
    bg = rings.get("BG")
    assert bg.ok, bg.mismatches
    assert bg.checks["infinite_rank"] and bg.checks["gamma_substitution_equal"]
    assert bg.report is None
    assert bg.checks["p2_rewrite_corrected"]
    assert bg.discrepancies


def test_delta1(rings):
    d1 = rings.get("Delta1")
    assert d1.ok, d1.mismatches
    assert d1.report.rank_Q == 65 and d1.report.free
    assert d1.checks["r1_matches_display"] and d1.checks["r2_matches_display"]
    readings = d1.checks["basis_readings"]
    assert set(readings) == {"delta=lam", "delta=gam*lam^-1"}
    assert readings["delta=lam"]["accepted"]


def test_delta1_readings_are_bijective_relabelings():
    r = delta1_basis_readings()
    assert len(r["delta=lam"]) == len(set(r["delta=lam"])) == 65
    assert len(r["delta=gam*lam^-1"]) == len(set(r["delta=gam*lam^-1"])) == 65


def test_complement(rings):
    co = rings.get("Complement")
    assert co.ok, co.mismatches
    assert co.report.rank_Q == 32 and co.report.free
    for key in ("contains_cube_r2_x1", "contains_cube_r2_x2", "contains_p6_relation", "basis_verified"):
        assert co.checks[key]


def test_mbar2_structure(rings):
    mb = rings.get("Mbar2")
    assert mb.report.rank_Q == 97 and mb.report.free
    for key in ("pushforward_in_kernel", "kernel_in_delta1_ideal", "kernel_in_complement_plus_pushforward",
                "rank_additive", "del_one_inside_complement"):
        assert mb.checks[key], key


def test_mbar2_kernel_contains_pushforward_of_delta1(rings):
    mb = rings.get("Mbar2")
    one = LaurentPolynomial.constant(MBAR2_ALPHABET, 1)
    dinv = LaurentPolynomial.variable(MBAR2_ALPHABET, "del", -1)
    lam = LaurentPolynomial.variable(MBAR2_ALPHABET, "lam")
    dl = LaurentPolynomial.variable(MBAR2_ALPHABET, "del")
    # 1 - (lam*del)^2 restricts the sign relation of Delta1
    assert ideal_contains(mb.gb, (one - dinv) * (one - (lam * dl) ** 2))


def test_mbar2_restricts_into_complement(rings):
    mb = rings.get("Mbar2")
    co = rings.get("Complement")
    from k0genus2.groebner import PolynomializedRing, strong_gb

    ring = PolynomializedRing(M2_ALPHABET, order="grevlex")
    gb_c = strong_gb([f.rename(M2_ALPHABET, {"e1": "eps", "e2": "lam"}) for f in co.presentation.relations], ring)
    one = LaurentPolynomial.constant(MBAR2_ALPHABET, 1)
    for f in mb.presentation.relations:
        g = lp_substitute(f, "del", one).rename(M2_ALPHABET)
        assert ideal_contains(gb_c, g)


@pytest.mark.parametrize("name", ["M2", "Complement"])
def test_transcribed_bases(rings, name):
    out = verify_transcribed_bases(rings={k: rings.get(k) for k in ("M2", "Delta1", "Complement")})
    assert out[name]["accepted"] and abs(out[name]["det"]) == 1
