"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line (shown in the terminal summary) with the
sub-checks that decided it, then asserts.  Ring builds are shared through
the session ``rings`` fixture; the time limits are checked against the wall
time of each build including the rings it depends on.
"""

import time

from conftest import ACCEPTANCE, laurent_polys
from hypothesis import given, settings
from oracles import membership_agreement, permutation_determinism

from k0genus2.fixtures import fixture
from k0genus2.groebner import PolynomializedRing, ideal_contains, strong_gb
from k0genus2.ktproj import proj_presentation
from k0genus2.laurent import lp_swap_ab
from k0genus2.moduli import COMPLEMENT_ALPHABET, M2_ALPHABET
from k0genus2.pushforward import pushforward_on_moduli_chart, pushforward_power_map, substitute_t_on_chart
from k0genus2.reprings import G_ALPHABET, GClass, dual_w_class, w_class
from k0genus2.symfun import CHARACTERS, SYMMETRIC, from_characters, to_characters

E_TO_EPS = {"e1": "eps", "e2": "lam"}


def record(n: int, checks: dict, note: str = ""):
    failed = [k for k, v in checks.items() if not v]
    text = ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in checks.items())
    if note:
        text += f"  [{note}]"
    ACCEPTANCE[n] = (not failed, text)
    assert not failed, f"criterion {n}: failed {failed}"


def _same(a, b):
    return a == b.rename(a.alphabet)


def test_criterion_01_veronese():
    start = time.perf_counter()
    x0 = pushforward_power_map(2, 1, 2, 0).value
    x1 = pushforward_power_map(2, 1, 2, 1).value
    sec = time.perf_counter() - start
    record(1, {
        "x^0": _same(x0, fixture("veronese_x0")),
        "x^1": _same(x1, fixture("veronese_x1")),
        "time<1s": sec < 1,
    }, f"{sec:.3f} s")


def test_criterion_02_sextic_square_map():
    start = time.perf_counter()
    checks = {
        "x^0": _same(pushforward_power_map(2, 1, 6, 0).value, fixture("sextic_square_x0")),
        "x^1": _same(pushforward_power_map(2, 1, 6, 1).value, fixture("sextic_square_x1")),
        "alpha_10": _same(pushforward_on_moduli_chart(2, 1, 6, 0), fixture("alpha_10")),
        "alpha_11": _same(pushforward_on_moduli_chart(2, 1, 6, 1), fixture("alpha_11")),
    }
    sec = time.perf_counter() - start
    checks["time<10s"] = sec < 10
    record(2, checks, f"{sec:.2f} s")


def test_criterion_03_containments():
    start = time.perf_counter()
    checks = {}
    ring = PolynomializedRing(M2_ALPHABET, order="grevlex")
    alpha = [pushforward_on_moduli_chart(2, 1, 6, k).rename(M2_ALPHABET, E_TO_EPS) for k in (0, 1)]
    gb = strong_gb(alpha, ring)
    p6 = from_characters(substitute_t_on_chart(proj_presentation(6).relation))
    for r in (2, 3):
        for k in range(r + 1):
            f = pushforward_on_moduli_chart(2, r, 6, k).rename(M2_ALPHABET, E_TO_EPS)
            checks[f"M2 pi_{r}(x^{k})"] = ideal_contains(gb, f)
    checks["M2 P^6 relation"] = ideal_contains(gb, p6.rename(M2_ALPHABET, E_TO_EPS))

    ring = PolynomializedRing(COMPLEMENT_ALPHABET, order="grevlex")
    s = [pushforward_on_moduli_chart(*k) for k in ((3, 1, 6, 0), (3, 1, 6, 1), (3, 2, 6, 0))]
    gb = strong_gb(s, ring)
    for k in (1, 2):
        checks[f"C tau_2(x^{k})"] = ideal_contains(gb, pushforward_on_moduli_chart(3, 2, 6, k))
    checks["C P^6 relation"] = ideal_contains(gb, p6.rename(COMPLEMENT_ALPHABET))
    sec = time.perf_counter() - start
    checks["time<2min"] = sec < 120
    record(3, checks, f"{sec:.2f} s")


def test_criterion_04_m2(rings):
    m2 = rings.get("M2")
    rep = m2.report
    record(4, {
        "relations": m2.checks["relations_match"],
        "rank=18": rep.rank_Q == 18,
        "free": rep.free,
        "transcribed basis": bool(rep.candidate_ok),
        "time<1min": rings.seconds["M2"] < 60,
    }, f"{rings.seconds['M2']:.2f} s, det {rep.candidate_det}")


def test_criterion_05_bg(rings):
    bg = rings.get("BG")
    record(5, {
        "images": bg.checks["relations_match"],
        "P^2 relation": bg.checks["p2_relation_match"],
        "P^2 contained": bg.checks["contains_p2_relation"],
        "ideal equal after gam=e2*t^-1": bg.checks["gamma_substitution_equal"],
        "time<10s": rings.seconds["BG"] < 10,
    }, f"{rings.seconds['BG']:.2f} s; {len(bg.discrepancies)} display discrepancy recorded")


def test_criterion_06_rank_two_classes():
    eps, lam, gam = GClass.var("eps"), GClass.var("lam"), GClass.var("gam")
    rec = dual = absorb = True
    for n in range(2, 13):
        rec &= w_class(n - 1) * eps == w_class(n) + lam * gam * w_class(n - 2)
        dual &= lam ** n * dual_w_class(n) == w_class(n)
        absorb &= gam * w_class(n) == w_class(n)
    record(6, {
        "recursion": rec,
        "duality": dual,
        "gamma absorption": absorb,
        "W4 dual display": dual_w_class(4) == GClass(fixture("w4_dual").rename(G_ALPHABET)),
        "W6 dual display": dual_w_class(6) == GClass(fixture("w6_dual").rename(G_ALPHABET)),
    })


def test_criterion_07_delta1(rings):
    d1 = rings.get("Delta1")
    rep = d1.report
    readings = d1.checks["basis_readings"]
    record(7, {
        "R1 recomputed": d1.checks["r1_matches_display"],
        "R2 recomputed": d1.checks["r2_matches_display"],
        "rank=65": rep.rank_Q == 65,
        "free": rep.free,
        "both readings tested": set(readings) == {"delta=lam", "delta=gam*lam^-1"},
        "transcribed basis (some reading)": any(v["accepted"] for v in readings.values()),
        "time<5min": rings.seconds["Delta1"] < 300,
    }, f"{rings.seconds['Delta1']:.2f} s; " + "; ".join(
        f"{k}: {'accepted' if v['accepted'] else 'rejected'} (det {v['det']})" for k, v in sorted(readings.items())))


def test_criterion_08_complement(rings):
    co = rings.get("Complement")
    rep = co.report
    record(8, {
        "cube pushforwards": co.checks["cube_pushforwards_match"],
        "S10 S11 S20": co.checks["relations_match"],
        "tau containments": co.checks["contains_cube_r2_x1"] and co.checks["contains_cube_r2_x2"],
        "P^6 contained": co.checks["contains_p6_relation"],
        "rank=32": rep.rank_Q == 32,
        "free": rep.free,
        "transcribed basis": bool(rep.candidate_ok),
        "time<5min": rings.seconds["Complement"] < 300,
    }, f"{rings.seconds['Complement']:.2f} s")


def test_criterion_09_mbar2(rings):
    mb = rings.get("Mbar2")
    rep = mb.report
    total = rings.seconds["Mbar2"]
    record(9, {
        "kernel built": mb.checks["pushforward_in_kernel"] and mb.checks["kernel_in_delta1_ideal"]
        and mb.checks["kernel_in_complement_plus_pushforward"],
        "rank=97": rep.rank_Q == 97,
        "free": rep.free,
        "65+32=97": mb.checks["rank_additive"],
        "del=1 gives I_comp": mb.checks["del_one_equals_complement"],
        "time<15min": total < 900,
    }, f"{total:.1f} s; " + "; ".join(mb.mismatches))


def test_criterion_10_property_suites():
    checks = {}
    grid_ok = True
    for q in (2, 3):
        for r in (1, 2, 3):
            for N in range(q * r, 9):
                for k in range(r + 1):
                    res = pushforward_power_map(q, r, N, k)
                    lo, hi = res.t_range()
                    grid_ok &= res.certificate["exact"] and res.certificate["symmetric"] and -N <= lo and hi <= 0
    checks["polynomiality grid"] = grid_ok

    sym = laurent_polys(SYMMETRIC, max_terms=5, max_exp=4)
    chars = laurent_polys(CHARACTERS, max_terms=5, max_exp=4)
    count = {"n": 0}

    @settings(max_examples=1000, deadline=None, database=None)
    @given(sym, chars)
    def roundtrip(s, g):
        f = g + lp_swap_ab(g)
        assert from_characters(to_characters(s)) == s
        assert to_characters(from_characters(f)) == f
        count["n"] += 1

    try:
        roundtrip()
        checks["symfun roundtrips"] = count["n"] >= 1000
    except AssertionError:
        checks["symfun roundtrips"] = False

    bad = membership_agreement(seed=2024, n_ideals=200)
    checks["GB vs lattice oracle (200 ideals)"] = not bad
    bad_perm = permutation_determinism(seed=99, n_ideals=100)
    checks["GB permutation determinism"] = not bad_perm
    record(10, checks, f"{count['n']} roundtrips")
