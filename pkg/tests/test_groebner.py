import random

import pytest
from oracles import homogeneous_ideal_member, lattice_member, membership_agreement, permutation_determinism

from k0genus2.groebner import (
    InfiniteRankError,
    OrderMismatchError,
    PolynomializedRing,
    StepBudgetExceeded,
    eliminate,
    ideal_contains,
    ideal_intersect,
    ideals_equal,
    normal_form,
    quotient_report,
    strong_gb,
)
from k0genus2.laurent import LaurentPolynomial, VariableAlphabet, parse_polynomial

X = VariableAlphabet(["x"])
XY = VariableAlphabet(["x", "y"])
XYZ = VariableAlphabet(["x", "y", "z"])
XINV = VariableAlphabet(["x"], ["x"])
EG = VariableAlphabet(["eps", "gam"])
LG = VariableAlphabet(["lam", "gam"], ["lam", "gam"])


def P(text, alphabet):
    return parse_polynomial(text, alphabet)


def gb_of(gens, alphabet, order="grevlex", **kw):
    return strong_gb([P(g, alphabet) if isinstance(g, str) else g for g in gens],
                     PolynomializedRing(alphabet, order=order), **kw)


# -- worked examples -------------------------------------------------------

def test_unit_relation_absorbs():
    gb = gb_of(["1 - x^2"], XINV)
    assert ideal_contains(gb, P("x^2 - 1", XINV))
    assert ideal_contains(gb, P("x^-2 - 1", XINV))
    assert not ideal_contains(gb, P("x - 1", XINV))


def test_gcd_combination():
    gb = gb_of(["2*x", "3*x"], X)
    assert [str(g) for g in gb.laurent_generators()] == ["x"]


def test_gamma_relations():
    gb = gb_of(["gam^2 - 1", "eps - eps*gam"], EG)
    assert sorted(str(g) for g in gb.laurent_generators()) == sorted(["-1 + gam^2", "-eps + eps*gam"])


def test_normal_form_examples():
    gb = gb_of(["gam^2 - 1"], LG)
    assert normal_form(P("gam^2*lam", LG), gb) == P("lam", LG)
    g = P("3*x^2 + x", X)
    assert normal_form(g, gb_of([g, P("x^3", X)], X)).is_zero()
    assert normal_form(P("5", X), gb_of(["2"], X)) == P("1", X)


def test_eliminate_examples():
    ring = PolynomializedRing(VariableAlphabet(["y"]), tags=("x",))
    y = VariableAlphabet(["y"])
    x_minus_y = _sub({ring.mons.pack([1, 0]): 1}, ring.to_poly(P("y", y)))
    gens = [x_minus_y, ring.to_poly(P("y - 3", y))]
    out = eliminate(strong_gb(gens, ring), ["x"])
    assert out == [P("-3 + y", y)]
    out = eliminate(strong_gb(gens[:1], ring), ["x"])
    assert out == []


def _sub(p, q):
    r = dict(p)
    for m, c in q.items():
        r[m] = r.get(m, 0) - c
    return {m: c for m, c in r.items() if c}


def test_eliminate_order_mismatch():
    gb = gb_of(["x - y"], XY)
    with pytest.raises(OrderMismatchError):
        eliminate(gb, ["x"])


def test_intersect_examples():
    x, y = P("x", XY), P("y", XY)
    inter = ideal_intersect([x], [y], XY)
    assert ideals_equal(inter, [x * y], XY)
    xp2 = P("x + 2", XY)
    assert ideals_equal(ideal_intersect([x], [xp2], XY), [x * xp2], XY)
    assert ideals_equal(ideal_intersect([P("2", X)], [P("3", X)], X), [P("6", X)], X)
    f = [P("x^2 - y", XY), P("3*y", XY)]
    assert ideals_equal(ideal_intersect(f, f, XY), f, XY)


def test_quotient_examples():
    rep = quotient_report([P("x^2", X)], PolynomializedRing(X))
    assert (rep.rank_Q, rep.free, sorted(rep.basis)) == (2, True, ["1", "x"])
    rep = quotient_report([P("2", X), P("x", X)], PolynomializedRing(X))
    assert rep.rank_Q == 0 and rep.rank_mod_p[2] == 1 and not rep.free


def test_non_monic_basis_can_be_free():
    # leading coefficient 2 appears in the basis, yet y = -2x makes the
    # quotient Z[x]/(x^2 + x), free of rank 2
    rep = quotient_report([P("x^2 + x", XY), P("2*x + y", XY)], PolynomializedRing(XY))
    assert rep.rank_Q == 2 and rep.free


def test_torsion_detected():
    rep = quotient_report([P("x^2", X), P("6*x", X)], PolynomializedRing(X))
    assert rep.rank_Q == 1 and rep.rank_mod_p[2] == 2 and rep.rank_mod_p[3] == 2 and not rep.free


def test_candidate_basis():
    ring = PolynomializedRing(X)
    rep = quotient_report([P("x^2 - 3*x", X)], ring, candidate_basis=[P("1", X), P("x", X)])
    assert rep.candidate_ok and abs(rep.candidate_det) == 1
    rep = quotient_report([P("x^2", X)], ring, candidate_basis=[P("1", X), P("2*x", X)])
    assert not rep.candidate_ok and rep.candidate_det == 2
    rep = quotient_report([P("x^2 - 1", X)], ring, candidate_basis=[P("1", X), P("x^2", X)])
    assert not rep.candidate_ok and rep.candidate_det == 0
    rep = quotient_report([P("x^2", X)], ring, candidate_basis=[P("1", X)])
    assert not rep.candidate_ok


def test_infinite_rank():
    with pytest.raises(InfiniteRankError):
        quotient_report([P("x*y", XY)], PolynomializedRing(XY), limit=500)


def test_budget():
    with pytest.raises(StepBudgetExceeded):
        gb_of(["x^5 - y^3 + 2", "x^2*y - 3*y^2 + x", "7*x*y - 1"], XY, budget=5)


def test_report_json_deterministic():
    ring = PolynomializedRing(XY)
    a = quotient_report([P("x^2 - 2", XY), P("y^2 - x", XY)], ring).to_json()
    b = quotient_report([P("y^2 - x", XY), P("x^2 - 2", XY)], ring).to_json()
    assert a == b and set(a) == {"rank_Q", "rank_mod_p", "free", "basis", "primes"}


# -- property suites -------------------------------------------------------

def test_lattice_oracle_sanity():
    rows = [{(1,): 2}, {(1,): 3, (2,): 1}]
    assert lattice_member(rows, {(1,): 1, (2,): 1})
    assert not lattice_member([{(1,): 2}], {(1,): 1})
    assert homogeneous_ideal_member([{(1, 0): 2}], {(1, 1): 4}, 2)
    assert not homogeneous_ideal_member([{(1, 0): 2}], {(0, 2): 2}, 2)


def test_membership_matches_oracle_small():
    assert membership_agreement(seed=11, n_ideals=40) == []


def test_permutation_determinism_small():
    assert permutation_determinism(seed=5, n_ideals=30) == []


def test_affine_members_detected():
    rnd = random.Random(3)
    for _ in range(30):
        alph = XY
        gens = [LaurentPolynomial(alph, {(rnd.randint(0, 2), rnd.randint(0, 2)): rnd.randint(-5, 5)
                                        for _ in range(3)}) for _ in range(2)]
        gens = [g for g in gens if g]
        if not gens:
            continue
        gb = strong_gb(gens, PolynomializedRing(alph, order="grevlex"))
        f = LaurentPolynomial.zero(alph)
        for g in gens:
            f = f + g * LaurentPolynomial(alph, {(rnd.randint(0, 2), rnd.randint(0, 2)): rnd.randint(-4, 4)})
        assert ideal_contains(gb, f)
        assert normal_form(f, gb).is_zero()
