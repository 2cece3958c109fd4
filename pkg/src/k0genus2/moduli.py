"""Presentations of the Grothendieck rings of genus-two moduli and their strata.

Each ``build_k0_*`` recomputes the defining relations from localization or
induction, compares them with the transcribed reference values, runs the
containment checks, and computes a :class:`QuotientReport`.  Failures are
collected as mismatches, never raised, so a report always comes back.

Term order and pair selection are fixed per ring (see ``_STRATEGY``): the
Z-basis computation is far faster with sugar selection on some ideals and
with plain degree selection on others.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

from .fixtures import candidate_bases, fixture
from .groebner import (
    DEFAULT_PRIMES,
    InfiniteRankError,
    PolynomializedRing,
    QuotientReport,
    StrongGroebnerBasis,
    ideal_contains,
    ideal_intersect,
    ideals_equal,
    quotient_report,
    strong_gb,
)
from .ktproj import proj_presentation
from .laurent import LaurentPolynomial, VariableAlphabet, is_ab_symmetric, lp_substitute
from .pushforward import (
    pushforward_on_moduli_chart,
    pushforward_power_map,
    substitute_t_on_chart,
)
from .reprings import (
    G_ALPHABET,
    GClass,
    boundary_relations_r1_r2,
    dual_w_class,
    euler_lambda_minus1_dual,
    induce_class,
)
from .symfun import CHARACTERS, from_characters

log = logging.getLogger(__name__)

__all__ = [
    "RingPresentation",
    "ModuliRing",
    "M2_ALPHABET",
    "DELTA1_ALPHABET",
    "COMPLEMENT_ALPHABET",
    "MBAR2_ALPHABET",
    "BG_TORUS_ALPHABET",
    "build_k0_m2",
    "build_k0_bg",
    "build_k0_delta1",
    "build_k0_complement",
    "build_k0_mbar2",
    "verify_transcribed_bases",
    "delta1_basis_readings",
]

M2_ALPHABET = VariableAlphabet(["eps", "lam"], ["lam"])
DELTA1_ALPHABET = G_ALPHABET
COMPLEMENT_ALPHABET = VariableAlphabet(["e1", "e2"], ["e2"])
MBAR2_ALPHABET = VariableAlphabet(["eps", "lam", "del"], ["lam", "del"])
BG_TORUS_ALPHABET = VariableAlphabet(["e1", "e2", "t"], ["e2", "t"])

ORDER = "grevlex"
_STRATEGY = {"M2": "sugar", "Delta1": "normal", "Complement": "sugar", "Mbar2": "sugar", "BG": "sugar"}

_EXPECTED = {
    "M2": {"rank": 18, "free": True},
    "BG": {"rank": None, "free": True},
    "Delta1": {"rank": 65, "free": True},
    "Complement": {"rank": 32, "free": True},
    "Mbar2": {"rank": 97, "free": True},
}

_E_TO_EPS = {"e1": "eps", "e2": "lam"}


@dataclass
class RingPresentation:
    alphabet: VariableAlphabet
    relations: list

    def to_json(self) -> dict:
        return {
            "variables": list(self.alphabet.names),
            "invertible": list(self.alphabet.invertible),
            "relations": [str(r) for r in self.relations],
        }


@dataclass
class ModuliRing:
    name: str
    presentation: RingPresentation
    report: QuotientReport | None
    expected: dict
    checks: dict = field(default_factory=dict)
    mismatches: list = field(default_factory=list)
    discrepancies: list = field(default_factory=list)
    gb: StrongGroebnerBasis | None = None
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def _match(self) -> dict:
        rep = self.report
        rank_ok = (rep.rank_Q if rep else None) == self.expected["rank"]
        rel_ok = self.checks.get("relations_match")
        basis_ok = self.checks.get("basis_verified")
        return {"rank": bool(rank_ok), "relations": rel_ok, "basis": basis_ok}

    def to_json(self) -> dict:
        rep = self.report
        return {
            "name": self.name,
            "relations": [str(r) for r in self.presentation.relations],
            "rank_Q": rep.rank_Q if rep else None,
            "rank_mod_p": ({str(p): r for p, r in sorted(rep.rank_mod_p.items())} if rep else {}),
            "free": rep.free if rep else self.expected["free"],
            "basis": list(rep.basis) if rep else [],
            "reference_match": self._match(),
            "checks": {k: v for k, v in sorted(self.checks.items())},
            "mismatches": list(self.mismatches),
            "discrepancies": list(self.discrepancies),
        }


# ---------------------------------------------------------------------------
# helpers

def _ring(alphabet: VariableAlphabet, tags=()) -> PolynomializedRing:
    return PolynomializedRing(alphabet, tags=tags, order=ORDER)


def _same(a: LaurentPolynomial, b: LaurentPolynomial) -> bool:
    try:
        return a == b.rename(a.alphabet)
    except ValueError:
        return False


def _check(ring: ModuliRing, key: str, ok: bool, message: str):
    ring.checks[key] = bool(ok)
    if not ok:
        ring.mismatches.append(message)


def _finish(ring: ModuliRing, gens, prs: PolynomializedRing, primes, gb, candidate=None):
    rep = quotient_report(gens, prs, primes, candidate, gb=gb, strategy=_STRATEGY[ring.name])
    ring.report = rep
    exp = ring.expected
    _check(ring, "rank", rep.rank_Q == exp["rank"], f"rank_Q is {rep.rank_Q}, expected {exp['rank']}")
    _check(ring, "free", rep.free == exp["free"],
           f"freeness verdict {rep.free} (ranks mod p {rep.rank_mod_p}), expected {exp['free']}")
    return rep


def _on_chart(q, r, N, k, alphabet=M2_ALPHABET) -> LaurentPolynomial:
    return pushforward_on_moduli_chart(q, r, N, k).rename(alphabet, _E_TO_EPS)


def _p6_on_chart(alphabet) -> LaurentPolynomial:
    rel = proj_presentation(6).relation
    mapping = _E_TO_EPS if "eps" in alphabet.names else None
    return from_characters(substitute_t_on_chart(rel)).rename(alphabet, mapping)


# ---------------------------------------------------------------------------
# M2

def build_k0_m2(primes=DEFAULT_PRIMES) -> ModuliRing:
    start = time.perf_counter()
    alpha = []
    sym = True
    for k in (0, 1):
        res = pushforward_power_map(2, 1, 6, k)
        sym &= res.certificate["symmetric"]
        alpha.append(_on_chart(2, 1, 6, k))
    ring = ModuliRing("M2", RingPresentation(M2_ALPHABET, alpha), None, dict(_EXPECTED["M2"]))
    ring.checks["symmetric_before_rewrite"] = sym
    rel_ok = (_same(alpha[0], fixture("m2_relation_1")) and _same(alpha[1], fixture("m2_relation_2"))
              and _same(pushforward_on_moduli_chart(2, 1, 6, 0), fixture("alpha_10"))
              and _same(pushforward_on_moduli_chart(2, 1, 6, 1), fixture("alpha_11")))
    _check(ring, "relations_match", rel_ok, "recomputed relations differ from the reference values")

    prs = _ring(M2_ALPHABET)
    gb = strong_gb(alpha, prs, strategy=_STRATEGY["M2"])
    ring.gb = gb
    for r, top in ((2, 2), (3, 3)):
        for k in range(top + 1):
            f = _on_chart(2, r, 6, k)
            _check(ring, f"contains_square_r{r}_x{k}", ideal_contains(gb, f),
                   f"pushforward (r={r}, k={k}) not in the ideal")
    _check(ring, "contains_p6_relation", ideal_contains(gb, _p6_on_chart(M2_ALPHABET)),
           "projective-space relation not in the ideal")
    _, mons = candidate_bases()["M2"]
    rep = _finish(ring, alpha, prs, primes, gb, [m.rename(M2_ALPHABET) for m in mons])
    _check(ring, "basis_verified", bool(rep.candidate_ok),
           f"transcribed basis rejected (det {rep.candidate_det})")
    ring.seconds = time.perf_counter() - start
    return ring


# ---------------------------------------------------------------------------
# BG

def build_k0_bg(primes=DEFAULT_PRIMES) -> ModuliRing:
    """``K_0(BG)`` as a quotient of ``Z[e1, e2^{+-1}, t^{+-1}]``; infinite rank."""
    start = time.perf_counter()
    imgs = [from_characters(pushforward_power_map(2, 1, 2, k).value).rename(BG_TORUS_ALPHABET)
            for k in (0, 1)]
    ring = ModuliRing("BG", RingPresentation(BG_TORUS_ALPHABET, imgs), None, dict(_EXPECTED["BG"]))
    _check(ring, "relations_match",
           _same(imgs[0], fixture("bg_image_x0")) and _same(imgs[1], fixture("bg_image_x1")),
           "Veronese images differ from the reference values")

    p2 = from_characters(proj_presentation(2).relation).rename(BG_TORUS_ALPHABET)
    _check(ring, "p2_relation_match", _same(p2, fixture("bg_p2_relation")),
           "projective-plane relation differs from the reference value")
    prs = _ring(BG_TORUS_ALPHABET)
    gb = strong_gb(imgs, prs, strategy=_STRATEGY["BG"])
    ring.gb = gb
    _check(ring, "contains_p2_relation", ideal_contains(gb, p2), "P^2 relation not in the ideal")

    # the displayed two-term rewrite of the P^2 relation
    literal = fixture("bg_p2_rewrite").rename(BG_TORUS_ALPHABET)
    ring.checks["p2_rewrite_literal"] = literal == p2
    if literal != p2:
        t_inv = LaurentPolynomial.variable(BG_TORUS_ALPHABET, "t", -1)
        e1 = LaurentPolynomial.variable(BG_TORUS_ALPHABET, "e1")
        e2 = LaurentPolynomial.variable(BG_TORUS_ALPHABET, "e2")
        one = LaurentPolynomial.constant(BG_TORUS_ALPHABET, 1)
        corrected = -(e1 ** 2) * t_inv * (one - e2 * t_inv) + (one - e2 * t_inv) * (one + e2 * t_inv) ** 2
        ring.checks["p2_rewrite_corrected"] = corrected == p2
        ring.discrepancies.append(
            "two-term rewrite of the P^2 relation does not expand to it as printed; "
            f"difference {literal - p2}; with e1^2*t^-1 in place of e1^2 it does"
            if corrected == p2 else f"two-term rewrite differs from the P^2 relation by {literal - p2}")

    # gam = e2*t^-1 turns the presentation into (1 - gam^2, e1*(1 - gam))
    big = VariableAlphabet(["e1", "e2", "t", "gam"], ["e2", "t", "gam"])
    gam = LaurentPolynomial.variable(big, "gam")
    link = gam - LaurentPolynomial.variable(big, "e2") * LaurentPolynomial.variable(big, "t", -1)
    one = LaurentPolynomial.constant(big, 1)
    e1 = LaurentPolynomial.variable(big, "e1")
    left = [f.rename(big) for f in imgs] + [link]
    right = [one - gam ** 2, e1 * (one - gam), link]
    _check(ring, "gamma_substitution_equal", ideals_equal(left, right, big, order=ORDER),
           "ideal after gam = e2*t^-1 differs from (1 - gam^2, e1*(1 - gam))")

    try:
        quotient_report(imgs, prs, primes, gb=gb, limit=2000)
        _check(ring, "infinite_rank", False, "quotient unexpectedly has finite rank")
    except InfiniteRankError:
        ring.checks["infinite_rank"] = True
    ring.seconds = time.perf_counter() - start
    return ring


# ---------------------------------------------------------------------------
# Delta1

def _delta1_relations() -> tuple[list[LaurentPolynomial], dict]:
    # 1 - gam^2 and eps*(1 - gam) vanish in GClass normal form, so build them raw
    one = LaurentPolynomial.constant(G_ALPHABET, 1)
    gam = LaurentPolynomial.variable(G_ALPHABET, "gam")
    eps = LaurentPolynomial.variable(G_ALPHABET, "eps")
    r0 = euler_lambda_minus1_dual([4, 6])
    a = LaurentPolynomial.variable(CHARACTERS, "a")
    b = LaurentPolynomial.variable(CHARACTERS, "b")
    u = LaurentPolynomial.constant(CHARACTERS, 1)
    conormal = (u - b ** -4) * (u - b ** -6)
    r1 = induce_class(conormal)
    r2 = induce_class(a * conormal)
    d1, d2 = boundary_relations_r1_r2()
    checks = {
        "r1_matches_display": r1 == d1,
        "r2_matches_display": r2 == d2,
        "w4_dual_match": dual_w_class(4) == GClass(fixture("w4_dual").rename(G_ALPHABET)),
        "w6_dual_match": dual_w_class(6) == GClass(fixture("w6_dual").rename(G_ALPHABET)),
    }
    rels = [one - gam * gam, eps * (one - gam), r0.poly, r1.poly, r2.poly]
    return rels, checks


def delta1_basis_readings() -> dict[str, list[LaurentPolynomial]]:
    """The transcribed 65-element list under ``delta = lam`` and ``delta = gam*lam^-1``."""
    alph, mons = candidate_bases()["Delta1"]
    out = {"delta=lam": [], "delta=gam*lam^-1": []}
    for m in mons:
        (e, _), = m.items()
        ie, idl, ig = e[alph.index("eps")], e[alph.index("delta")], e[alph.index("gam")]
        out["delta=lam"].append(LaurentPolynomial(G_ALPHABET, {(ie, idl, ig): 1}))
        out["delta=gam*lam^-1"].append(LaurentPolynomial(G_ALPHABET, {(ie, -idl, ig + idl): 1}))
    return out


def build_k0_delta1(primes=DEFAULT_PRIMES) -> ModuliRing:
    start = time.perf_counter()
    rels, rel_checks = _delta1_relations()
    ring = ModuliRing("Delta1", RingPresentation(DELTA1_ALPHABET, rels), None, dict(_EXPECTED["Delta1"]))
    for k, v in rel_checks.items():
        _check(ring, k, v, f"{k} failed")
    ring.checks["relations_match"] = all(rel_checks.values())
    prs = _ring(DELTA1_ALPHABET)
    gb = strong_gb(rels, prs, strategy=_STRATEGY["Delta1"])
    ring.gb = gb
    _finish(ring, rels, prs, primes, gb)
    readings = {}
    for label, cand in delta1_basis_readings().items():
        rep = quotient_report(rels, prs, primes, cand, gb=gb, strategy=_STRATEGY["Delta1"])
        readings[label] = {"accepted": bool(rep.candidate_ok), "det": rep.candidate_det}
    ring.checks["basis_readings"] = readings
    accepted = [k for k, v in readings.items() if v["accepted"]]
    _check(ring, "basis_verified", bool(accepted), "transcribed basis rejected under both readings")
    ring.seconds = time.perf_counter() - start
    return ring


# ---------------------------------------------------------------------------
# complement of Delta1

def build_k0_complement(primes=DEFAULT_PRIMES) -> ModuliRing:
    start = time.perf_counter()
    alph = COMPLEMENT_ALPHABET
    keys = ((3, 1, 6, 0), (3, 1, 6, 1), (3, 2, 6, 0))
    rels = [pushforward_on_moduli_chart(*k) for k in keys]
    ring = ModuliRing("Complement", RingPresentation(alph, rels), None, dict(_EXPECTED["Complement"]))
    raw_ok = all(_same(from_characters(pushforward_power_map(*k).value), fixture(n))
                 for k, n in zip(keys, ("cube_r1_x0", "cube_r1_x1", "cube_r2_x0")))
    s_ok = all(_same(r, fixture(n)) for r, n in zip(rels, ("S10", "S11", "S20")))
    _check(ring, "cube_pushforwards_match", raw_ok, "cube-map pushforwards differ from the reference values")
    _check(ring, "relations_match", s_ok, "S relations differ from the reference values")
    ring.checks["symmetric_before_rewrite"] = all(is_ab_symmetric(pushforward_power_map(*k).value) for k in keys)

    prs = _ring(alph)
    gb = strong_gb(rels, prs, strategy=_STRATEGY["Complement"])
    ring.gb = gb
    for k in (1, 2):
        f = pushforward_on_moduli_chart(3, 2, 6, k)
        _check(ring, f"contains_cube_r2_x{k}", ideal_contains(gb, f), f"cube pushforward (r=2, k={k}) not in the ideal")
    _check(ring, "contains_p6_relation", ideal_contains(gb, _p6_on_chart(alph)),
           "projective-space relation not in the ideal")
    _, mons = candidate_bases()["Complement"]
    rep = _finish(ring, rels, prs, primes, gb, [m.rename(alph) for m in mons])
    _check(ring, "basis_verified", bool(rep.candidate_ok), f"transcribed basis rejected (det {rep.candidate_det})")
    ring.seconds = time.perf_counter() - start
    return ring


# ---------------------------------------------------------------------------
# Mbar2

def _delta1_in_mbar2(rels: list[LaurentPolynomial]) -> list[LaurentPolynomial]:
    """``gam -> lam*del`` on normal-form representatives."""
    big = VariableAlphabet(["eps", "lam", "gam", "del"], ["lam", "gam", "del"])
    lam_del = LaurentPolynomial.variable(big, "lam") * LaurentPolynomial.variable(big, "del")
    return [lp_substitute(f.rename(big), "gam", lam_del).rename(MBAR2_ALPHABET) for f in rels]


def build_k0_mbar2(primes=DEFAULT_PRIMES, delta1: ModuliRing | None = None,
                   complement: ModuliRing | None = None) -> ModuliRing:
    """Kernel ``(I_D cap I_C) + (1 - del^-1) I_D`` in ``Z[eps, lam^{+-1}, del^{+-1}]``.

    Since ``(1 - del^-1) I_D`` lies in ``I_D``, the modular law gives
    ``(I_D cap I_C) + (1 - del^-1) I_D = I_D cap (I_C + (1 - del^-1) I_D)``;
    the right-hand side is what gets computed, because both of its
    ideals have finite-rank quotients.
    """
    start = time.perf_counter()
    delta1 = delta1 or build_k0_delta1(primes)
    complement = complement or build_k0_complement(primes)
    A = MBAR2_ALPHABET
    prs = _ring(A)
    i_d = _delta1_in_mbar2(delta1.presentation.relations)
    i_c = [f.rename(A, _E_TO_EPS) for f in complement.presentation.relations]
    # reduced bases generate the same ideals and keep coefficients small
    gb_d = strong_gb(i_d, prs, strategy="normal")
    gb_c = strong_gb(i_c, prs, strategy="sugar")
    i_d_red = gb_d.laurent_generators()
    i_c_red = gb_c.laurent_generators()
    one = LaurentPolynomial.constant(A, 1)
    push = one - LaurentPolynomial.variable(A, "del", -1)
    pushed = [push * f for f in i_d_red]
    gb_l = strong_gb(i_c_red + pushed, prs, strategy="sugar")
    kernel = ideal_intersect(i_d_red, gb_l.laurent_generators(), A, order=ORDER, strategy="sugar")
    ring = ModuliRing("Mbar2", RingPresentation(A, kernel), None, dict(_EXPECTED["Mbar2"]))
    gb = strong_gb(kernel, prs, strategy=_STRATEGY["Mbar2"])
    ring.gb = gb
    _finish(ring, kernel, prs, primes, gb)
    ring.checks["relations_match"] = None

    _check(ring, "pushforward_in_kernel", all(ideal_contains(gb, f) for f in pushed),
           "(1 - del^-1) * I_D not inside the kernel")
    _check(ring, "kernel_in_delta1_ideal", all(ideal_contains(gb_d, f) for f in kernel),
           "kernel generator outside I_D")
    _check(ring, "kernel_in_complement_plus_pushforward", all(ideal_contains(gb_l, f) for f in kernel),
           "kernel generator outside I_C + (1 - del^-1) I_D")
    if delta1.report and complement.report:
        total = delta1.report.rank_Q + complement.report.rank_Q
        ring.checks["rank_additivity"] = f"{delta1.report.rank_Q} + {complement.report.rank_Q} = {total}"
        _check(ring, "rank_additive", ring.report.rank_Q == total,
               f"rank {ring.report.rank_Q} is not {total}")

    # del -> 1 should recover I_C in Z[eps, lam^{+-1}]
    at_one = [lp_substitute(f, "del", LaurentPolynomial.constant(A, 1)).rename(M2_ALPHABET) for f in kernel]
    at_one = [f for f in at_one if f]
    ic2 = [f.rename(M2_ALPHABET, _E_TO_EPS) for f in complement.presentation.relations]
    m2r = _ring(M2_ALPHABET)
    gb_one = strong_gb(at_one, m2r, strategy="sugar")
    gb_ic2 = strong_gb(ic2, m2r, strategy="sugar")
    down = all(ideal_contains(gb_ic2, f) for f in at_one)
    up = [ideal_contains(gb_one, f) for f in ic2]
    ring.checks["del_one_inside_complement"] = down
    ring.checks["complement_inside_del_one"] = all(up)
    if not (down and all(up)):
        # x in I_D cap I_C with x(del=1) = S forces S in I_D + (del - 1) I_C
        dm = LaurentPolynomial.variable(A, "del") - one
        gb_cert = strong_gb(i_d_red + [dm * f for f in i_c_red], prs, strategy="sugar")
        lifts = [ideal_contains(gb_cert, f.rename(A, _E_TO_EPS)) for f in ic2]
        ring.checks["complement_liftable"] = lifts
        rep_one = quotient_report(at_one, m2r, primes, gb=gb_one, strategy="sugar")
        ring.checks["del_one_quotient"] = {"rank_Q": rep_one.rank_Q, "free": rep_one.free,
                                           "rank_mod_p": {str(p): r for p, r in rep_one.rank_mod_p.items()}}
        stuck = [n for n, ok in zip(("S10", "S11", "S20"), lifts) if not ok]
        ring.mismatches.append(
            f"kernel at del = 1 is {'inside' if down else 'not inside'} I_C but does not contain "
            f"{', '.join(n for n, ok in zip(('S10', 'S11', 'S20'), up) if not ok)}; "
            f"{', '.join(stuck) or 'none'} not in I_D + (del - 1) I_C, so no element of "
            "I_D cap I_C restricts to them")
    ring.checks["del_one_equals_complement"] = down and all(up)
    ring.seconds = time.perf_counter() - start
    return ring


# ---------------------------------------------------------------------------

def verify_transcribed_bases(primes=DEFAULT_PRIMES, rings: dict | None = None) -> dict:
    """Candidate-basis verdicts for the three transcribed lists."""
    rings = rings or {}
    m2 = rings.get("M2") or build_k0_m2(primes)
    d1 = rings.get("Delta1") or build_k0_delta1(primes)
    co = rings.get("Complement") or build_k0_complement(primes)
    return {
        "M2": {"size": len(candidate_bases()["M2"][1]), "accepted": bool(m2.report.candidate_ok),
               "det": m2.report.candidate_det},
        "Delta1": {"size": len(candidate_bases()["Delta1"][1]), "readings": d1.checks["basis_readings"]},
        "Complement": {"size": len(candidate_bases()["Complement"][1]), "accepted": bool(co.report.candidate_ok),
                       "det": co.report.candidate_det},
    }
