"""Strong Groebner bases over the integers for Laurent polynomial ideals.

Laurent rings are polynomialized: every invertible variable ``x`` gets an
auxiliary variable ``x_inv`` and the unit relation ``x*x_inv - 1`` joins
every generator set.  The engine is a Buchberger loop over Z with
S-polynomials and G-polynomials (Bezout combinations of leading
coefficients), Euclidean reduction of coefficients, and Buchberger's
product and chain criteria.  Pairs are selected by sugar degree by
default; ``strategy="normal"`` selects by lcm degree instead.  Which one
is fast depends on the ideal, the result does not.  The same loop runs
over GF(p) for the modular rank checks.

Monomials are packed into Python ints (16-bit fields with a guard bit),
so products are additions and divisibility is a single masked subtraction.
"""

from __future__ import annotations

import heapq
import logging
import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .laurent import LaurentPolynomial, VariableAlphabet

log = logging.getLogger(__name__)

__all__ = [
    "StepBudgetExceeded",
    "InfiniteRankError",
    "CandidateBasisError",
    "OrderMismatchError",
    "PolynomializedRing",
    "StrongGroebnerBasis",
    "QuotientReport",
    "QuotientGroup",
    "quotient_group",
    "verify_candidate_basis",
    "strong_gb",
    "normal_form",
    "eliminate",
    "ideal_intersect",
    "ideal_contains",
    "ideals_equal",
    "quotient_report",
    "DEFAULT_PRIMES",
    "DEFAULT_STEP_BUDGET",
]

DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13)
DEFAULT_STEP_BUDGET = 10**7

_FIELD = 16
_VALUE_BITS = _FIELD - 1
_MAX_EXP = (1 << _VALUE_BITS) - 1


class StepBudgetExceeded(RuntimeError):
    pass


class InfiniteRankError(ValueError):
    pass


class CandidateBasisError(ValueError):
    pass


class OrderMismatchError(ValueError):
    pass


def step_budget_from_env(default: int = DEFAULT_STEP_BUDGET) -> int:
    value = os.environ.get("K0GENUS2_STEP_BUDGET")
    return int(value) if value else default


# ---------------------------------------------------------------------------
# packed monomials and term orders

class _Monomials:
    """Packing, order keys and divisibility for a fixed variable list and block order."""

    def __init__(self, nvars: int, blocks: Sequence[Sequence[int]]):
        self.n = nvars
        self.blocks = [tuple(b) for b in blocks]
        flat = sorted(i for b in self.blocks for i in b)
        if flat != list(range(nvars)):
            raise ValueError(f"blocks {blocks} do not partition {nvars} variables")
        self.guard = sum(1 << (_FIELD * i + _VALUE_BITS) for i in range(nvars))
        self.shifts = [_FIELD * i for i in range(nvars)]
        self._mask = (1 << _FIELD) - 1
        self._keys: dict[int, int] = {}
        self._width = 24
        self._bias = 1 << 20

    def pack(self, exps: Sequence[int]) -> int:
        m = 0
        for e, s in zip(exps, self.shifts):
            if e < 0 or e > _MAX_EXP:
                raise OverflowError(f"exponent {e} out of range")
            m |= e << s
        return m

    def unpack(self, m: int) -> tuple[int, ...]:
        mask = self._mask
        return tuple((m >> s) & mask for s in self.shifts)

    def key(self, m: int) -> int:
        """Integer whose natural order is the term order (block grevlex)."""
        k = self._keys.get(m)
        if k is None:
            e = self.unpack(m)
            k = 0
            w = self._width
            bias = self._bias
            for block in self.blocks:
                k = (k << w) | sum(e[i] for i in block)
                for i in reversed(block):
                    k = (k << w) | (bias - e[i])
            self._keys[m] = k
        return k

    def divides(self, small: int, big: int) -> bool:
        g = self.guard
        return ((big | g) - small) & g == g

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.unpack(a), self.unpack(b)
        return self.pack([max(x, y) for x, y in zip(ea, eb)])

    def coprime(self, a: int, b: int) -> bool:
        ea, eb = self.unpack(a), self.unpack(b)
        return all(x == 0 or y == 0 for x, y in zip(ea, eb))

    def degree(self, m: int) -> int:
        return sum(self.unpack(m))


@dataclass
class _Elem:
    lm: int
    lc: int
    poly: dict
    tail: list
    age: int
    sugar: int = 0

    def __repr__(self):
        return f"_Elem(lm={self.lm}, lc={self.lc}, terms={len(self.poly)})"


def _lead(poly: dict, key) -> int:
    return max(poly, key=key)


def _make_elem(poly: dict, mons: _Monomials, modulus, age: int) -> _Elem:
    lm = _lead(poly, mons.key)
    lc = poly[lm]
    if modulus is None:
        if lc < 0:
            poly = {m: -c for m, c in poly.items()}
            lc = -lc
    elif lc != 1:
        inv = pow(lc, -1, modulus)
        poly = {m: (c * inv) % modulus for m, c in poly.items()}
        lc = 1
    tail = [(m, c) for m, c in poly.items() if m != lm]
    return _Elem(lm, lc, poly, tail, age)


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def charge(self, n: int = 1):
        self.used += n
        if self.used > self.limit:
            raise StepBudgetExceeded(f"reduction step budget {self.limit} exceeded")


def _reduce(poly: dict, basis: list, mons: _Monomials, modulus, budget: _Budget,
            full: bool) -> dict:
    """Reduce ``poly`` by ``basis`` (sorted by lc ascending).

    Over Z each term ``c*m`` is reduced by the divisor of smallest leading
    coefficient to the canonical remainder in ``[0, lc)``.  With
    ``full=False`` only leading terms are reduced.
    """
    f = dict(poly)
    key = mons.key
    guard = mons.guard
    heap = [-key(m) for m in f]
    bykey = {}
    for m in f:
        bykey[key(m)] = m
    heapq.heapify(heap)
    result = {}
    lms = [(g.lm, g) for g in basis]
    over_z = modulus is None
    while heap:
        k = -heapq.heappop(heap)
        m = bykey[k]
        c = f.pop(m, 0)
        if not c:
            continue
        g = None
        mg = m | guard
        for lm, cand in lms:
            if (mg - lm) & guard == guard:
                g = cand
                break
        if g is None:
            result[m] = c
            if not full:
                result.update(f)
                return result
            continue
        if over_z:
            q, r = divmod(c, g.lc)
        else:
            q, r = c, 0
        if q:
            budget.charge()
            shift = m - g.lm
            for tm, tc in g.tail:
                nm = tm + shift
                old = f.get(nm)
                delta = q * tc if over_z else (q * tc) % modulus
                if old is None:
                    f[nm] = -delta if over_z else (-delta) % modulus
                    nk = key(nm)
                    bykey[nk] = nm
                    heapq.heappush(heap, -nk)
                else:
                    v = old - delta
                    if not over_z:
                        v %= modulus
                    if v:
                        f[nm] = v
                    else:
                        del f[nm]
        if r:
            result[m] = r
            if not full:
                result.update(f)
                return result
    return result


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _combine(fi: _Elem, ci: int, si: int, fj: _Elem, cj: int, sj: int, modulus) -> dict:
    """ci*x^si*fi + cj*x^sj*fj."""
    out = {}
    for m, c in fi.poly.items():
        out[m + si] = ci * c
    for m, c in fj.poly.items():
        nm = m + sj
        v = out.get(nm, 0) + cj * c
        if modulus:
            v %= modulus
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    if modulus:
        out = {m: c % modulus for m, c in out.items() if c % modulus}
    return out


def _buchberger(polys: Iterable[dict], mons: _Monomials, modulus, budget: _Budget,
                strategy: str = "sugar") -> list[_Elem]:
    G: list[_Elem] = []
    by_lc: list[_Elem] = []  # reducers sorted by (lc, age)
    pending: set = set()
    heap: list = []
    counter = 0
    over_z = modulus is None
    if strategy not in ("sugar", "normal"):
        raise ValueError(f"unknown selection strategy {strategy!r}")
    sugar_first = strategy == "sugar"

    def strongly_divides(h, g):
        return mons.divides(h.lm, g.lm) and (not over_z or g.lc % h.lc == 0)

    def add(poly, sugar=0):
        nonlocal counter, by_lc
        e = _make_elem(poly, mons, modulus, len(G))
        e.sugar = max(sugar, max(mons.degree(m) for m in e.poly))
        idx = len(G)
        G.append(e)
        # keep the reducer set interreduced: drop superseded elements and
        # re-reduce tails that the new leading term can touch
        guard = mons.guard
        survivors = [g for g in by_lc if not strongly_divides(e, g)]
        survivors.append(e)
        survivors.sort(key=lambda x: (x.lc, x.age))
        by_lc = survivors
        elm = e.lm
        for k, g in enumerate(by_lc):
            if g is e:
                continue
            if any(((m | guard) - elm) & guard == guard for m, _ in g.tail):
                others = [h for h in by_lc if h is not g]
                tail = _reduce(dict(g.tail), others, mons, modulus, budget, full=True)
                g.tail = list(tail.items())
                tail[g.lm] = g.lc
                g.poly = tail
        de = mons.degree(e.lm)
        for i, g in enumerate(G[:-1]):
            L = mons.lcm(g.lm, e.lm)
            dl = mons.degree(L)
            sug = max(g.sugar + dl - mons.degree(g.lm), e.sugar + dl - de)
            pending.add((i, idx))
            counter += 1
            first = sug if sugar_first else dl
            heapq.heappush(heap, (first, dl, sug, counter, i, idx))

    for p in polys:
        if not p:
            continue
        r = _reduce(p, by_lc, mons, modulus, budget, full=True)
        if r:
            add(r)

    while heap:
        _, _, sug, _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        fi, fj = G[i], G[j]
        L = mons.lcm(fi.lm, fj.lm)
        units = not over_z or (fi.lc == 1 and fj.lc == 1)
        new = []
        skip_s = False
        if units and mons.coprime(fi.lm, fj.lm):
            skip_s = True
        else:
            lcm_c = fi.lc * fj.lc // math.gcd(fi.lc, fj.lc)
            for k, gk in enumerate(G):
                if k == i or k == j:
                    continue
                if not mons.divides(gk.lm, L):
                    continue
                if over_z and lcm_c % gk.lc:
                    continue
                a, b = (i, k) if i < k else (k, i)
                c, d = (j, k) if j < k else (k, j)
                if (a, b) not in pending and (c, d) not in pending:
                    skip_s = True
                    break
        if not skip_s:
            if modulus:
                new.append(_combine(fi, 1, L - fi.lm, fj, -1, L - fj.lm, modulus))
            else:
                lcm_c = fi.lc * fj.lc // math.gcd(fi.lc, fj.lc)
                new.append(_combine(fi, lcm_c // fi.lc, L - fi.lm, fj, -(lcm_c // fj.lc), L - fj.lm, None))
        if over_z and fi.lc % fj.lc and fj.lc % fi.lc:
            d, u, v = _xgcd(fi.lc, fj.lc)
            new.append(_combine(fi, u, L - fi.lm, fj, v, L - fj.lm, None))
        for p in new:
            budget.charge()
            if not p:
                continue
            r = _reduce(p, by_lc, mons, modulus, budget, full=True)
            if r:
                add(r, sug)
    return G


def _minimal_reduced(G: list[_Elem], mons: _Monomials, modulus, budget: _Budget) -> list[_Elem]:
    over_z = modulus is None
    keep = []
    for e in G:
        redundant = False
        for h in G:
            if h is e:
                continue
            if mons.divides(h.lm, e.lm) and (not over_z or e.lc % h.lc == 0):
                if h.lm == e.lm and (h.lc == e.lc or not over_z) and h.age > e.age:
                    continue
                redundant = True
                break
        if not redundant:
            keep.append(e)
    keep.sort(key=lambda x: (x.lc, x.age))
    out = []
    for e in keep:
        others = [h for h in keep if h is not e]
        poly = _reduce({m: c for m, c in e.tail}, others, mons, modulus, budget, full=True)
        poly[e.lm] = e.lc
        out.append(_make_elem(poly, mons, modulus, 0))
    out.sort(key=lambda x: (mons.key(x.lm), x.lc))
    for i, e in enumerate(out):
        e.age = i
    return out


# ---------------------------------------------------------------------------
# polynomialized Laurent rings

class PolynomializedRing:
    """Polynomial model of a Laurent ring, with optional leading tag variables.

    Variable blocks, most significant first: ``[tags] > [x_inv ...] > [base]``,
    graded reverse lexicographic inside each block.  ``order="grevlex"``
    puts all non-tag variables in a single block.
    """

    def __init__(self, alphabet: VariableAlphabet, tags: Sequence[str] = (), order: str = "block"):
        self.alphabet = alphabet
        self.tags = tuple(tags)
        self.inverse_names = tuple(f"{n}_inv" for n in alphabet.names if n in alphabet.invertible)
        self.names = self.tags + self.inverse_names + alphabet.names
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"name clash in polynomialized ring {self.names}")
        nt, ni, nb = len(self.tags), len(self.inverse_names), len(alphabet.names)
        tag_block = list(range(nt))
        inv_block = list(range(nt, nt + ni))
        base_block = list(range(nt + ni, nt + ni + nb))
        if order == "block":
            blocks = [tag_block, inv_block, base_block]
        elif order == "grevlex":
            blocks = [tag_block, inv_block + base_block]
        else:
            raise ValueError(f"unknown order {order!r}")
        self.order = order
        self.blocks = [b for b in blocks if b]
        self.mons = _Monomials(len(self.names), self.blocks)
        self._base_pos = {n: nt + ni + k for k, n in enumerate(alphabet.names)}
        self._inv_pos = {}
        k = nt
        for n in alphabet.names:
            if n in alphabet.invertible:
                self._inv_pos[n] = k
                k += 1

    def describe_order(self) -> str:
        parts = []
        for b in self.blocks:
            parts.append("grevlex(" + ",".join(self.names[i] for i in b) + ")")
        return " > ".join(parts)

    def same_as(self, other: "PolynomializedRing") -> bool:
        return self.names == other.names and self.blocks == other.blocks

    def unit_relations(self) -> list[dict]:
        rels = []
        for n, k in self._inv_pos.items():
            e = [0] * len(self.names)
            e[k] = 1
            e[self._base_pos[n]] = 1
            rels.append({self.mons.pack(e): 1, 0: -1})
        return rels

    def to_poly(self, f: LaurentPolynomial, tag_exps: dict | None = None) -> dict:
        if f.alphabet != self.alphabet:
            raise ValueError(f"polynomial over {f.alphabet}, ring over {self.alphabet}")
        names = self.alphabet.names
        out = {}
        for exp, c in f.items():
            e = [0] * len(self.names)
            for n, x in zip(names, exp):
                if x >= 0:
                    e[self._base_pos[n]] = x
                else:
                    e[self._inv_pos[n]] = -x
            if tag_exps:
                for t, x in tag_exps.items():
                    e[self.tags.index(t)] = x
            m = self.mons.pack(e)
            out[m] = out.get(m, 0) + c
        return {m: c for m, c in out.items() if c}

    def monomial_to_laurent_exp(self, m: int) -> tuple[int, ...]:
        e = self.mons.unpack(m)
        if any(e[i] for i in range(len(self.tags))):
            raise ValueError("monomial involves a tag variable")
        out = []
        for n in self.alphabet.names:
            x = e[self._base_pos[n]]
            if n in self._inv_pos:
                x -= e[self._inv_pos[n]]
            out.append(x)
        return tuple(out)

    def from_poly(self, poly: dict) -> LaurentPolynomial:
        out = {}
        for m, c in poly.items():
            e = self.monomial_to_laurent_exp(m)
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(self.alphabet, out)

    def involves_tag(self, poly: dict) -> bool:
        if not self.tags:
            return False
        mask = sum(((1 << _VALUE_BITS) - 1) << self.mons.shifts[i] for i in range(len(self.tags)))
        return any(m & mask for m in poly)

    def format_monomial(self, m: int) -> str:
        e = self.mons.unpack(m)
        parts = [n if x == 1 else f"{n}^{x}" for n, x in zip(self.names, e) if x]
        return "*".join(parts) or "1"


@dataclass
class StrongGroebnerBasis:
    ring: PolynomializedRing
    elements: list
    modulus: int | None = None
    reduced: bool = True
    steps: int = 0

    @property
    def order(self) -> str:
        return self.ring.describe_order()

    def generators(self) -> list[dict]:
        return [e.poly for e in self.elements]

    def laurent_generators(self) -> list[LaurentPolynomial]:
        """Generators that do not involve tag variables, as Laurent polynomials."""
        return [self.ring.from_poly(e.poly) for e in self.elements if not self.ring.involves_tag(e.poly)]

    def leading_coefficients(self) -> list[int]:
        return [e.lc for e in self.elements]

    def leading_monomials(self) -> list[int]:
        return [e.lm for e in self.elements]

    def is_unit_ideal(self) -> bool:
        return any(e.lm == 0 and e.lc == 1 for e in self.elements)

    def _reducers(self):
        return sorted(self.elements, key=lambda x: (x.lc, x.age))

    def reduce_poly(self, poly: dict) -> dict:
        budget = _Budget(10**12)
        return _reduce(poly, self._reducers(), self.ring.mons, self.modulus, budget, full=True)

    def canonical(self) -> tuple:
        """Hashable canonical form (for determinism checks)."""
        return tuple(tuple(sorted(e.poly.items())) for e in self.elements)

    def __len__(self):
        return len(self.elements)


def _as_poly_list(gens, ring: PolynomializedRing) -> list[dict]:
    out = []
    for g in gens:
        if isinstance(g, LaurentPolynomial):
            out.append(ring.to_poly(g))
        else:
            out.append(dict(g))
    return out


def strong_gb(gens: Sequence, ring: PolynomializedRing, *, modulus: int | None = None,
              budget: int | None = None, strategy: str = "sugar") -> StrongGroebnerBasis:
    """Reduced strong Groebner basis of ``gens`` plus the ring's unit relations.

    ``gens`` holds LaurentPolynomials over ``ring.alphabet`` or raw packed
    dicts over the polynomialized ring.  With ``modulus=p`` the basis is the
    reduced (monic) Groebner basis over GF(p).  ``strategy`` picks the pair
    selection: ``"sugar"`` (sugar degree, then lcm degree, then age) or
    ``"normal"`` (lcm degree, then age).  The reduced basis does not depend
    on it; only the running time does.
    """
    polys = ring.unit_relations() + _as_poly_list(gens, ring)
    if modulus is not None:
        polys = [{m: c % modulus for m, c in p.items() if c % modulus} for p in polys]
    if not any(polys):
        raise ValueError("empty generator set")
    b = _Budget(step_budget_from_env() if budget is None else budget)
    G = _buchberger(polys, ring.mons, modulus, b, strategy)
    G = _minimal_reduced(G, ring.mons, modulus, b)
    log.debug("strong_gb: %d elements, %d steps, order %s", len(G), b.used, ring.describe_order())
    return StrongGroebnerBasis(ring, G, modulus, True, b.used)


def normal_form(f, gb: StrongGroebnerBasis) -> LaurentPolynomial:
    """Canonical remainder of ``f``; zero exactly when ``f`` lies in the ideal."""
    poly = gb.ring.to_poly(f) if isinstance(f, LaurentPolynomial) else dict(f)
    if gb.modulus is not None:
        poly = {m: c % gb.modulus for m, c in poly.items() if c % gb.modulus}
    r = gb.reduce_poly(poly)
    if gb.ring.involves_tag(r):
        raise ValueError("normal form involves a tag variable")
    return gb.ring.from_poly(r)


def ideal_contains(gb: StrongGroebnerBasis, f) -> bool:
    poly = gb.ring.to_poly(f) if isinstance(f, LaurentPolynomial) else dict(f)
    return not gb.reduce_poly(poly)


def eliminate(gb: StrongGroebnerBasis, drop_vars: Iterable[str]) -> list[LaurentPolynomial]:
    """Generators of the elimination ideal (members free of ``drop_vars``).

    The order must put ``drop_vars`` in leading blocks of their own.
    """
    drop = list(drop_vars)
    ring = gb.ring
    idx = set()
    for v in drop:
        if v not in ring.names:
            raise OrderMismatchError(f"{v} not a variable of {ring.names}")
        idx.add(ring.names.index(v))
    lead = set()
    for b in ring.blocks:
        if not (set(b) & idx):
            break
        if not set(b) <= idx:
            raise OrderMismatchError(f"block {b} mixes eliminated and kept variables")
        lead |= set(b)
    if lead != idx:
        raise OrderMismatchError(f"{drop} do not form the leading blocks of {ring.describe_order()}")
    mask = sum(((1 << _VALUE_BITS) - 1) << ring.mons.shifts[i] for i in idx)
    out = []
    for e in gb.elements:
        if any(m & mask for m in e.poly):
            continue
        out.append(e.poly)
    if ring.tags and set(drop) == set(ring.tags):
        return [ring.from_poly(p) for p in out]
    return out


def ideal_intersect(I: Sequence[LaurentPolynomial], J: Sequence[LaurentPolynomial],
                    alphabet: VariableAlphabet, *, order: str = "block",
                    budget: int | None = None, strategy: str = "sugar") -> list[LaurentPolynomial]:
    """Generators of the intersection of two Laurent ideals (tag-variable elimination)."""
    ring = PolynomializedRing(alphabet, tags=("w",), order=order)
    gens = []
    for f in I:
        gens.append(ring.to_poly(f, {"w": 1}))
    for g in J:
        p = ring.to_poly(g)
        pw = ring.to_poly(g, {"w": 1})
        q = dict(p)
        for m, c in pw.items():
            q[m] = q.get(m, 0) - c
        gens.append({m: c for m, c in q.items() if c})
    gb = strong_gb(gens, ring, budget=budget, strategy=strategy)
    return eliminate(gb, ["w"])


def ideals_equal(I: Sequence[LaurentPolynomial], J: Sequence[LaurentPolynomial],
                 alphabet: VariableAlphabet, *, order: str = "block",
                 strategy: str = "sugar") -> bool:
    """Mutual membership test."""
    ring = PolynomializedRing(alphabet, order=order)
    gi = strong_gb(I, ring, strategy=strategy)
    gj = strong_gb(J, ring, strategy=strategy)
    return all(ideal_contains(gi, g) for g in J) and all(ideal_contains(gj, f) for f in I)


# ---------------------------------------------------------------------------
# quotient structure
#
# For a strong basis the standard monomials S (those whose leading-coefficient
# ideal is not Z) span the quotient Q, and each monomial m with leading
# coefficient ideal c*Z (c > 1) contributes one relation c*m = lower terms.
# So Q = Z^S / rows.  A non-monic basis does not by itself mean torsion:
# the lower terms may absorb the relation.

@dataclass
class QuotientGroup:
    """``Z^S / relations`` with a monomial basis when one is found by unit pivots."""

    monomials: list            # standard monomials, term order ascending
    relations: list            # [{monomial: coeff}]
    basis: list | None         # monomials forming a Z-basis, or None
    coords: dict | None        # monomial -> {basis monomial: coeff}

    @property
    def rank(self) -> int:
        return len(self.monomials) - len(self.relations)

    def coordinates(self, vec: dict) -> dict:
        if self.coords is None:
            raise CandidateBasisError("no monomial Z-basis is available")
        out: dict = {}
        for m, c in vec.items():
            for b, x in self.coords[m].items():
                v = out.get(b, 0) + c * x
                if v:
                    out[b] = v
                else:
                    out.pop(b, None)
        return out


def _row_axpy(dst: dict, a: int, src: dict):
    for m, c in src.items():
        v = dst.get(m, 0) + a * c
        if v:
            dst[m] = v
        else:
            dst.pop(m, None)


def _euclid_pivot(rows: list, key):
    """Unimodular row operations producing a +-1 entry, if some column allows it."""
    cols = sorted({m for r in rows for m in r}, key=key, reverse=True)
    for x in cols:
        idx = [i for i, r in enumerate(rows) if x in r]
        g = 0
        for i in idx:
            g = math.gcd(g, rows[i][x])
        if g != 1:
            continue
        while True:
            live = [i for i in idx if rows[i].get(x)]
            live.sort(key=lambda i: abs(rows[i][x]))
            top = live[0]
            if abs(rows[top][x]) == 1:
                return top, x
            for i in live[1:]:
                q = rows[i][x] // rows[top][x]
                _row_axpy(rows[i], -q, rows[top])
    return None


def _eliminate(rows: list, ri: int, x) -> tuple[list, dict]:
    rows = [dict(r) for r in rows]
    r = rows.pop(ri)
    s = r.pop(x)
    expr = {m: -s * c for m, c in r.items()}     # x = expr
    for other in rows:
        a = other.pop(x, 0)
        if a:
            _row_axpy(other, a, expr)
    return [r2 for r2 in rows if r2], expr


def _unit_pivot_basis(monomials: list, relations: list, key,
                      max_tries: int = 20000) -> tuple[list | None, dict | None]:
    """Eliminate one monomial per relation through a coefficient of +-1.

    Pivot choices are searched depth first (largest monomials first); when
    no row has a unit entry, unimodular row operations try to make one.
    Gives up after ``max_tries`` pivots.
    """
    tries = 0

    def search(rows, solved):
        nonlocal tries
        if not rows:
            return solved
        cands = []
        for ri, r in enumerate(rows):
            for m, c in r.items():
                if abs(c) == 1:
                    cands.append((key(m), ri, m))
        cands.sort(key=lambda t: -t[0])
        options = [(rows, ri, m) for _, ri, m in cands]
        if not options:
            work = [dict(r) for r in rows]
            pick = _euclid_pivot(work, key)
            if pick is not None:
                options = [(work, pick[0], pick[1])]
        for base, ri, m in options:
            tries += 1
            if tries > max_tries:
                return None
            rest, expr = _eliminate(base, ri, m)
            out = search(rest, solved + [(m, expr)])
            if out is not None:
                return out
        return None

    solved = search([dict(r) for r in relations], [])
    if solved is None:
        return None, None
    gone = {x for x, _ in solved}
    basis = [m for m in monomials if m not in gone]
    coords = {m: {m: 1} for m in basis}
    for x, expr in reversed(solved):
        acc: dict = {}
        for m, c in expr.items():
            _row_axpy(acc, c, coords[m])
        coords[x] = acc
    return basis, coords


def _standard_monomials(gb: StrongGroebnerBasis, limit: int) -> tuple[list[int], dict[int, int]]:
    """Monomials not killed by a unit-lc leading term.

    Returns (monomials with no divisor at all, {monomial: c}) where ``c > 1``
    is the gcd of leading coefficients over divisors of that monomial.
    """
    mons = gb.ring.mons
    n = len(gb.ring.names)
    lts = sorted(((e.lm, e.lc) for e in gb.elements), key=lambda t: t[1])
    unit_var = [mons.pack([1 if k == i else 0 for k in range(n)]) for i in range(n)]
    seen = {0}
    frontier = [0]
    free, tors = [], {}
    while frontier:
        nxt = []
        for m in frontier:
            c = 0
            for lm, lc in lts:
                if mons.divides(lm, m):
                    c = math.gcd(c, lc)
                    if c == 1:
                        break
            if c == 1:
                continue
            if c == 0:
                free.append(m)
            else:
                tors[m] = c
            if len(free) + len(tors) > limit:
                raise InfiniteRankError(f"more than {limit} standard monomials")
            for u in unit_var:
                mu = m + u
                if mu not in seen:
                    seen.add(mu)
                    nxt.append(mu)
        frontier = nxt
    free.sort(key=mons.key)
    return free, tors


def quotient_group(gb: StrongGroebnerBasis, limit: int = 100000) -> QuotientGroup:
    if gb.modulus is not None:
        raise ValueError("quotient_group needs a basis over Z")
    mons = gb.ring.mons
    free, tors = _standard_monomials(gb, limit)
    allm = sorted(free + list(tors), key=mons.key)
    relations = []
    for m, c in sorted(tors.items(), key=lambda t: mons.key(t[0])):
        g = next(e for e in gb.elements if e.lc == c and mons.divides(e.lm, m))
        shift = m - g.lm
        tail = gb.reduce_poly({tm + shift: tc for tm, tc in g.tail})
        row = dict(tail)
        row[m] = row.get(m, 0) + c
        relations.append(row)
    basis, coords = _unit_pivot_basis(allm, relations, mons.key)
    return QuotientGroup(allm, relations, basis, coords)


@dataclass
class QuotientReport:
    rank_Q: int
    rank_mod_p: dict
    free: bool
    basis: list
    primes: list
    lc_pieces: dict = field(default_factory=dict)   # monomial -> non-unit leading coefficient
    lc_bound: int = 1
    candidate_ok: bool | None = None
    candidate_det: int | None = None

    def to_json(self) -> dict:
        return {
            "rank_Q": self.rank_Q,
            "rank_mod_p": {str(p): r for p, r in sorted(self.rank_mod_p.items())},
            "free": self.free,
            "basis": list(self.basis),
            "primes": list(self.primes),
        }


def _primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if all(p % q for q in range(2, int(p**0.5) + 1))]


def _prime_factors(n: int) -> set[int]:
    out = set()
    n = abs(n)
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def _det_bareiss(rows: list[list[int]]) -> int:
    M = [list(r) for r in rows]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k]:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def quotient_report(gens: Sequence[LaurentPolynomial], ring: PolynomializedRing,
                    primes: Sequence[int] = DEFAULT_PRIMES,
                    candidate_basis: Sequence | None = None, *,
                    gb: StrongGroebnerBasis | None = None,
                    limit: int = 100000, budget: int | None = None,
                    strategy: str = "sugar") -> QuotientReport:
    """Rank, modular ranks, freeness verdict and Z-basis of ``Z[...] / (gens)``.

    The quotient is free of rank r exactly when its rank over Q and its
    dimension mod p agree for every prime dividing a leading coefficient;
    ``primes`` adds further primes to check.  ``candidate_basis`` is a list
    of Laurent exponent tuples (or monomial LaurentPolynomials); it is
    accepted when its coordinates form a square unimodular matrix.
    """
    if gb is None:
        gb = strong_gb(gens, ring, budget=budget, strategy=strategy)
    qg = quotient_group(gb, limit)
    rank_q = qg.rank
    lc_bound = max(gb.leading_coefficients(), default=1)
    prime_set = set(primes)
    for c in gb.leading_coefficients():
        prime_set |= _prime_factors(c)
    prime_set = sorted(prime_set)
    rank_mod_p = {}
    for p in prime_set:
        gbp = strong_gb(gens if gens is not None else gb.generators(), ring,
                        modulus=p, budget=budget, strategy=strategy)
        fm, _ = _standard_monomials(gbp, limit)
        rank_mod_p[p] = len(fm)
    free = all(r == rank_q for r in rank_mod_p.values())
    pieces = {}
    for row in qg.relations:
        m = max(row, key=ring.mons.key)
        pieces[_format_laurent_monomial(ring, m)] = row[m]
    basis = [] if (qg.basis is None or not free) else [_format_laurent_monomial(ring, m) for m in qg.basis]
    report = QuotientReport(rank_q, rank_mod_p, free, basis, prime_set, pieces, lc_bound)
    if candidate_basis is not None:
        ok, det = verify_candidate_basis(gb, qg, candidate_basis, raise_on_fail=False)
        report.candidate_ok = ok
        report.candidate_det = det
    return report


def _format_laurent_monomial(ring: PolynomializedRing, m: int) -> str:
    e = ring.monomial_to_laurent_exp(m)
    return str(LaurentPolynomial(ring.alphabet, {e: 1}))


def verify_candidate_basis(gb: StrongGroebnerBasis, qg: QuotientGroup, candidate: Sequence,
                           raise_on_fail: bool = True) -> tuple[bool, int | None]:
    """Check that ``candidate`` monomials form a Z-basis of the (free) quotient."""
    ring = gb.ring
    elems = []
    for c in candidate:
        if isinstance(c, LaurentPolynomial):
            if not c.is_monomial():
                raise CandidateBasisError(f"{c} is not a monomial")
            elems.append(c.rename(ring.alphabet))
        else:
            elems.append(LaurentPolynomial(ring.alphabet, {tuple(c): 1}))

    def fail(msg):
        if raise_on_fail:
            raise CandidateBasisError(msg)
        return False, None

    if qg.basis is None:
        return fail("quotient has no monomial Z-basis to compare against")
    if len(elems) != len(qg.basis):
        return fail(f"candidate has {len(elems)} elements, rank is {len(qg.basis)}")
    col = {m: i for i, m in enumerate(qg.basis)}
    rows = []
    for f in elems:
        nf = gb.reduce_poly(ring.to_poly(f))
        row = [0] * len(col)
        for m, c in qg.coordinates(nf).items():
            row[col[m]] = c
        rows.append(row)
    det = _det_bareiss(rows)
    ok = abs(det) == 1
    if not ok and raise_on_fail:
        raise CandidateBasisError(f"change of basis has determinant {det}")
    return ok, det
