"""Independent reference computations used by the property tests.

``lattice_member`` decides membership in a Z-span by row echelon form with
Euclid steps (no Groebner machinery).  For a homogeneous ideal the degree-d
part is exactly the Z-span of ``m * g`` with ``deg(m * g) = d``, so
``homogeneous_ideal_member`` is a complete membership oracle.
"""

from __future__ import annotations

import random
from itertools import combinations_with_replacement

from k0genus2.groebner import PolynomializedRing, ideal_contains, strong_gb
from k0genus2.laurent import LaurentPolynomial, VariableAlphabet


def _echelon(rows: list[dict]) -> list[tuple[object, dict]]:
    """Rows in echelon form over Z, keyed by their pivot column."""
    rows = [dict(r) for r in rows if r]
    out = []
    cols = sorted({c for r in rows for c in r})
    for col in cols:
        live = [r for r in rows if r.get(col)]
        rows = [r for r in rows if not r.get(col)]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[col] // piv[col]
                for c, v in piv.items():
                    w = r.get(c, 0) - q * v
                    if w:
                        r[c] = w
                    else:
                        r.pop(c, None)
                if r.get(col):
                    nxt.append(r)
                elif r:
                    rows.append(r)
            live = nxt
        if live:
            out.append((col, live[0]))
    return out


def lattice_member(rows: list[dict], vec: dict) -> bool:
    vec = {c: v for c, v in vec.items() if v}
    for col, piv in _echelon(rows):
        if not vec:
            break
        v = vec.get(col, 0)
        if v % piv[col]:
            return False
        q = v // piv[col]
        if q:
            for c, w in piv.items():
                x = vec.get(c, 0) - q * w
                if x:
                    vec[c] = x
                else:
                    vec.pop(c, None)
    return not vec


def monomials_of_degree(nvars: int, d: int) -> list[tuple]:
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def homogeneous_ideal_member(gens: list[dict], f: dict, nvars: int) -> bool:
    """``f`` and ``gens`` are ``{exponent tuple: coefficient}`` with homogeneous support."""
    if not f:
        return True
    d = sum(next(iter(f)))
    rows = []
    for g in gens:
        if not g:
            continue
        dg = sum(next(iter(g)))
        if dg > d:
            continue
        for m in monomials_of_degree(nvars, d - dg):
            rows.append({tuple(a + b for a, b in zip(e, m)): c for e, c in g.items()})
    return lattice_member(rows, f)


def random_homogeneous(rnd, nvars, deg, terms, cmax=9):
    mons = monomials_of_degree(nvars, deg)
    out = {}
    for m in rnd.sample(mons, min(terms, len(mons))):
        c = rnd.randint(-cmax, cmax)
        if c:
            out[m] = c
    return out


def random_ideal_case(rnd):
    nvars = rnd.randint(1, 3)
    gens = []
    for _ in range(rnd.randint(1, 3)):
        g = random_homogeneous(rnd, nvars, rnd.randint(0 if rnd.random() < 0.1 else 1, 3), rnd.randint(1, 3))
        if g:
            gens.append(g)
    if not gens:
        gens = [{(1,) + (0,) * (nvars - 1): 2}]
    return nvars, gens


def membership_agreement(seed: int, n_ideals: int, tests_per_ideal: int = 4) -> list[str]:
    """Compare GB membership with the lattice oracle; returns disagreements."""
    rnd = random.Random(seed)
    bad = []
    for case in range(n_ideals):
        nvars, gens = random_ideal_case(rnd)
        alph = VariableAlphabet(["x", "y", "z"][:nvars])
        lps = [LaurentPolynomial(alph, g) for g in gens]
        gb = strong_gb(lps, PolynomializedRing(alph, order="grevlex"))
        for _ in range(tests_per_ideal):
            d = rnd.randint(max(sum(next(iter(g))) for g in gens), 4)
            f = {}
            for g in gens:
                dg = sum(next(iter(g)))
                if dg > d:
                    continue
                h = random_homogeneous(rnd, nvars, d - dg, 2, cmax=5)
                for m, c in h.items():
                    for e, v in g.items():
                        k = tuple(a + b for a, b in zip(e, m))
                        f[k] = f.get(k, 0) + c * v
            if rnd.random() < 0.5:
                extra = random_homogeneous(rnd, nvars, d, 1, cmax=3)
                for k, v in extra.items():
                    f[k] = f.get(k, 0) + v
            f = {k: v for k, v in f.items() if v}
            ours = ideal_contains(gb, LaurentPolynomial(alph, f))
            theirs = homogeneous_ideal_member(gens, f, nvars)
            if ours != theirs:
                bad.append(f"case {case}: gens {gens}, f {f}: gb {ours}, oracle {theirs}")
    return bad


def permutation_determinism(seed: int, n_ideals: int) -> list[str]:
    rnd = random.Random(seed)
    bad = []
    for case in range(n_ideals):
        nvars = rnd.randint(1, 3)
        alph = VariableAlphabet(["x", "y", "z"][:nvars], ["x"] if rnd.random() < 0.3 else [])
        gens = []
        for _ in range(rnd.randint(2, 4)):
            g = {}
            for _ in range(rnd.randint(1, 3)):
                e = tuple(rnd.randint(-1 if alph.is_invertible(v) else 0, 2) for v in alph.names)
                g[e] = rnd.randint(-9, 9)
            g = LaurentPolynomial(alph, {e: c for e, c in g.items() if c})
            if g:
                gens.append(g)
        if not gens:
            continue
        ring = PolynomializedRing(alph, order="grevlex")
        ref = strong_gb(gens, ring).canonical()
        for _ in range(2):
            perm = gens[:]
            rnd.shuffle(perm)
            if strong_gb(perm, ring).canonical() != ref:
                bad.append(f"case {case}: {[str(g) for g in gens]}")
            if strong_gb(perm, ring, strategy="normal").canonical() != ref:
                bad.append(f"case {case} (normal selection): {[str(g) for g in gens]}")
    return bad
