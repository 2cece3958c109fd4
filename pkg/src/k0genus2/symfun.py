"""Symmetric Laurent polynomials in two characters.

The torus characters are ``a, b`` (both invertible).  The Weyl group swaps
them, and the invariant subring is ``Z[e1, e2^{+-1}]`` with ``e1 = a + b``
and ``e2 = a*b``.  The complete homogeneous polynomials
``h_n = a^n + a^(n-1)*b + ... + b^n`` satisfy ``h_n = e1*h_(n-1) - e2*h_(n-2)``.

Other variables (such as ``t``) may ride along: they are treated as
coefficients by :func:`from_characters` and :func:`to_characters`.
"""

from __future__ import annotations

import threading

from .laurent import (
    LaurentPolynomial,
    VariableAlphabet,
    is_ab_symmetric,
    lp_substitute_many,
)

__all__ = [
    "CHARACTERS",
    "SYMMETRIC",
    "NonSymmetricError",
    "complete_homogeneous",
    "to_characters",
    "from_characters",
    "symmetric_alphabet_for",
    "character_alphabet_for",
]

CHARACTERS = VariableAlphabet(["a", "b"], ["a", "b"])
SYMMETRIC = VariableAlphabet(["e1", "e2"], ["e2"])


class NonSymmetricError(ValueError):
    pass


_h_lock = threading.Lock()
_h_table: list[LaurentPolynomial] = []


def complete_homogeneous(n: int) -> LaurentPolynomial:
    """``h_n`` in ``e1, e2``; ``h_-1 = 0`` and ``h_0 = 1``."""
    if n < -1:
        raise ValueError(f"h_n needs n >= -1, got {n}")
    if n == -1:
        return LaurentPolynomial.zero(SYMMETRIC)
    with _h_lock:
        if not _h_table:
            _h_table.append(LaurentPolynomial.constant(SYMMETRIC, 1))
            _h_table.append(LaurentPolynomial.variable(SYMMETRIC, "e1"))
        e1 = LaurentPolynomial.variable(SYMMETRIC, "e1")
        e2 = LaurentPolynomial.variable(SYMMETRIC, "e2")
        while len(_h_table) <= n:
            _h_table.append(e1 * _h_table[-1] - e2 * _h_table[-2])
        return _h_table[n]


def character_alphabet_for(alphabet: VariableAlphabet) -> VariableAlphabet:
    """``{e1, e2, rest...}`` -> ``{a, b, rest...}``."""
    rest = [n for n in alphabet.names if n not in ("e1", "e2")]
    inv = [n for n in alphabet.invertible if n in rest]
    return VariableAlphabet(["a", "b"] + rest, ["a", "b"] + inv)


def symmetric_alphabet_for(alphabet: VariableAlphabet) -> VariableAlphabet:
    """``{a, b, rest...}`` -> ``{e1, e2, rest...}``."""
    rest = [n for n in alphabet.names if n not in ("a", "b")]
    inv = [n for n in alphabet.invertible if n in rest]
    return VariableAlphabet(["e1", "e2"] + rest, ["e2"] + inv)


def to_characters(s: LaurentPolynomial) -> LaurentPolynomial:
    """Expand ``e1 -> a + b``, ``e2 -> a*b``."""
    target = character_alphabet_for(s.alphabet)
    a = LaurentPolynomial.variable(target, "a")
    b = LaurentPolynomial.variable(target, "b")
    lifted = s.rename(VariableAlphabet(list(s.alphabet.names) + ["a", "b"],
                                       list(s.alphabet.invertible) + ["a", "b"]))
    image = lp_substitute_many(lifted, {"e1": a.rename(lifted.alphabet) + b.rename(lifted.alphabet),
                                        "e2": (a * b).rename(lifted.alphabet)})
    return image.rename(target)


def from_characters(f: LaurentPolynomial) -> LaurentPolynomial:
    """Rewrite an ``a <-> b`` symmetric polynomial in ``e1, e2^{+-1}``.

    Multiply by ``(ab)^m`` to clear negative exponents, then repeatedly strip
    the lex-leading ``c * a^p * b^q`` (``p >= q``) as ``c * e1^(p-q) * e2^q``.
    Remaining variables are carried along in the coefficient ``c``.
    """
    if not is_ab_symmetric(f):
        raise NonSymmetricError(f"not symmetric in a, b: {f}")
    alph = f.alphabet
    ia, ib = alph.index("a"), alph.index("b")
    target = symmetric_alphabet_for(alph)
    rest = [k for k, n in enumerate(alph.names) if k not in (ia, ib)]
    rest_pos = [target.index(alph.names[k]) for k in rest]
    i1, i2 = target.index("e1"), target.index("e2")
    if not f:
        return LaurentPolynomial.zero(target)

    m = max(0, -min(min(e[ia], e[ib]) for e in f.terms))
    # work on {(p, q): {rest exponent: coeff}}
    work: dict[tuple[int, int], dict[tuple, int]] = {}
    for e, c in f.items():
        pq = (e[ia] + m, e[ib] + m)
        r = tuple(e[k] for k in rest)
        slot = work.setdefault(pq, {})
        slot[r] = slot.get(r, 0) + c

    binoms: dict[int, list[int]] = {}

    def binom_row(n):
        row = binoms.get(n)
        if row is None:
            row = [1]
            for k in range(n):
                row.append(row[-1] * (n - k) // (k + 1))
            binoms[n] = row
        return row

    out: dict[tuple, int] = {}
    while work:
        p, q = max(work)
        coeffs = work.pop((p, q))
        coeffs = {r: c for r, c in coeffs.items() if c}
        if not coeffs:
            continue
        if p < q:
            raise NonSymmetricError(f"not symmetric in a, b: {f}")
        d = p - q
        for r, c in coeffs.items():
            e = [0] * len(target)
            e[i1] = d
            e[i2] = q - m
            for k, x in zip(rest_pos, r):
                e[k] = x
            out[tuple(e)] = out.get(tuple(e), 0) + c
        # subtract c * (a+b)^d * (ab)^q, except the leading term already removed
        row = binom_row(d)
        for j in range(1, d + 1):
            key = (p - j, q + j)
            slot = work.setdefault(key, {})
            for r, c in coeffs.items():
                v = slot.get(r, 0) - row[j] * c
                if v:
                    slot[r] = v
                else:
                    slot.pop(r, None)
            if not slot:
                del work[key]
    return LaurentPolynomial(target, out)
