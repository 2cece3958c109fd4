"""Exact multivariate Laurent polynomials over the integers.

A :class:`LaurentPolynomial` is an immutable map from integer exponent
vectors to nonzero Python integers, tied to a :class:`VariableAlphabet`
that says which variables may carry negative exponents.

The textual form used everywhere in the package is::

    term (+|- term)*      term = [int][*var^int]*

for example ``1 - a^2*b^2*t^-2``.  :func:`parse_polynomial` and
``str(poly)`` round-trip exactly.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

__all__ = [
    "AlphabetMismatchError",
    "InexactDivisionError",
    "NonUnitSubstitutionError",
    "VariableAlphabet",
    "LaurentPolynomial",
    "RationalClass",
    "parse_polynomial",
    "lp_arith",
    "lp_substitute",
    "lp_exact_divide",
    "lp_swap_ab",
    "rc_sum",
]


class AlphabetMismatchError(ValueError):
    pass


class InexactDivisionError(ArithmeticError):
    pass


class NonUnitSubstitutionError(ValueError):
    pass


@dataclass(frozen=True)
class VariableAlphabet:
    names: tuple[str, ...]
    invertible: frozenset[str] = frozenset()

    def __init__(self, names: Iterable[str], invertible: Iterable[str] = ()):
        names = tuple(names)
        invertible = frozenset(invertible)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if not invertible <= set(names):
            raise ValueError(f"invertible variables {sorted(invertible - set(names))} not in alphabet")
        for name in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise ValueError(f"bad variable name {name!r}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "invertible", invertible)

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"variable {name!r} not in alphabet {self.names}") from None

    def is_invertible(self, name: str) -> bool:
        return name in self.invertible

    def extend(self, names: Iterable[str], invertible: Iterable[str] = ()) -> "VariableAlphabet":
        return VariableAlphabet(self.names + tuple(names), self.invertible | frozenset(invertible))

    def __repr__(self):
        inv = ",".join(n for n in self.names if n in self.invertible)
        return f"VariableAlphabet({','.join(self.names)}; invertible={{{inv}}})"


def _add_exp(u, v):
    return tuple(x + y for x, y in zip(u, v))


class LaurentPolynomial:
    """Integer Laurent polynomial; hashable and immutable."""

    __slots__ = ("_alphabet", "_terms", "_hash")

    def __init__(self, alphabet: VariableAlphabet, terms: Mapping[tuple, int] | None = None,
                 _trusted: bool = False):
        self._alphabet = alphabet
        if _trusted:
            self._terms = terms
        else:
            n = len(alphabet)
            neg_ok = [name in alphabet.invertible for name in alphabet.names]
            clean = {}
            for exp, coeff in (terms or {}).items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != n:
                    raise ValueError(f"exponent {exp} has wrong length for {alphabet}")
                for e, ok in zip(exp, neg_ok):
                    if e < 0 and not ok:
                        raise ValueError(f"negative exponent on non-invertible variable in {exp}")
                coeff = int(coeff)
                if coeff:
                    clean[exp] = clean.get(exp, 0) + coeff
                    if not clean[exp]:
                        del clean[exp]
            self._terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, alphabet):
        return cls(alphabet, {}, _trusted=True)

    @classmethod
    def constant(cls, alphabet, c: int):
        c = int(c)
        return cls(alphabet, {(0,) * len(alphabet): c} if c else {}, _trusted=True)

    @classmethod
    def variable(cls, alphabet, name: str, power: int = 1):
        exp = [0] * len(alphabet)
        exp[alphabet.index(name)] = power
        return cls(alphabet, {tuple(exp): 1})

    @classmethod
    def monomial(cls, alphabet, powers: Mapping[str, int], coeff: int = 1):
        exp = [0] * len(alphabet)
        for name, p in powers.items():
            exp[alphabet.index(name)] += p
        return cls(alphabet, {tuple(exp): coeff})

    @property
    def alphabet(self) -> VariableAlphabet:
        return self._alphabet

    @property
    def terms(self) -> Mapping[tuple, int]:
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        """True for ``±m`` with ``m`` a monomial in invertible variables only."""
        if len(self._terms) != 1:
            return False
        (exp, c), = self._terms.items()
        if c not in (1, -1):
            return False
        return all(e == 0 or name in self._alphabet.invertible
                   for e, name in zip(exp, self._alphabet.names))

    def constant_term(self) -> int:
        return self._terms.get((0,) * len(self._alphabet), 0)

    def degree_in(self, name: str) -> tuple[int, int]:
        """(min, max) exponent of ``name``; (0, 0) for the zero polynomial."""
        i = self._alphabet.index(name)
        if not self._terms:
            return (0, 0)
        exps = [e[i] for e in self._terms]
        return (min(exps), max(exps))

    def variables(self) -> set[str]:
        used = set()
        for exp in self._terms:
            used.update(n for n, e in zip(self._alphabet.names, exp) if e)
        return used

    # arithmetic
    def _check(self, other):
        if isinstance(other, int):
            return LaurentPolynomial.constant(self._alphabet, other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        if other._alphabet != self._alphabet:
            raise AlphabetMismatchError(f"{self._alphabet} vs {other._alphabet}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        res = dict(self._terms)
        for exp, c in other._terms.items():
            v = res.get(exp, 0) + c
            if v:
                res[exp] = v
            else:
                res.pop(exp, None)
        return LaurentPolynomial(self._alphabet, res, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(self._alphabet, {e: -c for e, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        res: dict = {}
        get = res.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = get(e, 0) + c1 * c2
                if v:
                    res[e] = v
                else:
                    del res[e]
        return LaurentPolynomial(self._alphabet, res, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise ValueError("negative power of a non-unit")
            (exp, c), = self._terms.items()
            return LaurentPolynomial(self._alphabet, {tuple(-x * -n for x in exp): c ** (-n)}, _trusted=True)
        result = LaurentPolynomial.constant(self._alphabet, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: int) -> "LaurentPolynomial":
        if not c:
            return LaurentPolynomial.zero(self._alphabet)
        return LaurentPolynomial(self._alphabet, {e: c * v for e, v in self._terms.items()}, _trusted=True)

    def shift(self, exp: tuple) -> "LaurentPolynomial":
        """Multiply by the monomial with exponent vector ``exp``."""
        return LaurentPolynomial(self._alphabet, {_add_exp(e, exp): c for e, c in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(self._alphabet, other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._alphabet == other._alphabet and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._alphabet, frozenset(self._terms.items())))
        return self._hash

    def coefficient_map(self, name: str) -> dict[int, "LaurentPolynomial"]:
        """Split by powers of ``name``: ``{k: coefficient of name^k}`` (same alphabet)."""
        i = self._alphabet.index(name)
        parts: dict[int, dict] = {}
        for exp, c in self._terms.items():
            k = exp[i]
            rest = exp[:i] + (0,) + exp[i + 1:]
            parts.setdefault(k, {})[rest] = c
        return {k: LaurentPolynomial(self._alphabet, d, _trusted=True) for k, d in parts.items()}

    def rename(self, alphabet: VariableAlphabet, mapping: Mapping[str, str] | None = None) -> "LaurentPolynomial":
        """Move to another alphabet; variables are matched by name after ``mapping``.

        A source variable missing from the target is allowed only if it does
        not occur in ``self``.
        """
        mapping = dict(mapping or {})
        present = self.variables()
        target = {}
        for i, n in enumerate(self._alphabet.names):
            name = mapping.get(n, n)
            if name in alphabet.names:
                target[i] = alphabet.index(name)
            elif n in present:
                raise AlphabetMismatchError(f"variable {n!r} occurs but {name!r} is not in {alphabet.names}")
        size = len(alphabet)
        res = {}
        for exp, c in self._terms.items():
            new = [0] * size
            for i, k in target.items():
                if exp[i]:
                    new[k] += exp[i]
            new = tuple(new)
            res[new] = res.get(new, 0) + c
        return LaurentPolynomial(alphabet, res)

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at numeric values (ints, Fractions, modular ints...)."""
        total = 0
        vals = [values[n] for n in self._alphabet.names]
        for exp, c in self._terms.items():
            term = c
            for v, e in zip(vals, exp):
                if e:
                    term = term * v ** e
            total = total + term
        return total

    def sorted_terms(self):
        return sorted(self._terms.items())

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"LaurentPolynomial({str(self)!r})"


# ---------------------------------------------------------------------------
# text format

_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]*(?:\^\s*-?\s*\d+[^+-]*)*)")


def format_polynomial(f: LaurentPolynomial) -> str:
    if not f._terms:
        return "0"
    names = f.alphabet.names
    pieces = []
    for exp, c in sorted(f._terms.items()):
        factors = []
        for name, e in zip(names, exp):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append((" - " if c < 0 else " + ") + body)
    return "".join(pieces)


def _split_terms(text: str) -> list[tuple[int, str]]:
    # split on + / - that are not part of an exponent (i.e. not preceded by '^')
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty polynomial")
    out = []
    sign = 1
    start = 0
    i = 0
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        i = start = 1
    while i < len(s):
        ch = s[i]
        if ch in "+-" and s[i - 1] != "^":
            out.append((sign, s[start:i]))
            sign = -1 if ch == "-" else 1
            start = i + 1
        i += 1
    out.append((sign, s[start:]))
    return out


def parse_polynomial(text: str, alphabet: VariableAlphabet) -> LaurentPolynomial:
    """Parse ``text`` in the shared grammar over ``alphabet``."""
    n = len(alphabet)
    terms: dict = {}
    for sign, body in _split_terms(text):
        if not body:
            raise ValueError(f"empty term in {text!r}")
        coeff = sign
        exp = [0] * n
        for k, factor in enumerate(body.split("*")):
            if not factor:
                raise ValueError(f"empty factor in {text!r}")
            if re.fullmatch(r"\d+", factor):
                coeff *= int(factor)
                continue
            m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?", factor)
            if not m:
                raise ValueError(f"cannot parse factor {factor!r} in {text!r}")
            exp[alphabet.index(m.group(1))] += int(m.group(2) or 1)
        key = tuple(exp)
        terms[key] = terms.get(key, 0) + coeff
    return LaurentPolynomial(alphabet, terms)


# ---------------------------------------------------------------------------
# operations

def lp_arith(f: LaurentPolynomial, g: LaurentPolynomial, op: str) -> LaurentPolynomial:
    if f.alphabet != g.alphabet:
        raise AlphabetMismatchError(f"{f.alphabet} vs {g.alphabet}")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def lp_substitute(f: LaurentPolynomial, var: str, value: LaurentPolynomial) -> LaurentPolynomial:
    """Image of ``f`` under ``var -> value``.

    Negative powers of an invertible ``var`` are only sound when ``value``
    is a unit monomial; anything else raises :class:`NonUnitSubstitutionError`.
    """
    if value.alphabet != f.alphabet:
        raise AlphabetMismatchError(f"{f.alphabet} vs {value.alphabet}")
    f.alphabet.index(var)  # KeyError for an unknown name
    if f.alphabet.is_invertible(var) and not value.is_unit():
        raise NonUnitSubstitutionError(f"{var} is invertible but {value} is not a unit")
    powers: dict[int, LaurentPolynomial] = {}
    result = LaurentPolynomial.zero(f.alphabet)
    for k, coeff in sorted(f.coefficient_map(var).items()):
        if k not in powers:
            powers[k] = value ** k
        result = result + coeff * powers[k]
    return result


def lp_substitute_many(f: LaurentPolynomial, mapping: Mapping[str, LaurentPolynomial]) -> LaurentPolynomial:
    """Simultaneous substitution (each image is computed from the original ``f``)."""
    alphabet = f.alphabet
    for var, value in mapping.items():
        if alphabet.is_invertible(var) and not value.is_unit():
            raise NonUnitSubstitutionError(f"{var} is invertible but {value} is not a unit")
    one = LaurentPolynomial.constant(alphabet, 1)
    idx = {alphabet.index(v): val for v, val in mapping.items()}
    cache: dict = {}
    result: dict = {}
    for exp, c in f.items():
        rest = tuple(0 if i in idx else e for i, e in enumerate(exp))
        term = LaurentPolynomial(alphabet, {rest: c}, _trusted=True)
        for i, val in idx.items():
            e = exp[i]
            if e:
                key = (i, e)
                if key not in cache:
                    cache[key] = val ** e
                term = term * cache[key]
        for e2, c2 in term.items():
            v = result.get(e2, 0) + c2
            if v:
                result[e2] = v
            else:
                result.pop(e2, None)
    return LaurentPolynomial(alphabet, result, _trusted=True) if result else one.scale(0)


def lp_exact_divide(f: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial:
    """Return ``q`` with ``f == q * g``.

    Raises ZeroDivisionError for ``g == 0`` and InexactDivisionError when no
    Laurent polynomial quotient exists.
    """
    if f.alphabet != g.alphabet:
        raise AlphabetMismatchError(f"{f.alphabet} vs {g.alphabet}")
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return f
    alphabet = f.alphabet
    if g.is_monomial():
        (ge, gc), = g.items()
        out = {}
        for e, c in f.items():
            qc, r = divmod(c, gc)
            if r:
                raise InexactDivisionError(f"coefficient {c} not divisible by {gc}")
            out[tuple(x - y for x, y in zip(e, ge))] = qc
        q = LaurentPolynomial(alphabet, out)
        return q
    # long division in lex order; every monomial is invertible in the Laurent
    # sense only for invertible variables, so we check exponents at the end.
    g_lead = max(g._terms)
    g_lc = g._terms[g_lead]
    g_tail = [(e, c) for e, c in g._terms.items() if e != g_lead]
    # exact quotients live in the box [min_f - min_g, max_f - max_g] coordinatewise
    n = len(alphabet)
    lo = [min(e[i] for e in f._terms) - min(e[i] for e in g._terms) for i in range(n)]
    hi = [max(e[i] for e in f._terms) - max(e[i] for e in g._terms) for i in range(n)]
    rem = dict(f._terms)
    heap = [tuple(-x for x in e) for e in rem]
    heapq.heapify(heap)
    quot = {}
    while heap:
        neg = heapq.heappop(heap)
        e = tuple(-x for x in neg)
        c = rem.pop(e, 0)
        if not c:
            continue
        qe = tuple(x - y for x, y in zip(e, g_lead))
        if any(x < l or x > h for x, l, h in zip(qe, lo, hi)):
            raise InexactDivisionError(f"{f} is not divisible by {g}")
        qc, r = divmod(c, g_lc)
        if r:
            raise InexactDivisionError(f"{f} is not divisible by {g} (coefficients)")
        quot[qe] = qc
        for te, tc in g_tail:
            ne = tuple(x + y for x, y in zip(qe, te))
            old = rem.get(ne)
            if old is None:
                rem[ne] = -qc * tc
                heapq.heappush(heap, tuple(-x for x in ne))
            else:
                v = old - qc * tc
                if v:
                    rem[ne] = v
                else:
                    del rem[ne]
    for name, i in zip(alphabet.names, range(len(alphabet))):
        if name not in alphabet.invertible and any(e[i] < 0 for e in quot):
            raise InexactDivisionError(f"{f} / {g} needs negative powers of {name}")
    q = LaurentPolynomial(alphabet, quot, _trusted=True)
    return q


def lp_swap(f: LaurentPolynomial, x: str, y: str) -> LaurentPolynomial:
    i, j = f.alphabet.index(x), f.alphabet.index(y)
    if f.alphabet.is_invertible(x) != f.alphabet.is_invertible(y):
        raise ValueError(f"{x} and {y} differ in invertibility")
    out = {}
    for e, c in f.items():
        e = list(e)
        e[i], e[j] = e[j], e[i]
        out[tuple(e)] = c
    return LaurentPolynomial(f.alphabet, out, _trusted=True)


def lp_swap_ab(f: LaurentPolynomial) -> LaurentPolynomial:
    """Weyl involution ``a <-> b``."""
    return lp_swap(f, "a", "b")


def is_ab_symmetric(f: LaurentPolynomial) -> bool:
    return lp_swap_ab(f) == f


# ---------------------------------------------------------------------------
# formal quotients

class RationalClass:
    """Formal quotient ``numerator / denominator``; no gcd cancellation."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: LaurentPolynomial, denominator: LaurentPolynomial | None = None):
        if denominator is None:
            denominator = LaurentPolynomial.constant(numerator.alphabet, 1)
        if numerator.alphabet != denominator.alphabet:
            raise AlphabetMismatchError(f"{numerator.alphabet} vs {denominator.alphabet}")
        if denominator.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.numerator = numerator
        self.denominator = denominator

    @property
    def alphabet(self):
        return self.numerator.alphabet

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            other = RationalClass(other)
        if not isinstance(other, RationalClass):
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __hash__(self):
        raise TypeError("RationalClass is unhashable: equality is cross-multiplication")

    def __add__(self, other):
        return rc_sum([self, other])

    def __mul__(self, other):
        if isinstance(other, LaurentPolynomial):
            return RationalClass(self.numerator * other, self.denominator)
        return RationalClass(self.numerator * other.numerator, self.denominator * other.denominator)

    def reduce(self) -> LaurentPolynomial:
        """The Laurent polynomial this class equals; InexactDivisionError otherwise."""
        return lp_exact_divide(self.numerator, self.denominator)

    def __repr__(self):
        return f"RationalClass(({self.numerator}) / ({self.denominator}))"


def rc_sum(classes: Iterable[RationalClass]) -> RationalClass:
    """Sum over a running common denominator.

    A new denominator is absorbed without growth whenever it divides the
    running one exactly; otherwise the running denominator is multiplied.
    """
    classes = list(classes)
    if not classes:
        raise ValueError("rc_sum needs at least one class (alphabet unknown)")
    num = classes[0].numerator
    den = classes[0].denominator
    for rc in classes[1:]:
        if rc.alphabet != num.alphabet:
            raise AlphabetMismatchError(f"{rc.alphabet} vs {num.alphabet}")
        d = rc.denominator
        if d == den:
            num = num + rc.numerator
            continue
        try:
            cof = lp_exact_divide(den, d)
        except InexactDivisionError:
            num = num * d + rc.numerator * den
            den = den * d
        else:
            num = num + rc.numerator * cof
    return RationalClass(num, den)
