"""Representation ring of ``G = T2 x| S2`` and its torus restriction.

``R(G)`` is presented as ``Z[eps, lam^{+-1}, gam^{+-1}] / (gam^2 - 1, eps*(1 - gam))``
where ``eps = [W_1]`` (the rank-two representation induced from the first
character), ``lam = [det W_1]`` and ``gam`` is the sign character of ``S2``.
:class:`GClass` keeps its polynomial in normal form: ``gam``-degree 0 or 1,
and no ``gam`` on terms that contain ``eps``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .laurent import LaurentPolynomial, VariableAlphabet, lp_substitute_many, parse_polynomial
from .symfun import CHARACTERS

__all__ = [
    "G_ALPHABET",
    "GClass",
    "TwoDimBundleClass",
    "w_class",
    "det_class",
    "dual_w_class",
    "dual_det_class",
    "bundle_class",
    "induce_character",
    "induce_class",
    "restrict_to_torus",
    "euler_lambda_minus1_dual",
    "boundary_relations_r1_r2",
]

G_ALPHABET = VariableAlphabet(["eps", "lam", "gam"], ["lam", "gam"])
_IE, _IL, _IG = 0, 1, 2


def _normalize(f: LaurentPolynomial) -> LaurentPolynomial:
    out: dict[tuple, int] = {}
    for (e, l, g), c in f.items():
        g %= 2          # gam^2 = 1 (also for negative powers)
        if e > 0:
            g = 0       # eps*gam = eps
        key = (e, l, g)
        out[key] = out.get(key, 0) + c
    return LaurentPolynomial(G_ALPHABET, out)


@dataclass(frozen=True)
class GClass:
    """An element of ``R(G)`` in normal form."""

    poly: LaurentPolynomial

    def __post_init__(self):
        if self.poly.alphabet != G_ALPHABET:
            raise ValueError(f"GClass needs alphabet {G_ALPHABET.names}")
        object.__setattr__(self, "poly", _normalize(self.poly))

    @classmethod
    def parse(cls, text: str) -> "GClass":
        return cls(parse_polynomial(text, G_ALPHABET))

    @classmethod
    def const(cls, c: int) -> "GClass":
        return cls(LaurentPolynomial.constant(G_ALPHABET, c))

    @classmethod
    def var(cls, name: str, power: int = 1) -> "GClass":
        return cls(LaurentPolynomial.variable(G_ALPHABET, name, power))

    def _lift(self, other) -> LaurentPolynomial:
        if isinstance(other, GClass):
            return other.poly
        if isinstance(other, int):
            return LaurentPolynomial.constant(G_ALPHABET, other)
        if isinstance(other, LaurentPolynomial):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else GClass(self.poly + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else GClass(self.poly - o)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else GClass(o - self.poly)

    def __mul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else GClass(self.poly * o)

    __rmul__ = __mul__

    def __neg__(self):
        return GClass(-self.poly)

    def __pow__(self, n: int):
        if n < 0:
            return GClass(self.poly ** n)
        out = GClass.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.poly)

    def __str__(self):
        return str(self.poly)


@dataclass(frozen=True)
class TwoDimBundleClass:
    """``[W_n]`` together with its determinant ``[wedge^2 W_n]``."""

    rank2_class: GClass
    det_class: GClass
    index: int


_EPS = GClass.var("eps")
_LAM = GClass.var("lam")
_GAM = GClass.var("gam")
_ONE = GClass.const(1)

_w_lock = threading.Lock()
_w_table: dict[int, GClass] = {0: _ONE + _GAM, 1: _EPS}


def w_class(n: int) -> GClass:
    """``[W_n]``: ``W_0 = 1 + gam``, ``W_1 = eps``, ``W_n = eps*W_(n-1) - lam*gam*W_(n-2)``,
    and ``W_-n = lam^-n * W_n``."""
    if n < 0:
        return GClass(_LAM.poly ** n) * w_class(-n)
    with _w_lock:
        top = max(_w_table)
        while top < n:
            top += 1
            _w_table[top] = _EPS * _w_table[top - 1] - _LAM * _GAM * _w_table[top - 2]
        return _w_table[n]


def det_class(n: int) -> GClass:
    """``[wedge^2 W_n]``: ``gam*lam^n`` for even ``n``, ``lam^n`` for odd ``n``."""
    d = GClass(_LAM.poly ** n)
    return d * _GAM if n % 2 == 0 else d


def dual_w_class(n: int) -> GClass:
    """``[W_n^dual] = [W_-n] = lam^-n [W_n]``."""
    return GClass(_LAM.poly ** -n) * w_class(n)


def dual_det_class(n: int) -> GClass:
    return det_class(-n)


def bundle_class(n: int) -> TwoDimBundleClass:
    return TwoDimBundleClass(w_class(n), det_class(n), n)


def induce_character(m: int, n: int) -> GClass:
    """Pushforward of ``a^m b^n`` from ``BT2`` to ``BG``: ``[wedge^2 W_n][W_(m-n)]``."""
    if m == n:
        return det_class(m) * w_class(0)
    return det_class(n) * w_class(m - n)


def induce_class(f: LaurentPolynomial) -> GClass:
    """Pushforward ``R(T2) -> R(G)`` of a Laurent polynomial in ``a, b``, term by term."""
    f = f.rename(CHARACTERS)
    out = GClass.const(0)
    for (m, n), c in f.items():
        out = out + c * induce_character(m, n)
    return out


def restrict_to_torus(c: GClass) -> LaurentPolynomial:
    """Restriction to ``T2``: ``eps -> a + b``, ``lam -> ab``, ``gam -> 1``."""
    alph = VariableAlphabet(["eps", "lam", "gam", "a", "b"], ["lam", "gam", "a", "b"])
    lifted = c.poly.rename(alph)
    a = LaurentPolynomial.variable(alph, "a")
    b = LaurentPolynomial.variable(alph, "b")
    one = LaurentPolynomial.constant(alph, 1)
    image = lp_substitute_many(lifted, {"eps": a + b, "lam": a * b, "gam": one})
    return image.rename(CHARACTERS)


def euler_lambda_minus1_dual(indices) -> GClass:
    """``prod_n lambda_-1(W_n^dual) = prod_n (1 - [W_n^dual] + [det W_n^dual])``."""
    out = _ONE
    for n in indices:
        out = out * (_ONE - dual_w_class(n) + dual_det_class(n))
    return out


def boundary_relations_r1_r2() -> tuple[GClass, GClass]:
    """The two relations pushed forward from the boundary of the ``W_{4,6}`` section."""
    def tail(k):
        return (GClass(_LAM.poly ** -4) * w_class(4 + k)
                + GClass(_LAM.poly ** -6) * w_class(6 + k)
                - GClass(_LAM.poly ** -10) * w_class(10 + k))
    r1 = w_class(0) - _GAM * tail(0)
    r2 = _EPS - _GAM * tail(1)
    return r1, r2
