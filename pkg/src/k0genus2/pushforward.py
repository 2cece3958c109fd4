"""Localization pushforwards along the power maps ``(f, g) -> f^q * g``.

The map sends ``P^r x P^s`` to ``P^N`` with ``N = q*r + s``, where each space
parametrizes binary forms.  The torus fixed points of the source are
``P_(i,j)`` (coordinate points), and ``P_(i,j)`` lands on ``Q_(q*i+j)``.
For ``x = [O(1)]`` on the first factor,

    pi_*(x^k) = sum_(i,j) (a^(r-i) b^i)^k * [Q_(q*i+j)] / lambda_-1(conormal at P_(i,j)).

Every Euler factor has the shape ``1 - y^d`` with ``y = b/a``.  Each one is
rewritten as a unit times ``1 - y^|d|``, the terms are summed over the least
common multiple of those denominators, and a single exact division at the
end produces the Laurent polynomial (or raises, which would be a bug).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .ktproj import TORUS_T, fixed_point_class
from .laurent import (
    InexactDivisionError,
    LaurentPolynomial,
    RationalClass,
    is_ab_symmetric,
    lp_exact_divide,
    lp_substitute,
)
from .symfun import CHARACTERS, from_characters

__all__ = [
    "FixedPoint",
    "PushforwardResult",
    "NonPolynomialPushforward",
    "conormal_euler",
    "pushforward_power_map",
    "pushforward_on_moduli_chart",
    "substitute_t_on_chart",
]


class NonPolynomialPushforward(ArithmeticError):
    pass


@dataclass(frozen=True)
class FixedPoint:
    i: int
    j: int

    def image(self, q: int) -> int:
        return q * self.i + self.j


@dataclass(frozen=True)
class PushforwardResult:
    q: int
    r: int
    N: int
    k: int
    value: LaurentPolynomial
    certificate: dict = field(default_factory=dict, compare=False)

    def t_range(self) -> tuple[int, int]:
        return self.value.degree_in("t")


def _ab(p: int, q: int, t: int = 0) -> LaurentPolynomial:
    return LaurentPolynomial(TORUS_T, {(p, q, t): 1})


def _check_point(r: int, s: int, p: FixedPoint):
    if not (0 <= p.i <= r and 0 <= p.j <= s):
        raise ValueError(f"fixed point {p} outside 0..{r} x 0..{s}")


def _euler_exponents(r: int, s: int, p: FixedPoint) -> list[int]:
    """Exponents ``d`` of the factors ``1 - (b/a)^d`` of the conormal Euler class."""
    ds = [k - p.i for k in range(r + 1) if k != p.i]
    ds += [k - p.j for k in range(s + 1) if k != p.j]
    return ds


def conormal_euler(r: int, s: int, p: FixedPoint) -> RationalClass:
    """``lambda_-1`` of the conormal space at ``P_(i,j)`` in ``P^r x P^s``."""
    _check_point(r, s, p)
    out = LaurentPolynomial.constant(TORUS_T, 1)
    one = LaurentPolynomial.constant(TORUS_T, 1)
    for d in _euler_exponents(r, s, p):
        out = out * (one - _ab(-d, d))
    return RationalClass(out)


def _one_minus_y(m: int) -> LaurentPolynomial:
    # 1 - (b/a)^m
    return LaurentPolynomial(TORUS_T, {(0, 0, 0): 1, (-m, m, 0): -1})


def pushforward_power_map(q: int, r: int, N: int, k: int) -> PushforwardResult:
    """``pi_*(x^k)`` for ``P^r x P^(N-q*r) -> P^N``, ``(f, g) -> f^q g``."""
    if q not in (2, 3):
        raise ValueError(f"q must be 2 or 3, got {q}")
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    s = N - q * r
    if s < 0:
        raise ValueError(f"N - q*r must be >= 0 (q={q}, r={r}, N={N})")
    if not 0 <= k <= r:
        raise ValueError(f"k must lie in 0..{r}, got {k}")

    terms = []
    for i in range(r + 1):
        for j in range(s + 1):
            p = FixedPoint(i, j)
            num = _ab((r - i) * k, i * k) * fixed_point_class(N, p.image(q))
            den = Counter()
            for d in _euler_exponents(r, s, p):
                if d > 0:
                    den[d] += 1
                else:
                    # 1 - y^d = -y^d (1 - y^-d)
                    num = num * _ab(-d, d).scale(-1) ** -1
                    den[-d] += 1
            terms.append((p, num, den))

    common = Counter()
    for _, _, den in terms:
        for m, c in den.items():
            common[m] = max(common[m], c)

    total = LaurentPolynomial.zero(TORUS_T)
    for _, num, den in terms:
        cof = num
        for m, c in common.items():
            for _ in range(c - den[m]):
                cof = cof * _one_minus_y(m)
        total = total + cof

    factors = sorted(common.elements())
    value = total
    try:
        for m in factors:
            value = lp_exact_divide(value, _one_minus_y(m))
    except InexactDivisionError as exc:
        raise NonPolynomialPushforward(
            f"fixed-point sum for q={q}, r={r}, N={N}, k={k} is not a Laurent polynomial") from exc

    certificate = {
        "fixed_points": len(terms),
        "denominator": " * ".join(f"(1 - (b/a)^{m})" for m in factors) or "1",
        "exact": True,
        "symmetric": is_ab_symmetric(value),
        "t_range": list(value.degree_in("t")),
    }
    return PushforwardResult(q, r, N, k, value, certificate)


def substitute_t_on_chart(f: LaurentPolynomial) -> LaurentPolynomial:
    """``t -> (ab)^2``, landing in ``Z[a^{+-1}, b^{+-1}]``."""
    return lp_substitute(f, "t", _ab(2, 2)).rename(CHARACTERS)


def pushforward_on_moduli_chart(q: int, r: int, N: int, k: int) -> LaurentPolynomial:
    """Pushforward with ``t = (ab)^2`` imposed, rewritten in ``e1, e2``."""
    res = pushforward_power_map(q, r, N, k)
    return from_characters(substitute_t_on_chart(res.value))
