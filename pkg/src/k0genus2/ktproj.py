"""Torus-equivariant K-theory of projective spaces of binary forms.

``P^N`` is the projectivization of binary forms of degree ``N``; the
coordinate ``X_i`` (coefficient of ``x^(N-i) y^i``) carries the weight
``a^(N-i) b^i`` on sections of ``O(1)``, and ``t = [O(1)]``.  Then

    K_0(P^N, T2) = Z[a^{+-1}, b^{+-1}, t^{+-1}] / prod_k (1 - a^(N-k) b^k t^-1).

The fixed points are the coordinate points ``Q_k``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .laurent import LaurentPolynomial, VariableAlphabet

__all__ = [
    "TORUS_T",
    "ProjSpacePresentation",
    "coordinate_weight",
    "proj_presentation",
    "fixed_point_class",
    "hypersurface_class",
]

TORUS_T = VariableAlphabet(["a", "b", "t"], ["a", "b", "t"])


def coordinate_weight(N: int, i: int) -> LaurentPolynomial:
    """``a^(N-i) b^i`` over ``{a, b, t}``."""
    return LaurentPolynomial(TORUS_T, {(N - i, i, 0): 1})


def _factor(N: int, i: int) -> LaurentPolynomial:
    # 1 - a^(N-i) b^i t^-1
    return LaurentPolynomial(TORUS_T, {(0, 0, 0): 1, (N - i, i, -1): -1})


@dataclass(frozen=True)
class ProjSpacePresentation:
    N: int
    relation: LaurentPolynomial

    @property
    def alphabet(self) -> VariableAlphabet:
        return TORUS_T

    def factors(self) -> list[LaurentPolynomial]:
        return [_factor(self.N, k) for k in range(self.N + 1)]


def proj_presentation(N: int) -> ProjSpacePresentation:
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    rel = LaurentPolynomial.constant(TORUS_T, 1)
    for k in range(N + 1):
        rel = rel * _factor(N, k)
    return ProjSpacePresentation(N, rel)


def fixed_point_class(N: int, k: int) -> LaurentPolynomial:
    """``[Q_k] = prod_{i != k} (1 - a^(N-i) b^i t^-1)``."""
    if not 0 <= k <= N:
        raise ValueError(f"fixed point index {k} outside 0..{N}")
    out = LaurentPolynomial.constant(TORUS_T, 1)
    for i in range(N + 1):
        if i != k:
            out = out * _factor(N, i)
    return out


def hypersurface_class(d: int, chi: LaurentPolynomial) -> LaurentPolynomial:
    """Class of a hypersurface of degree ``d`` cut out by a ``chi``-semi-invariant
    form: ``1 - chi^-1 t^-d``."""
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    if not chi.is_unit():
        raise ValueError(f"character must be a unit monomial, got {chi}")
    chi = chi.rename(TORUS_T)
    if chi.degree_in("t") != (0, 0):
        raise ValueError("character must not involve t")
    one = LaurentPolynomial.constant(TORUS_T, 1)
    return one - chi ** -1 * LaurentPolynomial.variable(TORUS_T, "t", -d)
