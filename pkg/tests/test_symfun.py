import pytest
from conftest import AB, laurent_polys
from hypothesis import given, settings

from k0genus2.laurent import LaurentPolynomial, lp_swap_ab, parse_polynomial
from k0genus2.symfun import (
    CHARACTERS,
    SYMMETRIC,
    NonSymmetricError,
    complete_homogeneous,
    from_characters,
    to_characters,
)


def S(text):
    return parse_polynomial(text, SYMMETRIC)


def C(text):
    return parse_polynomial(text, CHARACTERS)


def test_complete_homogeneous_small():
    assert complete_homogeneous(0) == S("1")
    assert complete_homogeneous(-1).is_zero()
    assert complete_homogeneous(1) == S("e1")
    assert complete_homogeneous(2) == S("e1^2 - e2")
    with pytest.raises(ValueError):
        complete_homogeneous(-2)


@pytest.mark.parametrize("n", range(21))
def test_complete_homogeneous_expansion(n):
    expect = LaurentPolynomial(CHARACTERS, {(n - i, i): 1 for i in range(n + 1)})
    assert to_characters(complete_homogeneous(n)) == expect


@pytest.mark.parametrize("n", range(2, 21))
def test_complete_homogeneous_recursion(n):
    h = complete_homogeneous
    assert h(n) - S("e1") * h(n - 1) + S("e2") * h(n - 2) == S("0")


def test_to_characters_examples():
    assert to_characters(S("e1")) == C("a + b")
    assert to_characters(S("e2^-1")) == C("a^-1*b^-1")
    assert to_characters(complete_homogeneous(3)) == C("a^3 + a^2*b + a*b^2 + b^3")


def test_from_characters_examples():
    assert from_characters(C("a + b")) == S("e1")
    assert from_characters(C("a^-1 + b^-1")) == S("e1*e2^-1")
    assert from_characters(C("a^2*b^2 - a*b")) == S("e2^2 - e2")


def test_from_characters_rejects_asymmetric():
    with pytest.raises(NonSymmetricError):
        from_characters(C("a^2 + b"))


sym_polys = laurent_polys(SYMMETRIC, max_terms=5, max_exp=4)
char_polys = laurent_polys(AB, max_terms=5, max_exp=4)


@settings(max_examples=250, deadline=None)
@given(sym_polys)
def test_roundtrip_symmetric(s):
    assert from_characters(to_characters(s)) == s


@settings(max_examples=250, deadline=None)
@given(char_polys)
def test_roundtrip_characters(g):
    g = g.rename(CHARACTERS)
    f = g + lp_swap_ab(g)
    assert to_characters(from_characters(f)) == f
