import pytest

from k0genus2.groebner import PolynomializedRing, ideal_contains, strong_gb
from k0genus2.ktproj import (
    TORUS_T,
    coordinate_weight,
    fixed_point_class,
    hypersurface_class,
    proj_presentation,
)
from k0genus2.laurent import lp_swap_ab, parse_polynomial


def P(text):
    return parse_polynomial(text, TORUS_T)


def test_relation_examples():
    assert proj_presentation(1).relation == P("1 - a*t^-1") * P("1 - b*t^-1")
    assert proj_presentation(2).relation == P("1 - a^2*t^-1") * P("1 - a*b*t^-1") * P("1 - b^2*t^-1")
    rel6 = proj_presentation(6).relation
    assert rel6.degree_in("t") == (-7, 0)
    assert len(proj_presentation(6).factors()) == 7
    with pytest.raises(ValueError):
        proj_presentation(-1)


def test_fixed_point_examples():
    assert fixed_point_class(2, 0) == P("1 - a*b*t^-1") * P("1 - b^2*t^-1")
    assert fixed_point_class(2, 2) == P("1 - a^2*t^-1") * P("1 - a*b*t^-1")
    assert fixed_point_class(1, 0) == P("1 - b*t^-1")
    with pytest.raises(ValueError):
        fixed_point_class(2, 3)


def test_hypersurface_examples():
    assert hypersurface_class(1, P("a*b")) == P("1 - a^-1*b^-1*t^-1")
    assert hypersurface_class(2, P("a^2*b^2")) == P("1 - a^-2*b^-2*t^-2")
    through_q0 = hypersurface_class(1, P("a^-1*b^-1")) * hypersurface_class(1, P("b^-2"))
    assert through_q0 == fixed_point_class(2, 0)
    with pytest.raises(ValueError):
        hypersurface_class(1, P("a + b"))


def test_weights():
    assert coordinate_weight(3, 1) == P("a^2*b")


@pytest.mark.parametrize("N", range(0, 9))
def test_fixed_point_structure(N):
    rel = proj_presentation(N).relation
    for k in range(N + 1):
        f = fixed_point_class(N, k)
        assert f * P(f"1 - {coordinate_weight(N, k)}*t^-1") == rel
        assert lp_swap_ab(f) == fixed_point_class(N, N - k)
        assert f.degree_in("t") == (-N, 0)


def test_relation_lies_in_fixed_point_ideal():
    ring = PolynomializedRing(TORUS_T, order="grevlex")
    gb = strong_gb([fixed_point_class(3, 1)], ring)
    assert ideal_contains(gb, proj_presentation(3).relation)
