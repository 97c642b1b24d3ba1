import pytest

from monoidcompletion.exceptions import InputError
from monoidcompletion.free_product import UNIT_WORD, FreeProductElement
from monoidcompletion.identities import count_identities, iter_identities
from monoidcompletion.monoid import cyclic_group
from monoidcompletion.simplicial_monoid import (
    build_M,
    coequalizer,
    constant_simplicial_monoid,
    degeneracy_summand_map,
    face_summand_map,
    misnumbered_face_map,
    pi0_is_group,
)


def test_face_summand_maps():
    assert face_summand_map(3, 0) == (0, 1, 2)
    assert face_summand_map(3, 1) == (1, 1, 2)
    assert face_summand_map(3, 2) == (1, 2, 2)
    assert face_summand_map(3, 3) == (1, 2, 0)
    assert face_summand_map(1, 0) == (0,)
    assert face_summand_map(1, 1) == (0,)
    with pytest.raises(InputError):
        face_summand_map(2, 3)


def test_degeneracy_summand_maps():
    assert degeneracy_summand_map(2, 0) == (2, 3)
    assert degeneracy_summand_map(2, 2) == (1, 2)
    assert degeneracy_summand_map(0, 0) == ()


def test_misnumbered_rule_only_differs_in_the_middle():
    assert misnumbered_face_map(2, 1) == face_summand_map(2, 1)
    assert misnumbered_face_map(3, 2) == (1, 1, 2)


def test_identity_count():
    assert count_identities(1) == 2
    assert sum(1 for _ in iter_identities(2, 2)) == 3


@pytest.mark.parametrize("k_max", [1, 2, 3, 4, 5])
def test_identities_hold(k_max):
    m = build_M(k_max)
    assert m.k_max == k_max
    assert m.check_identities()


def test_faces_on_generators(p):
    m = build_M(2)
    x11 = p.index("x11")
    d0, d1 = m.faces[1]
    assert d0(FreeProductElement(((1, x11),))) == UNIT_WORD
    assert d1(FreeProductElement(((1, x11),))) == UNIT_WORD
    fold = m.faces[2][1]
    assert fold(FreeProductElement(((2, x11),))) == FreeProductElement(((1, x11),))


def test_misnumbered_rule_is_caught():
    assert build_M(2, misnumbered_face_map).check_identities()
    violation = build_M(3, misnumbered_face_map).find_violation()
    assert violation is not None
    assert violation.identity.family == "ds"
    assert violation.identity.level == 2
    assert violation.identity.describe() == "d2 s0 = s0 d1 on level 2"
    assert violation.probe == "x11^(1)"
    assert "fails on x11^(1)" in violation.describe()
    assert violation.lhs_value == "x11^(1)"
    assert violation.rhs_value == "x11^(2)"
    assert violation.describe().endswith(": x11^(1) != x11^(2)")


def test_build_M_needs_a_level():
    with pytest.raises(InputError):
        build_M(0)


def test_components_form_the_trivial_group():
    result = pi0_is_group(build_M(3))
    assert result.is_group
    assert len(result.quotient) == 1
    assert result.witness is None


def test_constant_p_has_no_inverses(p):
    m = constant_simplicial_monoid(p, 2)
    assert m.check_identities()
    result = pi0_is_group(m)
    assert not result.is_group
    assert result.witness == "x11^(1)"
    assert len(result.quotient) == 5


def test_constant_group_is_a_group():
    result = pi0_is_group(constant_simplicial_monoid(cyclic_group(3), 1))
    assert result.is_group
    assert len(result.quotient) == 3


def test_coequalizer_closes_under_products(p):
    # x11 ~ 1 spreads through products to every element
    quotient = coequalizer(p, [(p.index("x11"), p.unit_index)])
    assert len(quotient) == 1
    assert len(coequalizer(p, [])) == 5
