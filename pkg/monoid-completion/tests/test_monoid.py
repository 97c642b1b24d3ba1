import numpy as np
import pytest

from monoidcompletion.config import bundled_file
from monoidcompletion.exceptions import AssociativityError, InputError, ParseError
from monoidcompletion.monoid import (
    FiniteMonoid,
    MonoidHom,
    check_associativity,
    cyclic_group,
    direct_product,
    find_associativity_witness,
    format_monoid,
    idempotents,
    inverse_of,
    parse_monoid,
    read_monoid,
)

# 1, a, b with a*a = b, a*b = b, b*a = a, b*b = b: (a a) a = a but a (a a) = b
NOT_ASSOCIATIVE = FiniteMonoid(
    ("1", "a", "b"), 0, [[0, 1, 2], [1, 2, 2], [2, 1, 2]], name="broken"
)


def test_p_products(p):
    assert p.element_names == ("1", "x11", "x12", "x21", "x22")
    assert p.unit == "1"
    assert p.product("x11", "x22") == "x12"
    assert p.product("x21", "x12") == "x22"
    assert p.product("x12", "x21") == "x11"
    assert p.product("1", "x21") == "x21"


def test_p_is_a_band(p):
    assert check_associativity(p)
    assert idempotents(p) == set(p.element_names)
    assert p.validate() is p


def test_only_the_unit_of_p_is_invertible(p):
    assert inverse_of(p, p.unit_index) == p.unit_index
    assert all(inverse_of(p, a) is None for a in p.non_units())


def test_associativity_witness():
    assert find_associativity_witness(NOT_ASSOCIATIVE) == ("associative law", ("a", "a", "a"))
    with pytest.raises(AssociativityError) as info:
        NOT_ASSOCIATIVE.validate()
    assert info.value.witness == ("a", "a", "a")


def test_unit_law_witness():
    m = FiniteMonoid(("1", "a"), 0, [[0, 0], [1, 1]], name="no-unit")
    witness = find_associativity_witness(m)
    assert witness is not None
    law, names = witness
    assert "unit" in law
    assert "a" in names


def test_malformed_table_shape():
    with pytest.raises(InputError):
        check_associativity(FiniteMonoid(("1", "a"), 0, [[0, 1]]))
    with pytest.raises(InputError):
        check_associativity(FiniteMonoid(("1", "a"), 0, [[0, 1], [1, 5]]))


@pytest.mark.parametrize("table", [[[0, 1], [1]], [[0, "x"], [1, 0]]])
def test_ragged_or_non_integer_table(table):
    with pytest.raises(InputError, match="not a square integer array"):
        FiniteMonoid(("1", "a"), 0, table)


def test_duplicate_names_rejected():
    with pytest.raises(InputError):
        FiniteMonoid(("1", "1"), 0, [[0, 1], [1, 0]])


def test_cyclic_and_product_groups():
    z3 = cyclic_group(3)
    assert z3.product("g", "g2") == "1"
    k4 = direct_product(cyclic_group(2), cyclic_group(2))
    assert len(k4) == 4
    assert k4.unit == "1,1"
    assert all(k4.multiply(a, a) == k4.unit_index for a in range(4))
    assert check_associativity(k4)


def test_equality_ignores_name(p):
    renamed = FiniteMonoid(p.element_names, p.unit_index, p.table, name="other")
    assert renamed == p
    assert hash(renamed) == hash(p)
    assert renamed != cyclic_group(5)


def test_table_is_read_only(p):
    with pytest.raises(ValueError):
        p.table[1, 1] = 0


def test_bundled_file_is_p(p):
    assert read_monoid(str(bundled_file("P.monoid"))) == p


def test_format_parses_back(p):
    assert parse_monoid(format_monoid(p)) == p


def test_parse_unknown_element_position():
    text = "monoid bad\nelements: 1 g\nunit: 1\nrow 1: 1 h\nrow g: g 1\n"
    with pytest.raises(ParseError) as info:
        parse_monoid(text)
    assert info.value.line == 4
    assert info.value.column == 10


def test_parse_missing_row():
    text = "monoid z2\nelements: 1 g\nunit: 1\nrow 1: 1 g\n"
    with pytest.raises(ParseError, match="Missing rows for g"):
        parse_monoid(text)


@pytest.mark.parametrize("row, column", [("row 1: 1 g g", 12), ("row 1: 1  # short", 9)])
def test_parse_wrong_row_length_position(row, column):
    text = f"monoid z2\nelements: 1 g\nunit: 1\n{row}\nrow g: g 1\n"
    with pytest.raises(ParseError, match="needs 2 entries") as info:
        parse_monoid(text)
    assert info.value.line == 4
    assert info.value.column == column


def test_parse_ignores_comments():
    text = "# Z/2\nmonoid z2\nelements: 1 g  # two\nunit: 1\nrow 1: 1 g\nrow g: g 1\n"
    m = parse_monoid(text)
    assert m == cyclic_group(2)
    assert m.name == "z2"


def test_homomorphism_to_trivial(p, trivial):
    assert MonoidHom(p, trivial, (0,) * 5).is_homomorphism()
    collapse = MonoidHom(p, p, (0, 1, 1, 1, 1))
    assert collapse.is_homomorphism()
    assert not MonoidHom(p, p, (1, 1, 1, 1, 1)).is_homomorphism()


def test_idempotents_of_a_group():
    assert idempotents(cyclic_group(4)) == {"1"}
    assert np.array_equal(cyclic_group(1).table, [[0]])
