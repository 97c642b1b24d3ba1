import dataclasses

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monoidcompletion.config import bundled_file
from monoidcompletion.enums import SimplifyRule, VerdictStatus
from monoidcompletion.exceptions import CertificateError, InputError, ParseError
from monoidcompletion.monoid import cyclic_group, direct_product, parse_monoid, trivial_monoid
from monoidcompletion.presentation import (
    Abelianization,
    GroupPresentation,
    TrivialityVerdict,
    abelianization,
    eliminated_values,
    format_word,
    free_product,
    free_reduce,
    inverse_word,
    parse_presentation,
    replay_certificate,
    simplify,
    substitute,
    universal_group_of_free_product,
    universal_group_of_table,
)

A, B = ("a", 1), ("b", 1)
A_INV, B_INV = ("a", -1), ("b", -1)


def test_word_helpers():
    assert free_reduce([A, B, B_INV, A_INV, B]) == (B,)
    assert inverse_word((A, B_INV)) == (B, A_INV)
    assert substitute((A, B), {"a": (B_INV,)}) == ()
    assert format_word((A, B_INV)) == "a b^-1"
    assert format_word(()) == "1"


def test_presentation_validation():
    with pytest.raises(InputError):
        GroupPresentation(("a", "a"))
    with pytest.raises(InputError):
        GroupPresentation(("a",), ((B,),))
    with pytest.raises(InputError):
        GroupPresentation(("a",), ((A, A_INV),))
    with pytest.raises(InputError):
        GroupPresentation(("a",), ((("a", 2),),))


def test_universal_group_of_p(p):
    up = universal_group_of_table(p)
    assert up.generators == ("[x11]", "[x12]", "[x21]", "[x22]")
    assert len(up.relators) == 16
    assert (("[x11]", 1), ("[x22]", 1), ("[x12]", -1)) in up.relators
    # x11 x11 = x11 reduces to the single letter [x11]
    assert (("[x11]", 1),) in up.relators


def test_universal_group_of_small_tables(z2):
    assert universal_group_of_table(trivial_monoid()) == GroupPresentation()
    assert str(universal_group_of_table(z2)) == "<[g] | [g] [g]>"


def test_free_products(p):
    up = universal_group_of_table(p)
    assert universal_group_of_free_product(1, p) == up
    assert universal_group_of_free_product(0, p) == GroupPresentation()
    um2 = universal_group_of_free_product(2, p)
    assert len(um2.generators) == 8
    assert len(um2.relators) == 32
    assert um2.generators[0] == "[x11]_1"
    with pytest.raises(InputError):
        universal_group_of_free_product(-1, p)


def test_up_is_trivial(p):
    original = universal_group_of_table(p)
    simplified, verdict = simplify(original)
    assert simplified.generators == ()
    assert verdict.status == VerdictStatus.TrivialCertified
    assert verdict.steps[0].rule == SimplifyRule.IdempotentCollapse
    assert verdict.steps[0].generator == "[x11]"
    assert verdict.check(original) == simplified
    assert all(w == () for w in eliminated_values(original, verdict.steps).values())


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_completions_of_free_products_are_trivial(p, k):
    original = universal_group_of_free_product(k, p)
    _, verdict = simplify(original)
    assert verdict.status == VerdictStatus.TrivialCertified
    verdict.check(original)


def test_cyclic_group_of_order_two():
    g = GroupPresentation(("g",), ((("g", 1), ("g", 1)),))
    simplified, verdict = simplify(g)
    assert simplified == g
    assert verdict.status == VerdictStatus.NontrivialCertified
    assert verdict.invariants == Abelianization(0, (2,))
    assert str(verdict.invariants) == "Z/2"
    verdict.check(g)


def test_tietze_step():
    p = GroupPresentation(("a", "b"), ((B, A),))
    simplified, verdict = simplify(p)
    assert verdict.steps[0].rule == SimplifyRule.TietzeSubstitution
    assert verdict.steps[0].generator == "b"
    assert verdict.steps[0].replacement == (A_INV,)
    assert simplified.generators == ("a",)
    assert verdict.status == VerdictStatus.NontrivialCertified
    assert verdict.invariants == Abelianization(1, ())


def test_unit_generator_rule():
    p = GroupPresentation(("a", "b"), ((A_INV,), (A, B, A)))
    simplified, verdict = simplify(p)
    assert verdict.steps[0].rule == SimplifyRule.UnitGenerator
    assert verdict.status == VerdictStatus.TrivialCertified


def test_free_group_is_nontrivial():
    p = GroupPresentation(("a", "b"))
    simplified, verdict = simplify(p)
    assert simplified == p
    assert verdict.status == VerdictStatus.NontrivialCertified
    assert verdict.invariants == Abelianization(2, ())


def test_step_limit(p):
    original = universal_group_of_table(p)
    _, verdict = simplify(original, step_limit=0)
    assert verdict.status == VerdictStatus.Unknown
    assert verdict.steps == ()


def test_abelianizations():
    z3 = universal_group_of_table(cyclic_group(3))
    assert abelianization(z3) == Abelianization(0, (3,))
    klein = parse_monoid(bundled_file("klein4.monoid").read_text(encoding="utf-8"))
    assert abelianization(universal_group_of_table(klein)) == Abelianization(0, (2, 2))
    product = direct_product(cyclic_group(2), cyclic_group(2))
    assert abelianization(universal_group_of_table(product)) == Abelianization(0, (2, 2))
    assert abelianization(GroupPresentation()).is_trivial()


def test_coproduct_of_completions(p):
    up = universal_group_of_table(p)
    pair = free_product([up, up])
    assert pair == universal_group_of_free_product(2, p)
    assert simplify(pair)[1].status == VerdictStatus.TrivialCertified


def test_tampered_certificates(p):
    original = universal_group_of_table(p)
    _, verdict = simplify(original)
    first = dataclasses.replace(verdict.steps[0], replacement=(("[x12]", 1),))
    tampered = dataclasses.replace(verdict, steps=(first,) + verdict.steps[1:])
    with pytest.raises(CertificateError):
        tampered.check(original)
    with pytest.raises(CertificateError):
        replay_certificate(original, verdict.steps[1:2] + verdict.steps[1:2])
    with pytest.raises(CertificateError):
        TrivialityVerdict(VerdictStatus.TrivialCertified, verdict.steps[:1]).check(original)
    z2 = universal_group_of_table(cyclic_group(2))
    wrong = TrivialityVerdict(VerdictStatus.NontrivialCertified, (), Abelianization(0, (3,)))
    with pytest.raises(CertificateError):
        wrong.check(z2)


def test_text_form(p):
    up = universal_group_of_table(p)
    assert parse_presentation(up.format()) == up
    text = "gens: a b\n# comment\nrel: a a^-1 b\nrel: b b^-1\n"
    assert parse_presentation(text) == GroupPresentation(("a", "b"), ((B,),))


def test_parse_errors():
    with pytest.raises(ParseError) as info:
        parse_presentation("gens: a\nrel: b\n")
    assert info.value.line == 2
    with pytest.raises(ParseError):
        parse_presentation("rel: a\n")
    with pytest.raises(ParseError):
        parse_presentation("gens: a\nrel: a^2\n")
    with pytest.raises(ParseError):
        parse_presentation("")


LETTERS = [(g, e) for g in ("a", "b", "c") for e in (1, -1)]


@st.composite
def presentations(draw):
    words = draw(st.lists(st.lists(st.sampled_from(LETTERS), max_size=6), max_size=5))
    relators = [free_reduce(w) for w in words]
    return GroupPresentation(("a", "b", "c"), tuple(r for r in relators if r))


@settings(max_examples=200, deadline=None)
@given(presentations())
def test_simplify_is_deterministic_and_certified(p):
    simplified, verdict = simplify(p)
    assert simplify(p) == (simplified, verdict)
    assert replay_certificate(p, verdict.steps) == simplified
    assert verdict.check(p) == simplified
    assert abelianization(simplified) == abelianization(p)
    if verdict.status == VerdictStatus.NontrivialCertified:
        assert not verdict.invariants.is_trivial()
