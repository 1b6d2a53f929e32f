import itertools

import pytest
from hypothesis import given, strategies as st

from esgstruct.cleaning import (
    BULLET_GLYPHS,
    CleaningPolicy,
    clean_bullets,
    clean_element,
    clean_extra_whitespace,
    clean_leading_dashes,
    clean_text,
    group_broken_paragraphs,
)
from esgstruct.elements import ElementKind
from conftest import make_element

ALL_POLICIES = [CleaningPolicy(*flags) for flags in itertools.product([True, False], repeat=5)]
IDENTITY = CleaningPolicy(False, False, False, False, False)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("line one\nline two", "line one line two"),
        ("para one\n\npara two", "para one\n\npara two"),
        ("sustain-\nability report", "sustainability report"),
        ("para one\n \n\t\n\npara two", "para one\n\npara two"),
        ("Coca-\nCola", "Coca- Cola"),
        ("a\r\nb", "a b"),
    ],
)
def test_group_broken_paragraphs(text, expected):
    assert group_broken_paragraphs(text) == expected


def test_dehyphenation_can_be_disabled():
    assert group_broken_paragraphs("sustain-\nability", dehyphenate=False) == "sustain- ability"


@pytest.mark.parametrize(
    "text, expected",
    [
        ("● Implement globally unified initiatives…", "Implement globally unified initiatives…"),
        ("no bullet here", "no bullet here"),
        ("– Toyota ESD Project – Environmental education", "Toyota ESD Project – Environmental education"),
        ("• first\n\n• second", "first\n\nsecond"),
        ("one • two", "one • two"),
        ("  * starred", "starred"),
    ],
)
def test_clean_bullets(text, expected):
    assert clean_bullets(text) == expected


def test_clean_leading_dashes_leaves_round_bullets():
    assert clean_leading_dashes("— dash") == "dash"
    assert clean_leading_dashes("• dot") == "• dot"


@pytest.mark.parametrize(
    "text, expected",
    [("a   b\t c", "a b c"), ("  x  ", "x"), ("a \n\n b", "a\n\nb")],
)
def test_clean_extra_whitespace(text, expected):
    assert clean_extra_whitespace(text) == expected


def test_walmart_item_keeps_superscripts():
    el = make_element("ListItem", "• Assessed ~13,100 third-party responsible sourcing facility audit reports³³")
    cleaned = clean_element(el, CleaningPolicy())
    assert cleaned.text == "Assessed ~13,100 third-party responsible sourcing facility audit reports³³"
    assert cleaned.kind is ElementKind.LIST_ITEM and cleaned.id == el.id


def test_identity_policy():
    el = make_element("NarrativeText", "  • messy \n text-\nhere  ")
    assert clean_element(el, IDENTITY) == el


@pytest.mark.parametrize("kind", ["Table", "PageBreak", "Header", "Footer"])
def test_non_text_elements_pass_through(kind):
    el = make_element(kind, "  • x  ")
    for policy in ALL_POLICIES:
        assert clean_element(el, policy) is el


messy = st.lists(
    st.sampled_from(list("ab Z9.,") + [" ", "\t", "\n", "\r", "\xa0"] + list(BULLET_GLYPHS)
                    + ["-\n", "\n\n", " - ", "word"]),
    max_size=30,
).map("".join)


@given(messy, st.sampled_from(ALL_POLICIES))
def test_idempotent_for_every_policy(text, policy):
    once = clean_text(text, policy)
    assert clean_text(once, policy) == once


@given(messy, st.sampled_from(ALL_POLICIES))
def test_other_characters_survive_in_order(text, policy):
    def keep(s):
        return [c for c in s if not c.isspace() and c not in BULLET_GLYPHS]

    assert keep(clean_text(text, policy)) == keep(text)


@given(messy)
def test_whitespace_output_shape(text):
    out = clean_extra_whitespace(text)
    assert "  " not in out
    assert " \n" not in out and "\n " not in out
    assert out == out.strip()


@given(messy, st.sampled_from(ALL_POLICIES))
def test_kind_and_id_preserved(text, policy):
    el = make_element("Title", text, ordinal=42)
    out = clean_element(el, policy)
    assert (out.kind, out.id, out.metadata) == (el.kind, el.id, el.metadata)
