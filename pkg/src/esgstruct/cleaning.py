"""Text cleaning applied to text-bearing elements before chunking.

Every function here only deletes bullet glyphs, line-break hyphens and
whitespace; other characters survive in order.
"""

from __future__ import annotations

import dataclasses
import re
from dataclasses import dataclass

from .elements import TEXT_KINDS, Element

BULLET_GLYPHS = "•●◦▪·*–—-"
DASH_GLYPHS = "-–—"

_NEWLINES = re.compile(r"\r\n?")
_LINEBREAK_HYPHEN = re.compile(r"(?<=\w)-[^\S\n]*\n[^\S\n]*(?=(\w))")
_PARAGRAPH_BREAK = re.compile(r"\n[^\S\n]*\n(?:[^\S\n]*\n)*")
_SOFT_WRAP = re.compile(r"(?<!\n)\n(?!\n)")
_INLINE_SPACE = re.compile(r"[^\S\n]+")
_SPACE_AT_NEWLINE = re.compile(r" ?\n ?")


def _leading_glyphs(glyphs: str) -> re.Pattern:
    # String start or a blank-line boundary, then any run of glyphs/whitespace.
    run = "[" + re.escape(glyphs) + "]"
    nl = r"(?:\r\n?|\n)"
    return re.compile(r"(\A|" + nl + r"[^\S\r\n]*" + nl + r")\s*" + run + r"(?:\s|" + run + ")*")


_LEADING_BULLETS = _leading_glyphs(BULLET_GLYPHS)
_LEADING_DASHES = _leading_glyphs(DASH_GLYPHS)


@dataclass(frozen=True)
class CleaningPolicy:
    group_broken_paragraphs: bool = True
    clean_bullets: bool = True
    clean_leading_dashes: bool = True
    clean_extra_whitespace: bool = True
    dehyphenate_linebreaks: bool = True


def group_broken_paragraphs(text: str, dehyphenate: bool = True) -> str:
    """Join soft-wrapped lines; keep blank-line paragraph breaks as ``"\\n\\n"``.

    >>> group_broken_paragraphs("sustain-\\nability report")
    'sustainability report'
    """
    text = _NEWLINES.sub("\n", text)
    if dehyphenate:
        text = _LINEBREAK_HYPHEN.sub(
            lambda m: "" if m.group(1).islower() else m.group(0), text
        )
    text = _PARAGRAPH_BREAK.sub("\n\n", text)
    return _SOFT_WRAP.sub(" ", text)


def clean_bullets(text: str) -> str:
    """Drop bullet glyphs (and the whitespace after them) that open the text or a paragraph.

    Consecutive glyphs such as ``"• • x"`` are removed together so that a
    second pass finds nothing left to remove.
    """
    return _LEADING_BULLETS.sub(r"\1", text)


def clean_leading_dashes(text: str) -> str:
    return _LEADING_DASHES.sub(r"\1", text)


def clean_extra_whitespace(text: str) -> str:
    text = _NEWLINES.sub("\n", text)
    text = _INLINE_SPACE.sub(" ", text)
    text = _SPACE_AT_NEWLINE.sub("\n", text)
    return text.strip()


def clean_text(text: str, policy: CleaningPolicy = CleaningPolicy()) -> str:
    if policy.group_broken_paragraphs:
        text = group_broken_paragraphs(text, policy.dehyphenate_linebreaks)
    if policy.clean_bullets:
        text = clean_bullets(text)
    if policy.clean_leading_dashes:
        text = clean_leading_dashes(text)
    if policy.clean_extra_whitespace:
        text = clean_extra_whitespace(text)
    return text


def clean_element(el: Element, policy: CleaningPolicy = CleaningPolicy()) -> Element:
    """Clean a text element; tables, images, headers and page breaks pass through."""
    if el.kind not in TEXT_KINDS:
        return el
    cleaned = clean_text(el.text, policy)
    if cleaned == el.text:
        return el
    return dataclasses.replace(el, text=cleaned)
