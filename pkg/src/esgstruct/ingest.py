"""Input parsing, reading order, header/footer detection and block classification.

Layout detection itself is out of scope: any external detector can emit the
block JSON read by :func:`ingest_blocks`, and the rules below turn those
blocks into typed elements using geometry and typography only.
"""

from __future__ import annotations

import json
import re
import statistics
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .elements import (
    BBox,
    Element,
    ElementKind,
    ElementMetadata,
    ImagePayload,
    element_id,
    validate_bbox,
)
from .tables import TableGrid, TilingError, check_tiling, to_html, to_raw_text

SCHEMA_VERSION = 1
COLUMN_GAP = 0.15

__all__ = [
    "BlockValidationError",
    "ClassifierThresholds",
    "DocumentError",
    "EncodingError",
    "ImagePayload",
    "LayoutBlock",
    "Mark",
    "ParseError",
    "UnsupportedVersionError",
    "classify",
    "detect_headers_footers",
    "ingest_blocks",
    "ingest_plaintext",
    "partition",
    "reading_order",
]


class DocumentError(ValueError):
    """Base class for input documents that cannot be ingested."""


class ParseError(DocumentError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class UnsupportedVersionError(DocumentError):
    pass


class EncodingError(DocumentError):
    pass


class BlockValidationError(DocumentError):
    def __init__(self, index: int, reason: str):
        super().__init__(f"block {index}: {reason}")
        self.index = index


@dataclass(frozen=True)
class LayoutBlock:
    page: int
    bbox: Optional[BBox] = None
    font_size: Optional[float] = None
    kind_hint: Optional[str] = None
    text: Optional[str] = None
    table: Optional[TableGrid] = None
    image: Optional[ImagePayload] = None

    def __post_init__(self):
        if self.page < 1:
            raise ValueError(f"page must be positive, got {self.page}")
        if self.text is None and self.table is None and self.image is None:
            raise ValueError("block carries none of text, table, image")
        if self.kind_hint not in (None, "text", "table", "image"):
            raise ValueError(f"unknown kind_hint {self.kind_hint!r}")
        if self.table is not None and self.kind_hint not in (None, "table"):
            raise ValueError(f"table payload with kind_hint {self.kind_hint!r}")
        if self.image is not None and self.kind_hint not in (None, "image"):
            raise ValueError(f"image payload with kind_hint {self.kind_hint!r}")
        if self.bbox is not None:
            bbox = tuple(float(v) for v in self.bbox)
            validate_bbox(bbox)
            object.__setattr__(self, "bbox", bbox)
        if self.font_size is not None and not self.font_size > 0:
            raise ValueError(f"font_size must be positive, got {self.font_size}")

    @property
    def is_text(self) -> bool:
        return self.table is None and self.image is None


@dataclass(frozen=True)
class ClassifierThresholds:
    header_band: float = 0.08
    footer_band: float = 0.08
    title_max_words: int = 20
    title_min_alpha_ratio: float = 0.5
    title_font_ratio: float = 1.1
    repeat_min_pages: int = 2

    def __post_init__(self):
        for name in ("header_band", "footer_band"):
            value = getattr(self, name)
            if not 0 < value < 0.5:
                raise ValueError(f"{name} must lie in (0, 0.5), got {value}")
        if self.header_band + self.footer_band >= 1:
            raise ValueError("header_band + footer_band must be < 1")
        if self.title_max_words < 1 or self.repeat_min_pages < 1:
            raise ValueError("title_max_words and repeat_min_pages must be positive")


# -- reading input -----------------------------------------------------------


def _block_from_dict(index: int, raw: dict) -> LayoutBlock:
    if not isinstance(raw, dict):
        raise BlockValidationError(index, "block must be a JSON object")
    try:
        table = raw.get("table")
        if table is not None:
            table = TableGrid.from_dict(table)
            check_tiling(table)
        image = raw.get("image")
        if image is not None:
            image = ImagePayload.from_dict(image)
        bbox = raw.get("bbox")
        return LayoutBlock(
            page=int(raw["page"]),
            bbox=tuple(bbox) if bbox is not None else None,
            font_size=raw.get("font_size"),
            kind_hint=raw.get("kind_hint"),
            text=raw.get("text"),
            table=table,
            image=image,
        )
    except TilingError as exc:
        raise BlockValidationError(index, f"invalid table: {exc}") from exc
    except KeyError as exc:
        raise BlockValidationError(index, f"missing field {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise BlockValidationError(index, str(exc)) from exc


def ingest_blocks(raw: bytes) -> list[LayoutBlock]:
    """Parse layout-block JSON into blocks, in file order."""
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"invalid UTF-8: {exc.reason}", exc.start) from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise ParseError(f"malformed JSON: {exc.msg}", offset) from exc
    if not isinstance(doc, dict) or "blocks" not in doc:
        raise DocumentError("expected an object with a 'blocks' array")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise UnsupportedVersionError(f"unsupported schema_version {version!r}")
    return [_block_from_dict(i, b) for i, b in enumerate(doc["blocks"])]


_BLANK_LINE = re.compile(r"\n[^\S\n]*\n")


def ingest_plaintext(raw: bytes) -> list[LayoutBlock]:
    """Split text on blank lines; each form feed starts a new page."""
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise EncodingError(f"invalid UTF-8 at byte {exc.start}") from exc
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    blocks = []
    for page, page_text in enumerate(text.split("\f"), start=1):
        for para in _BLANK_LINE.split(page_text):
            para = para.strip()
            if para:
                blocks.append(LayoutBlock(page=page, kind_hint="text", text=para))
    return blocks


def dump_blocks(blocks: list[LayoutBlock], source: str = "") -> str:
    """Inverse of :func:`ingest_blocks`; used to write fixtures."""
    out = []
    for b in blocks:
        d: dict = {"page": b.page}
        if b.bbox is not None:
            d["bbox"] = list(b.bbox)
        if b.font_size is not None:
            d["font_size"] = b.font_size
        if b.kind_hint is not None:
            d["kind_hint"] = b.kind_hint
        if b.text is not None:
            d["text"] = b.text
        if b.table is not None:
            d["table"] = b.table.to_dict()
        if b.image is not None:
            d["image"] = b.image.to_dict()
        out.append(d)
    doc = {"schema_version": SCHEMA_VERSION, "source": source, "blocks": out}
    return json.dumps(doc, ensure_ascii=False, indent=1) + "\n"


# -- reading order -----------------------------------------------------------


def _column_of(x0_values: list[float], gap: float) -> dict[float, int]:
    columns: dict[float, int] = {}
    col, prev = 0, None
    for x in sorted(set(x0_values)):
        if prev is not None and x - prev > gap:
            col += 1
        columns[x] = col
        prev = x
    return columns


def reading_order(blocks: list[LayoutBlock], column_gap: float = COLUMN_GAP) -> list[LayoutBlock]:
    """Order blocks page by page, column by column, top to bottom.

    Columns come from clustering the left edges on a page: sorted x0 values
    more than ``column_gap`` apart start a new column. Blocks without a bbox
    keep their input order and follow the positioned blocks of their page.
    """
    columns_by_page: dict[int, dict[float, int]] = {}
    for page in {b.page for b in blocks}:
        xs = [b.bbox[0] for b in blocks if b.page == page and b.bbox is not None]
        columns_by_page[page] = _column_of(xs, column_gap)

    def key(item):
        index, b = item
        if b.bbox is None:
            return (b.page, 1, 0, 0.0, 0.0, index)
        x0, y0 = b.bbox[0], b.bbox[1]
        return (b.page, 0, columns_by_page[b.page][x0], y0, x0, index)

    return [b for _, b in sorted(enumerate(blocks), key=key)]


# -- headers and footers -----------------------------------------------------


class Mark(str, Enum):
    BODY = "body"
    HEADER = "header"
    FOOTER = "footer"


_PAGE_NUMBER = re.compile(r"^(?:page\s*)?\d+(?:\s*of\s*\d+)?$", re.IGNORECASE)
_DIGITS = re.compile(r"\d+")


def _band_key(text: str) -> str:
    return _DIGITS.sub("#", " ".join(text.split()))


def detect_headers_footers(
    blocks: list[LayoutBlock], th: ClassifierThresholds = ClassifierThresholds()
) -> list[Mark]:
    """Mark running headers/footers.

    A text block lying entirely inside the top (bottom) band is a header
    (footer) when it looks like a page number, or when its digit-masked text
    recurs in the same band on at least ``repeat_min_pages`` other pages.
    """
    bands: list[Optional[Mark]] = []
    for b in blocks:
        band = None
        if b.is_text and b.text and b.bbox is not None:
            if b.bbox[3] <= th.header_band:
                band = Mark.HEADER
            elif b.bbox[1] >= 1.0 - th.footer_band:
                band = Mark.FOOTER
        bands.append(band)

    pages_seen: dict[tuple[Mark, str], set[int]] = {}
    for b, band in zip(blocks, bands):
        if band is not None:
            pages_seen.setdefault((band, _band_key(b.text)), set()).add(b.page)

    marks = []
    for b, band in zip(blocks, bands):
        if band is None:
            marks.append(Mark.BODY)
            continue
        other_pages = pages_seen[(band, _band_key(b.text))] - {b.page}
        if len(other_pages) >= th.repeat_min_pages or _PAGE_NUMBER.match(b.text.strip()):
            marks.append(band)
        else:
            marks.append(Mark.BODY)
    return marks


# -- classification ----------------------------------------------------------

_ROUND_BULLETS = "•●◦▪"
_LIST_ITEM = re.compile(r"^\s*(?:[" + _ROUND_BULLETS + r"]|[-*–](?=\s)|\d+\.\s)")
_CLAUSE_END = set(".,;:!?")


def _alpha_ratio(text: str) -> float:
    chars = [c for c in text if not c.isspace()]
    if not chars:
        return 0.0
    return sum(c.isalpha() for c in chars) / len(chars)


def _is_title(text: str, font_size, body_font, th: ClassifierThresholds) -> bool:
    stripped = text.strip()
    if not stripped:
        return False
    if len(stripped.split()) > th.title_max_words:
        return False
    if _alpha_ratio(stripped) < th.title_min_alpha_ratio:
        return False
    if stripped[-1] in _CLAUSE_END:
        return False
    if font_size is not None and body_font is not None:
        return font_size >= th.title_font_ratio * body_font
    return True


def table_element(grid: TableGrid, metadata: ElementMetadata) -> Element:
    metadata = ElementMetadata(
        page=metadata.page,
        element_id=metadata.element_id,
        bbox=metadata.bbox,
        font_size=metadata.font_size,
        text_as_html=to_html(grid),
    )
    return Element(ElementKind.TABLE, to_raw_text(grid), metadata, table=grid)


def classify(
    block: LayoutBlock,
    body_font: Optional[float] = None,
    th: ClassifierThresholds = ClassifierThresholds(),
    element_id: str = "e000001",
) -> Element:
    """Assign exactly one element kind to a block.

    Precedence: table, image, list item, title, narrative text, otherwise
    uncategorized. When typography is available (both the block's font size
    and the document body size), a block that fails the title test is
    narrative text.
    """
    metadata = ElementMetadata(
        page=block.page, element_id=element_id, bbox=block.bbox, font_size=block.font_size
    )
    if block.table is not None:
        return table_element(block.table, metadata)
    if block.image is not None:
        return Element(ElementKind.IMAGE, "", metadata, image=block.image)

    text = block.text or ""
    stripped = text.strip()
    if _LIST_ITEM.match(text):
        kind = ElementKind.LIST_ITEM
    elif _is_title(text, block.font_size, body_font, th):
        kind = ElementKind.TITLE
    elif (
        (stripped and stripped[-1] in ".!?")
        or len(stripped.split()) > th.title_max_words
        or (block.font_size is not None and body_font is not None)
    ):
        kind = ElementKind.NARRATIVE_TEXT
    else:
        kind = ElementKind.UNCATEGORIZED_TEXT
    return Element(kind, text, metadata)


def body_font_size(blocks: list[LayoutBlock]) -> Optional[float]:
    sizes = [b.font_size for b in blocks if b.is_text and b.font_size is not None]
    return statistics.median(sizes) if sizes else None


def partition(
    blocks: list[LayoutBlock],
    th: ClassifierThresholds = ClassifierThresholds(),
    keep_headers: bool = False,
) -> list[Element]:
    """Blocks to elements: reading order, header/footer marks, classification.

    A PageBreak element is emitted wherever the page number changes. Ids are
    assigned in reading order before filtering, so an element keeps its id
    whether or not headers are kept.
    """
    ordered = reading_order(blocks)
    marks = detect_headers_footers(ordered, th)
    body_font = body_font_size(ordered)
    elements = []
    ordinal = 0
    current_page = None
    for block, mark in zip(ordered, marks):
        if current_page is not None and block.page != current_page:
            ordinal += 1
            metadata = ElementMetadata(page=block.page, element_id=element_id(ordinal))
            elements.append(Element(ElementKind.PAGE_BREAK, "", metadata))
        current_page = block.page
        ordinal += 1
        eid = element_id(ordinal)
        if mark is Mark.BODY:
            elements.append(classify(block, body_font, th, eid))
        elif keep_headers:
            kind = ElementKind.HEADER if mark is Mark.HEADER else ElementKind.FOOTER
            metadata = ElementMetadata(
                page=block.page, element_id=eid, bbox=block.bbox, font_size=block.font_size
            )
            elements.append(Element(kind, block.text or "", metadata))
    return elements
