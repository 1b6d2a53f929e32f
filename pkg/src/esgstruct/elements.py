"""Typed document elements, their metadata, and the canonical element JSON."""

from __future__ import annotations

import base64
import json
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .tables import TableGrid

SCHEMA_VERSION = 1


class ElementKind(str, Enum):
    TITLE = "Title"
    NARRATIVE_TEXT = "NarrativeText"
    LIST_ITEM = "ListItem"
    TABLE = "Table"
    IMAGE = "Image"
    HEADER = "Header"
    FOOTER = "Footer"
    PAGE_BREAK = "PageBreak"
    UNCATEGORIZED_TEXT = "UncategorizedText"


TEXT_KINDS = frozenset(
    {
        ElementKind.TITLE,
        ElementKind.NARRATIVE_TEXT,
        ElementKind.LIST_ITEM,
        ElementKind.UNCATEGORIZED_TEXT,
    }
)

BBox = tuple[float, float, float, float]


def element_id(ordinal: int) -> str:
    return f"e{ordinal:06d}"


@dataclass(frozen=True)
class ImagePayload:
    media_type: str
    data: bytes
    alt_text: Optional[str] = None

    def __post_init__(self):
        if not self.data:
            raise ValueError("image data must be non-empty")

    def to_dict(self) -> dict:
        out = {
            "media_type": self.media_type,
            "data_base64": base64.b64encode(self.data).decode("ascii"),
        }
        if self.alt_text is not None:
            out["alt_text"] = self.alt_text
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ImagePayload":
        return cls(
            media_type=str(data["media_type"]),
            data=base64.b64decode(data["data_base64"], validate=True),
            alt_text=data.get("alt_text"),
        )


@dataclass(frozen=True)
class ElementMetadata:
    page: int
    element_id: str
    bbox: Optional[BBox] = None
    font_size: Optional[float] = None
    text_as_html: Optional[str] = None

    def __post_init__(self):
        if self.page < 1:
            raise ValueError(f"page must be positive, got {self.page}")
        if self.bbox is not None:
            bbox = tuple(float(v) for v in self.bbox)
            object.__setattr__(self, "bbox", bbox)
            validate_bbox(bbox)
        if self.font_size is not None and not self.font_size > 0:
            raise ValueError(f"font_size must be positive, got {self.font_size}")


def validate_bbox(bbox) -> None:
    if len(bbox) != 4:
        raise ValueError(f"bbox must have 4 coordinates, got {len(bbox)}")
    x0, y0, x1, y1 = bbox
    if not all(0.0 <= v <= 1.0 for v in bbox):
        raise ValueError(f"bbox coordinates must lie in [0, 1]: {bbox}")
    if x0 > x1 or y0 > y1:
        raise ValueError(f"bbox must satisfy x0 <= x1 and y0 <= y1: {bbox}")


@dataclass(frozen=True)
class Element:
    kind: ElementKind
    text: str
    metadata: ElementMetadata
    table: Optional[TableGrid] = None
    image: Optional[ImagePayload] = None

    def __post_init__(self):
        kind = ElementKind(self.kind)
        object.__setattr__(self, "kind", kind)
        is_table = kind is ElementKind.TABLE
        if (self.table is not None) != is_table:
            raise ValueError("table payload is required for, and only for, Table elements")
        if (self.metadata.text_as_html is not None) != is_table:
            raise ValueError("text_as_html is required for, and only for, Table elements")
        if (self.image is not None) != (kind is ElementKind.IMAGE):
            raise ValueError("image payload is required for, and only for, Image elements")

    @property
    def id(self) -> str:
        return self.metadata.element_id

    @property
    def page(self) -> int:
        return self.metadata.page

    def to_dict(self) -> dict:
        md = self.metadata
        out: dict = {"id": md.element_id, "kind": self.kind.value, "page": md.page}
        if md.bbox is not None:
            out["bbox"] = list(md.bbox)
        if md.font_size is not None:
            out["font_size"] = md.font_size
        out["text"] = self.text
        if md.text_as_html is not None:
            out["text_as_html"] = md.text_as_html
        if self.table is not None:
            out["table"] = self.table.to_dict()
        if self.image is not None:
            out["image"] = self.image.to_dict()
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Element":
        bbox = data.get("bbox")
        metadata = ElementMetadata(
            page=int(data["page"]),
            element_id=str(data["id"]),
            bbox=tuple(bbox) if bbox is not None else None,
            font_size=data.get("font_size"),
            text_as_html=data.get("text_as_html"),
        )
        table = data.get("table")
        image = data.get("image")
        return cls(
            kind=ElementKind(data["kind"]),
            text=data.get("text", ""),
            metadata=metadata,
            table=TableGrid.from_dict(table) if table is not None else None,
            image=ImagePayload.from_dict(image) if image is not None else None,
        )


@dataclass(frozen=True)
class ChunkingConfig:
    multipage_sections: bool = True
    combine_text_under_n_chars: int = 0
    new_after_n_chars: Optional[int] = None
    max_characters: int = 4096

    def __post_init__(self):
        if self.max_characters < 1:
            raise ValueError("max_characters must be positive")
        if not 0 <= self.combine_text_under_n_chars <= self.max_characters:
            raise ValueError("combine_text_under_n_chars must be in [0, max_characters]")
        if self.new_after_n_chars is not None and not (
            0 <= self.new_after_n_chars <= self.max_characters
        ):
            raise ValueError("new_after_n_chars must be in [0, max_characters]")


def effective_soft_limit(cfg: ChunkingConfig) -> int:
    if cfg.new_after_n_chars is None:
        return cfg.max_characters
    return cfg.new_after_n_chars


def dumps_elements(elements) -> str:
    """Canonical element JSON: compact, key order fixed, absent optionals omitted."""
    doc = {"schema_version": SCHEMA_VERSION, "elements": [e.to_dict() for e in elements]}
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":")) + "\n"


def loads_elements(text: str | bytes) -> list[Element]:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    doc = json.loads(text)
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ValueError(f"unsupported element schema_version: {version!r}")
    return [Element.from_dict(e) for e in doc["elements"]]
