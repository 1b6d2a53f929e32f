"""Title-driven sectioning of a cleaned element stream."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Union

from .elements import TEXT_KINDS, ChunkingConfig, Element, ElementKind, effective_soft_limit

SEPARATOR = "\n\n"


@dataclass(frozen=True)
class CompositeChunk:
    text: str
    element_ids: tuple[str, ...]
    page_start: int
    page_end: int
    starts_with_title: bool = False
    title_text: Optional[str] = None


@dataclass(frozen=True)
class TableChunk:
    raw_text: str
    html: str
    element_id: str
    page: int


Chunk = Union[CompositeChunk, TableChunk]


def split_oversize(text: str, limit: int) -> list[str]:
    """Cut ``text`` into pieces of at most ``limit`` characters.

    Each cut falls on the last whitespace character at or before ``limit``
    (that character is dropped, along with whitespace around the cut); when
    no usable whitespace exists the cut is made at ``limit`` exactly.
    """
    pieces = []
    rest = text
    while len(rest) > limit:
        cut = None
        lead = len(rest) - len(rest.lstrip())  # a cut needs text before it
        for i in range(limit, lead, -1):
            if rest[i].isspace():
                cut = i
                break
        if cut is None:
            pieces.append(rest[:limit])
            rest = rest[limit:]
        else:
            pieces.append(rest[:cut].rstrip())
            rest = rest[cut:].lstrip()
        if not rest:
            return pieces
    pieces.append(rest)
    return pieces


@dataclass
class _Section:
    texts: list[str] = field(default_factory=list)
    ids: list[str] = field(default_factory=list)
    pages: list[int] = field(default_factory=list)
    length: int = 0
    title: Optional[str] = None

    def add(self, text: str, eid: str, page: int) -> None:
        self.length += len(text) + (len(SEPARATOR) if self.texts else 0)
        self.texts.append(text)
        self.ids.append(eid)
        self.pages.append(page)

    def length_with(self, text: str) -> int:
        return self.length + len(text) + (len(SEPARATOR) if self.texts else 0)

    def to_chunk(self) -> CompositeChunk:
        return CompositeChunk(
            text=SEPARATOR.join(self.texts),
            element_ids=tuple(self.ids),
            page_start=min(self.pages),
            page_end=max(self.pages),
            starts_with_title=self.title is not None,
            title_text=self.title,
        )


def chunk_by_title(elements: list[Element], cfg: ChunkingConfig = ChunkingConfig()) -> list[Chunk]:
    """Group elements into sections that each open at a Title.

    Tables become standalone chunks. PageBreaks close the open section only
    when ``multipage_sections`` is false and are never emitted. A text element
    that would push the section past the soft limit (``new_after_n_chars``,
    else ``max_characters``) starts a new, untitled section; one longer than
    ``max_characters`` is split at whitespace into chunks of its own.
    Section length counts the ``"\\n\\n"`` separators.
    """
    soft = effective_soft_limit(cfg)
    hard = cfg.max_characters
    chunks: list[Chunk] = []
    section = _Section()

    def close():
        nonlocal section
        if section.texts:
            chunks.append(section.to_chunk())
        section = _Section()

    for el in elements:
        kind = el.kind
        if kind is ElementKind.PAGE_BREAK:
            if not cfg.multipage_sections:
                close()
            continue
        if kind is ElementKind.TABLE:
            close()
            chunks.append(TableChunk(el.text, el.metadata.text_as_html, el.id, el.page))
            continue
        if kind not in TEXT_KINDS:
            raise ValueError(
                f"{el.id}: {kind.value} elements must be filtered or captioned before chunking"
            )

        is_title = kind is ElementKind.TITLE
        if is_title:
            close()
        if len(el.text) > hard:
            close()
            for n, piece in enumerate(split_oversize(el.text, hard)):
                section.add(piece, el.id, el.page)
                if is_title and n == 0:
                    section.title = piece
                close()
            continue
        needed = section.length_with(el.text)
        if section.texts and (needed > soft or needed > hard):
            close()
        if is_title:
            section.title = el.text
        section.add(el.text, el.id, el.page)
    close()

    if cfg.combine_text_under_n_chars > 0:
        chunks = _combine_small(chunks, cfg)
    return chunks


def _combine_small(chunks: list[Chunk], cfg: ChunkingConfig) -> list[Chunk]:
    # A short composite absorbs following composites while the result fits;
    # never across a table, into a titled chunk, or across pages when
    # sections are single-page.
    out: list[Chunk] = []
    for chunk in chunks:
        prev = out[-1] if out else None
        if (
            isinstance(prev, CompositeChunk)
            and isinstance(chunk, CompositeChunk)
            and len(prev.text) < cfg.combine_text_under_n_chars
            and not chunk.starts_with_title
            and len(prev.text) + len(SEPARATOR) + len(chunk.text) <= cfg.max_characters
            and (cfg.multipage_sections or prev.page_end == chunk.page_start)
        ):
            out[-1] = CompositeChunk(
                text=prev.text + SEPARATOR + chunk.text,
                element_ids=prev.element_ids + chunk.element_ids,
                page_start=prev.page_start,
                page_end=max(prev.page_end, chunk.page_end),
                starts_with_title=prev.starts_with_title,
                title_text=prev.title_text,
            )
        else:
            out.append(chunk)
    return out


def chunk_to_dict(chunk: Chunk) -> dict:
    if isinstance(chunk, TableChunk):
        return {
            "type": "table",
            "raw_text": chunk.raw_text,
            "html": chunk.html,
            "page": chunk.page,
            "element_id": chunk.element_id,
        }
    out: dict = {"type": "composite"}
    if chunk.starts_with_title:
        out["title"] = chunk.title_text
    out["text"] = chunk.text
    out["element_ids"] = list(chunk.element_ids)
    out["pages"] = [chunk.page_start, chunk.page_end]
    return out


def chunk_from_dict(data: dict) -> Chunk:
    if data["type"] == "table":
        return TableChunk(data["raw_text"], data["html"], data.get("element_id", ""), data["page"])
    title = data.get("title")
    return CompositeChunk(
        text=data["text"],
        element_ids=tuple(data["element_ids"]),
        page_start=data["pages"][0],
        page_end=data["pages"][1],
        starts_with_title=title is not None,
        title_text=title,
    )


def dumps_chunks(chunks: list[Chunk]) -> str:
    doc = {"chunks": [chunk_to_dict(c) for c in chunks]}
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":")) + "\n"


def loads_chunks(text: str | bytes) -> list[Chunk]:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    return [chunk_from_dict(c) for c in json.loads(text)["chunks"]]
