"""Turn chunks into title/body records."""

from __future__ import annotations

from dataclasses import dataclass

from .chunking import SEPARATOR, Chunk, CompositeChunk, TableChunk


@dataclass(frozen=True)
class Record:
    title: str
    body: str
    page_start: int
    page_end: int
    source_chunk_indices: tuple[int, ...] = ()

    @property
    def source_pages(self) -> tuple[int, int]:
        return (self.page_start, self.page_end)


@dataclass
class _Entry:
    text: str
    titled: bool
    page_start: int
    page_end: int
    indices: list[int]

    def to_record(self) -> Record:
        title, body = "", self.text
        if self.titled:
            title, _, body = self.text.partition(SEPARATOR)
            title = title.replace("\n", " ")
        return Record(title, body, self.page_start, self.page_end, tuple(self.indices))


def integrate(chunks: list[Chunk]) -> list[Record]:
    """Each composite chunk opens an entry; table HTML joins the entry before it.

    A table with nothing before it becomes an untitled entry of its own.
    Entries that began with a titled chunk are split at the first blank
    line into title and body.
    """
    entries: list[_Entry] = []
    for i, chunk in enumerate(chunks):
        if isinstance(chunk, CompositeChunk):
            entries.append(
                _Entry(chunk.text, chunk.starts_with_title, chunk.page_start, chunk.page_end, [i])
            )
        elif isinstance(chunk, TableChunk):
            if entries:
                last = entries[-1]
                last.text += SEPARATOR + chunk.html
                last.page_start = min(last.page_start, chunk.page)
                last.page_end = max(last.page_end, chunk.page)
                last.indices.append(i)
            else:
                entries.append(_Entry(chunk.html, False, chunk.page, chunk.page, [i]))
        else:
            raise TypeError(f"not a chunk: {chunk!r}")
    return [e.to_record() for e in entries]
