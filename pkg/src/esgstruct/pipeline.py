"""End-to-end composition of the stages.

``partition`` -> ``prepare`` (clean, caption) -> ``chunk_by_title`` ->
``integrate`` -> ``export``. The CLI subcommands cut this chain at the same
places, so ``partition | chunk`` reproduces the chunks ``process`` builds.
"""

from __future__ import annotations

from pathlib import Path

from .captioning import caption_elements
from .chunking import Chunk, chunk_by_title
from .cleaning import clean_element
from .config import PipelineConfig
from .elements import TEXT_KINDS, Element, ElementKind
from .export import export
from .ingest import LayoutBlock, ingest_blocks, ingest_plaintext, partition
from .integrate import Record, integrate

PLAINTEXT_SUFFIXES = {".txt", ".text"}


def read_blocks(raw: bytes, plaintext: bool) -> list[LayoutBlock]:
    return ingest_plaintext(raw) if plaintext else ingest_blocks(raw)


def is_plaintext_path(path: str | Path) -> bool:
    return Path(path).suffix.lower() in PLAINTEXT_SUFFIXES


def partition_document(
    raw: bytes, plaintext: bool, cfg: PipelineConfig = PipelineConfig()
) -> list[Element]:
    return partition(read_blocks(raw, plaintext), cfg.classifier, cfg.keep_headers)


def prepare(elements: list[Element], cfg: PipelineConfig = PipelineConfig()) -> list[Element]:
    """Drop headers/footers, clean text, caption images, drop empty text."""
    kept = [e for e in elements if e.kind not in (ElementKind.HEADER, ElementKind.FOOTER)]
    cleaned = [clean_element(e, cfg.cleaning) for e in kept]
    captioned = caption_elements(cleaned, cfg.vision, cfg.on_caption_error)
    return [e for e in captioned if e.kind not in TEXT_KINDS or e.text.strip()]


def chunk_elements(elements: list[Element], cfg: PipelineConfig = PipelineConfig()) -> list[Chunk]:
    return chunk_by_title(prepare(elements, cfg), cfg.chunking)


def process_document(
    raw: bytes, plaintext: bool, cfg: PipelineConfig = PipelineConfig()
) -> tuple[list[Chunk], list[Record]]:
    elements = partition_document(raw, plaintext, cfg)
    chunks = chunk_elements(elements, cfg)
    return chunks, integrate(chunks)


def process_bytes(
    raw: bytes, plaintext: bool, fmt: str = "jsonl", cfg: PipelineConfig = PipelineConfig()
) -> bytes:
    _, records = process_document(raw, plaintext, cfg)
    return export(records, fmt)
