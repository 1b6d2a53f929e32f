"""Structure report documents into title/body records.

Typical use::

    from esgstruct import partition_document, chunk_elements, integrate, export

    elements = partition_document(raw_bytes, plaintext=False)
    records = integrate(chunk_elements(elements))
    export(records, "jsonl")
"""

from .captioning import CaptionError, VisionClientConfig, caption, caption_elements, should_caption
from .chunking import CompositeChunk, TableChunk, chunk_by_title, dumps_chunks, loads_chunks
from .cleaning import CleaningPolicy, clean_element, clean_text
from .config import ConfigError, PipelineConfig, load_config
from .elements import (
    ChunkingConfig,
    Element,
    ElementKind,
    ElementMetadata,
    ImagePayload,
    dumps_elements,
    effective_soft_limit,
    loads_elements,
)
from .export import ExportFormat, export
from .ingest import (
    ClassifierThresholds,
    DocumentError,
    LayoutBlock,
    classify,
    detect_headers_footers,
    ingest_blocks,
    ingest_plaintext,
    partition,
    reading_order,
)
from .integrate import Record, integrate
from .pipeline import chunk_elements, partition_document, prepare, process_bytes, process_document
from .tables import Cell, TableGrid, TilingError, to_html, to_raw_text

__version__ = "0.1.0"
