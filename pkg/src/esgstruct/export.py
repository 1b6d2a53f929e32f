"""Record serializers: JSONL, CSV (RFC 4180) and a standalone HTML report."""

from __future__ import annotations

import json
from enum import Enum

from .chunking import SEPARATOR
from .integrate import Record
from .tables import escape


class ExportFormat(str, Enum):
    JSONL = "jsonl"
    CSV = "csv"
    HTML = "html"


CSV_HEADER = "title,body,page_start,page_end\r\n"


def to_jsonl(records: list[Record]) -> bytes:
    lines = [
        json.dumps(
            {"title": r.title, "body": r.body, "pages": [r.page_start, r.page_end]},
            ensure_ascii=False,
            separators=(",", ":"),
        )
        + "\n"
        for r in records
    ]
    return "".join(lines).encode("utf-8")


def _quote(field: str) -> str:
    return '"' + field.replace('"', '""') + '"'


def to_csv(records: list[Record]) -> bytes:
    # Text fields are always quoted, page numbers never; CRLF row endings.
    # Written by hand because the csv module refuses NUL characters.
    rows = [CSV_HEADER]
    for r in records:
        rows.append(f"{_quote(r.title)},{_quote(r.body)},{r.page_start},{r.page_end}\r\n")
    return "".join(rows).encode("utf-8")


def _paragraph(text: str) -> str:
    if text.lstrip().startswith("<table"):
        return text
    return f"<p>{escape(text)}</p>"


def to_html(records: list[Record], title: str = "Structured report") -> bytes:
    out = [
        "<!DOCTYPE html>",
        '<html><head><meta charset="utf-8">'
        f"<title>{escape(title)}</title></head><body>",
    ]
    for r in records:
        out.append("<section>")
        if r.title:
            out.append(f"<h2>{escape(r.title)}</h2>")
        out.extend(_paragraph(p) for p in r.body.split(SEPARATOR) if p)
        out.append("</section>")
    out.append("</body></html>")
    return ("\n".join(out) + "\n").encode("utf-8")


def export(records: list[Record], fmt: ExportFormat | str) -> bytes:
    fmt = ExportFormat(fmt)
    if fmt is ExportFormat.JSONL:
        return to_jsonl(records)
    if fmt is ExportFormat.CSV:
        return to_csv(records)
    return to_html(records)
