"""Command-line interface: ``partition``, ``chunk`` and ``process``.

Exit codes: 0 success, 1 pipeline error, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .captioning import MODES, CaptionError
from .chunking import dumps_chunks
from .config import ConfigError, PipelineConfig, load_config
from .elements import dumps_elements, loads_elements
from .export import ExportFormat, export
from .ingest import DocumentError
from .integrate import integrate
from .pipeline import chunk_elements, is_plaintext_path, partition_document

log = logging.getLogger("esgstruct")

EXIT_OK, EXIT_PIPELINE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_input(path: str) -> bytes:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such input: {path}")
    try:
        return p.read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _write_output(path: str | None, data: bytes) -> None:
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc


def _nonnegative(value: str) -> int:
    n = int(value)
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return n


def _positive(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return n


def _add_config_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="PATH", help="TOML pipeline config")


def _add_chunk_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-characters", type=_positive, metavar="N")
    p.add_argument("--new-after", type=_nonnegative, metavar="N")
    p.add_argument("--combine-under", type=_nonnegative, metavar="N")
    p.add_argument("--no-multipage", action="store_true", help="close sections at page breaks")
    p.add_argument("--caption-images", choices=MODES, help="image captioning mode")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="esgstruct", description="Turn report layouts into title/body records."
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="layout blocks or plaintext -> element JSON")
    p.add_argument("input")
    p.add_argument("-o", "--output", metavar="PATH")
    p.add_argument("--keep-headers", action="store_true", default=None)
    _add_config_flag(p)

    p = sub.add_parser("chunk", help="element JSON -> chunk JSON")
    p.add_argument("input")
    p.add_argument("-o", "--output", metavar="PATH")
    _add_chunk_flags(p)
    _add_config_flag(p)

    p = sub.add_parser("process", help="full pipeline to jsonl/csv/html")
    p.add_argument("inputs", nargs="+", metavar="input")
    p.add_argument("-o", "--output", metavar="PATH",
                   help="output file (a directory when several inputs are given)")
    p.add_argument("--format", choices=[f.value for f in ExportFormat], default="jsonl")
    p.add_argument("--dump-chunks", metavar="PATH", help="also write the intermediate chunk JSON")
    p.add_argument("--jobs", type=_positive, default=1, metavar="N")
    p.add_argument("--keep-headers", action="store_true", default=None)
    _add_chunk_flags(p)
    _add_config_flag(p)
    return parser


def resolve_config(args: argparse.Namespace) -> PipelineConfig:
    cfg = load_config(getattr(args, "config", None))
    chunk_overrides = {}
    if getattr(args, "max_characters", None) is not None:
        chunk_overrides["max_characters"] = args.max_characters
    if getattr(args, "new_after", None) is not None:
        chunk_overrides["new_after_n_chars"] = args.new_after
    if getattr(args, "combine_under", None) is not None:
        chunk_overrides["combine_text_under_n_chars"] = args.combine_under
    if getattr(args, "no_multipage", False):
        chunk_overrides["multipage_sections"] = False
    changes = {}
    try:
        if chunk_overrides:
            changes["chunking"] = dataclasses.replace(cfg.chunking, **chunk_overrides)
        if getattr(args, "caption_images", None) is not None:
            changes["vision"] = dataclasses.replace(cfg.vision, mode=args.caption_images)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if getattr(args, "keep_headers", None):
        changes["keep_headers"] = True
    return dataclasses.replace(cfg, **changes) if changes else cfg


def cmd_partition(args: argparse.Namespace, cfg: PipelineConfig) -> int:
    raw = _read_input(args.input)
    elements = partition_document(raw, is_plaintext_path(args.input), cfg)
    _write_output(args.output, dumps_elements(elements).encode("utf-8"))
    return EXIT_OK


def cmd_chunk(args: argparse.Namespace, cfg: PipelineConfig) -> int:
    raw = _read_input(args.input)
    try:
        elements = loads_elements(raw)
    except (ValueError, KeyError, TypeError) as exc:
        raise DocumentError(f"{args.input}: not canonical element JSON: {exc}") from exc
    chunks = chunk_elements(elements, cfg)
    _write_output(args.output, dumps_chunks(chunks).encode("utf-8"))
    return EXIT_OK


def _process_one(path: str, cfg: PipelineConfig, fmt: str) -> tuple[bytes, bytes]:
    raw = _read_input(path)
    elements = partition_document(raw, is_plaintext_path(path), cfg)
    chunks = chunk_elements(elements, cfg)
    return export(integrate(chunks), fmt), dumps_chunks(chunks).encode("utf-8")


def cmd_process(args: argparse.Namespace, cfg: PipelineConfig) -> int:
    inputs = args.inputs
    for path in inputs:
        if not Path(path).is_file():
            raise UsageError(f"no such input: {path}")
    if len(inputs) == 1:
        output, chunk_json = _process_one(inputs[0], cfg, args.format)
        log.info("%s: wrote %d bytes of %s", inputs[0], len(output), args.format)
        if args.dump_chunks:
            _write_output(args.dump_chunks, chunk_json)
        _write_output(args.output, output)
        return EXIT_OK

    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_process_one, inputs, [cfg] * len(inputs),
                                    [args.format] * len(inputs)))
    else:
        results = [_process_one(p, cfg, args.format) for p in inputs]

    for dest in (args.output, args.dump_chunks):
        if dest is not None:
            Path(dest).mkdir(parents=True, exist_ok=True)
    for path, (output, chunk_json) in zip(inputs, results):
        log.info("%s: wrote %d bytes of %s", path, len(output), args.format)
        stem = Path(path).stem
        if args.dump_chunks:
            _write_output(str(Path(args.dump_chunks) / f"{stem}.chunks.json"), chunk_json)
        if args.output:
            _write_output(str(Path(args.output) / f"{stem}.{args.format}"), output)
        else:
            _write_output(None, output)
    return EXIT_OK


COMMANDS = {"partition": cmd_partition, "chunk": cmd_chunk, "process": cmd_process}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command](args, cfg)
    except (UsageError, ConfigError, OSError) as exc:
        print(f"esgstruct: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DocumentError, CaptionError, ValueError) as exc:
        print(f"esgstruct: error: {exc}", file=sys.stderr)
        return EXIT_PIPELINE


if __name__ == "__main__":
    sys.exit(main())
