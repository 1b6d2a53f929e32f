"""Image captioning through a vision-completion endpoint.

Captions replace the image at the same position in the element stream. The
``stub`` mode is a deterministic stand-in used for tests and dry runs.
"""

from __future__ import annotations

import base64
import hashlib
import json
import logging
import os
import urllib.error
import urllib.request
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .elements import Element, ElementKind, ElementMetadata

log = logging.getLogger(__name__)

MODES = ("off", "stub", "http")
DEFAULT_PROMPT = "Describe the contents of this image in a few sentences."


class CaptionError(RuntimeError):
    def __init__(self, element_id: str, reason: str):
        super().__init__(f"captioning failed for {element_id}: {reason}")
        self.element_id = element_id


@dataclass(frozen=True)
class VisionRequest:
    prompt: str
    media_type: str
    image_bytes: bytes

    def __post_init__(self):
        if not self.image_bytes:
            raise ValueError("image_bytes must be non-empty")

    def to_json(self, model: str) -> bytes:
        body = {
            "model": model,
            "prompt": self.prompt,
            "image_base64": base64.b64encode(self.image_bytes).decode("ascii"),
            "media_type": self.media_type,
        }
        return json.dumps(body).encode("utf-8")


@dataclass(frozen=True)
class VisionClientConfig:
    mode: str = "off"
    endpoint: Optional[str] = None
    model: str = "gpt-4-vision-preview"
    timeout: float = 60.0
    max_concurrent: int = 4
    prompt_template: str = DEFAULT_PROMPT

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"vision mode must be one of {MODES}, got {self.mode!r}")
        if self.mode == "http" and not self.resolved_endpoint():
            raise ValueError("vision mode 'http' requires an endpoint (or VISION_ENDPOINT)")
        if self.max_concurrent < 1:
            raise ValueError("max_concurrent must be positive")
        if not self.timeout > 0:
            raise ValueError("timeout must be positive")

    def resolved_endpoint(self) -> Optional[str]:
        return os.environ.get("VISION_ENDPOINT") or self.endpoint


def should_caption(el: Element) -> bool:
    """True when the image has no usable embedded text."""
    alt = el.image.alt_text if el.image is not None else None
    return alt is None or not alt.strip()


def stub_caption(media_type: str, data: bytes) -> str:
    digest = hashlib.sha256(data).hexdigest()[:12]
    return f"[image {media_type} {len(data)}B sha256:{digest}]"


def request_caption(req: VisionRequest, cfg: VisionClientConfig, element_id: str = "?") -> str:
    """POST one request to the vision endpoint and return the caption text."""
    headers = {"Content-Type": "application/json"}
    api_key = os.environ.get("VISION_API_KEY")
    if api_key:
        headers["Authorization"] = f"Bearer {api_key}"
    http_req = urllib.request.Request(
        cfg.resolved_endpoint(), data=req.to_json(cfg.model), headers=headers, method="POST"
    )
    try:
        with urllib.request.urlopen(http_req, timeout=cfg.timeout) as resp:
            status = resp.status
            payload = resp.read()
    except urllib.error.HTTPError as exc:
        raise CaptionError(element_id, f"HTTP {exc.code}") from exc
    except (urllib.error.URLError, OSError) as exc:
        raise CaptionError(element_id, str(exc)) from exc
    if status != 200:
        raise CaptionError(element_id, f"HTTP {status}")
    try:
        text = json.loads(payload)["text"]
    except (ValueError, KeyError, TypeError) as exc:
        raise CaptionError(element_id, "response lacks a 'text' field") from exc
    if not isinstance(text, str):
        raise CaptionError(element_id, "'text' is not a string")
    return text


def _as_narrative(el: Element, text: str) -> Element:
    md = el.metadata
    metadata = ElementMetadata(
        page=md.page, element_id=md.element_id, bbox=md.bbox, font_size=md.font_size
    )
    return Element(ElementKind.NARRATIVE_TEXT, text, metadata)


def caption(el: Element, cfg: VisionClientConfig) -> Element:
    """Caption one image; the result is NarrativeText with the image's id and position.

    In ``off`` mode the text is empty and the element is dropped downstream.
    """
    if el.kind is not ElementKind.IMAGE:
        raise ValueError(f"caption() expects an Image element, got {el.kind.value}")
    if cfg.mode == "off":
        return _as_narrative(el, "")
    if cfg.mode == "stub":
        return _as_narrative(el, stub_caption(el.image.media_type, el.image.data))
    req = VisionRequest(cfg.prompt_template, el.image.media_type, el.image.data)
    return _as_narrative(el, request_caption(req, cfg, el.id))


def caption_elements(
    elements: list[Element], cfg: VisionClientConfig, on_error: str = "stub"
) -> list[Element]:
    """Replace every Image in ``elements`` with text, keeping positions.

    Images carrying embedded (alt) text become that text verbatim without a
    request. Captions that come back empty are dropped. ``on_error`` decides
    what a failed request does: ``"fail"`` re-raises the CaptionError,
    ``"stub"`` substitutes the stub caption.
    """
    if on_error not in ("fail", "stub"):
        raise ValueError(f"on_error must be 'fail' or 'stub', got {on_error!r}")
    out: list[Optional[Element]] = list(elements)
    pending = []
    for i, el in enumerate(elements):
        if el.kind is not ElementKind.IMAGE:
            continue
        if should_caption(el):
            pending.append(i)
        else:
            out[i] = _as_narrative(el, el.image.alt_text)

    def run(i: int) -> Element:
        el = elements[i]
        try:
            return caption(el, cfg)
        except CaptionError as exc:
            if on_error == "fail":
                raise
            log.warning("%s; using stub caption", exc)
            return _as_narrative(el, stub_caption(el.image.media_type, el.image.data))

    if cfg.mode == "http" and len(pending) > 1:
        with ThreadPoolExecutor(max_workers=cfg.max_concurrent) as pool:
            results = list(pool.map(run, pending))
    else:
        results = [run(i) for i in pending]
    for i, captioned in zip(pending, results):
        out[i] = captioned if captioned.text.strip() else None
    return [el for el in out if el is not None]

