"""Rule-based sentence segmentation with token-count constraints.

Documents are cleaned of HTML, split at sentence separators, and the pieces
are merged/split until every sentence carries between ``min_tokens`` and
``max_tokens`` tokens. Sentences are dropped whole from the tail once the
document token cap is reached.
"""
from __future__ import annotations

import json
import re
import string
from dataclasses import dataclass, field
from typing import Callable, Iterable, TextIO

SEPARATORS = frozenset({".", "!", "?", "\n"})

_PUNCT = frozenset(string.punctuation)
_TAG_RE = re.compile(r"<!--.*?-->|</?[A-Za-z][^>]*>|<![^>]*>", re.DOTALL)
_ENTITY_RE = re.compile(r"&(amp|lt|gt|quot|#[0-9]+);")
_NAMED_ENTITIES = {"amp": "&", "lt": "<", "gt": ">", "quot": '"'}
_WORD_RE = re.compile(r"\S+")


@dataclass(frozen=True)
class RawDocument:
    doc_id: str
    text: str
    label: int

    def __post_init__(self):
        if not self.doc_id:
            raise ValueError("doc_id must be non-empty")
        if self.label < 0:
            raise ValueError("label must be a non-negative class index")


@dataclass(frozen=True)
class Sentence:
    text: str
    token_count: int
    index: int


@dataclass(frozen=True)
class SegmentConfig:
    min_tokens: int = 5
    max_tokens: int = 250
    doc_token_cap: int = 8192
    separators: frozenset = SEPARATORS

    def __post_init__(self):
        if not (1 <= self.min_tokens < self.max_tokens <= self.doc_token_cap):
            raise ValueError(
                "config requires 1 <= min_tokens < max_tokens <= doc_token_cap, got "
                f"min={self.min_tokens} max={self.max_tokens} cap={self.doc_token_cap}"
            )


def _decode_entity(m: re.Match) -> str:
    body = m.group(1)
    if body.startswith("#"):
        return chr(int(body[1:]))
    return _NAMED_ENTITIES[body]


def strip_html(text: str) -> str:
    """Remove tag-syntax substrings and decode the basic entity references.

    Only ``<tag ...>``, ``</tag>``, comments and declarations are removed; a
    stray ``<`` that never forms tag syntax is left verbatim. Decoded entities
    are &amp; &lt; &gt; &quot; and decimal &#NN;. Everything else is untouched.
    """
    return _ENTITY_RE.sub(_decode_entity, _TAG_RE.sub("", text))


def token_spans(text: str) -> list[tuple[int, int]]:
    """(start, end) spans of tokens: whitespace-delimited words with leading
    and trailing punctuation characters split off as one token each."""
    spans: list[tuple[int, int]] = []
    for m in _WORD_RE.finditer(text):
        start, end = m.start(), m.end()
        lo, hi = start, end
        while lo < hi and text[lo] in _PUNCT:
            spans.append((lo, lo + 1))
            lo += 1
        trailing: list[tuple[int, int]] = []
        while hi > lo and text[hi - 1] in _PUNCT:
            trailing.append((hi - 1, hi))
            hi -= 1
        if lo < hi:
            spans.append((lo, hi))
        spans.extend(reversed(trailing))
    return spans


def count_tokens(text: str) -> int:
    """Default token counter: whitespace words with edge punctuation split off."""
    return len(token_spans(text))


def _split_at_separators(text: str, separators: frozenset) -> list[str]:
    """Contiguous slices of text, each ending at a separator character."""
    parts: list[str] = []
    start = 0
    for i, ch in enumerate(text):
        if ch in separators:
            parts.append(text[start : i + 1])
            start = i + 1
    if start < len(text):
        parts.append(text[start:])
    return parts


def _chunk_sizes(total: int, min_tokens: int, max_tokens: int) -> list[int]:
    """Token counts per chunk for a segment of `total` tokens (> max_tokens).

    Full chunks of max_tokens; a short remainder stands alone if it reaches
    min_tokens, otherwise the last two chunks are rebalanced to
    (max - (min - rem), min) so both stay inside the bounds. When the bounds
    make that impossible (max < 2*min - 1) the remainder is appended to the
    previous chunk.
    """
    full, rem = divmod(total, max_tokens)
    sizes = [max_tokens] * full
    if rem == 0:
        return sizes
    if rem >= min_tokens:
        sizes.append(rem)
    elif max_tokens - (min_tokens - rem) >= min_tokens:
        sizes[-1] = max_tokens - (min_tokens - rem)
        sizes.append(min_tokens)
    else:
        sizes[-1] += rem
    return sizes


def _split_long_segment(text: str, cfg: SegmentConfig) -> list[str]:
    spans = token_spans(text)
    sizes = _chunk_sizes(len(spans), cfg.min_tokens, cfg.max_tokens)
    pieces: list[str] = []
    cursor = 0
    taken = 0
    for k, size in enumerate(sizes):
        taken += size
        cut = len(text) if k == len(sizes) - 1 else spans[taken - 1][1]
        pieces.append(text[cursor:cut])
        cursor = cut
    return pieces


def segment(doc: RawDocument, cfg: SegmentConfig = SegmentConfig()) -> list[Sentence]:
    """Split a document into sentences honoring the token constraints.

    Pipeline: strip HTML; split at separators (separator attached to the
    preceding piece); merge pieces shorter than min_tokens forward (the last
    one backward); hard-split pieces longer than max_tokens at token
    boundaries; drop whole sentences from the tail once the cumulative token
    count would exceed doc_token_cap. If merging leaves nothing (the whole
    document is shorter than min_tokens) one fallback sentence holds the full
    text.
    """
    cleaned = strip_html(doc.text)
    if not cleaned.strip():
        raise ValueError(f"document {doc.doc_id!r} has no text after HTML stripping")

    parts = _split_at_separators(cleaned, cfg.separators)

    # merge-forward pass: accumulate until min_tokens is reached
    merged: list[str] = []
    buffer = ""
    for part in parts:
        buffer += part
        if count_tokens(buffer) >= cfg.min_tokens:
            merged.append(buffer)
            buffer = ""
    if buffer:
        if merged:
            merged[-1] += buffer
        else:
            return [Sentence(text=cleaned.strip(), token_count=count_tokens(cleaned), index=0)]

    # hard-split over-long segments at token boundaries
    pieces: list[str] = []
    for seg in merged:
        if count_tokens(seg) > cfg.max_tokens:
            pieces.extend(_split_long_segment(seg, cfg))
        else:
            pieces.append(seg)

    # enforce the document token cap by dropping whole sentences from the tail
    sentences: list[Sentence] = []
    cumulative = 0
    for piece in pieces:
        n = count_tokens(piece)
        if cumulative + n > cfg.doc_token_cap:
            break
        cumulative += n
        sentences.append(Sentence(text=piece.strip(), token_count=n, index=len(sentences)))
    return sentences


def document_token_count(doc: RawDocument) -> int:
    """Token count of the full cleaned document, before any cap truncation."""
    return count_tokens(strip_html(doc.text))


# ---------------------------------------------------------------------------
# JSONL interfaces: datasets in, sentences out
# ---------------------------------------------------------------------------


def read_documents(lines: Iterable[str]) -> list[RawDocument]:
    """Parse dataset JSONL: one object per line with id, text, label."""
    docs: list[RawDocument] = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            if not isinstance(obj["text"], str):
                raise TypeError("field 'text' must be a string")
            docs.append(RawDocument(doc_id=str(obj["id"]), text=obj["text"], label=int(obj["label"])))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"line {lineno}: malformed document record ({exc})") from exc
    return docs


def write_sentences(
    docs: Iterable[RawDocument],
    out: TextIO,
    cfg: SegmentConfig = SegmentConfig(),
    counter: Callable[[str], int] | None = None,
) -> int:
    """Segment documents and emit sentence JSONL records.

    Each record carries id, index, text, token_count, label, plus
    doc_token_count: the document's pre-truncation total, which downstream
    consumers use for length stratification. Returns the number of sentences
    written.
    """
    written = 0
    for doc in docs:
        total = document_token_count(doc)
        for sent in segment(doc, cfg):
            record = {
                "id": doc.doc_id,
                "index": sent.index,
                "text": sent.text,
                "token_count": sent.token_count,
                "label": doc.label,
                "doc_token_count": total,
            }
            out.write(json.dumps(record, ensure_ascii=False) + "\n")
            written += 1
    return written


@dataclass
class SentenceRecord:
    doc_id: str
    index: int
    text: str
    token_count: int
    label: int
    doc_token_count: int | None = None


def read_sentences(lines: Iterable[str]) -> list[SentenceRecord]:
    """Parse sentence JSONL as written by write_sentences."""
    records: list[SentenceRecord] = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            records.append(
                SentenceRecord(
                    doc_id=str(obj["id"]),
                    index=int(obj["index"]),
                    text=obj["text"],
                    token_count=int(obj["token_count"]),
                    label=int(obj["label"]),
                    doc_token_count=(
                        int(obj["doc_token_count"]) if "doc_token_count" in obj else None
                    ),
                )
            )
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"line {lineno}: malformed sentence record ({exc})") from exc
    return records
