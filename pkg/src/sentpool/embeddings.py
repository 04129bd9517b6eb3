"""Embedding corpus: JSONL persistence and a deterministic toy encoder.

The file format is the contract between the segmentation/encoding stages and
training: a header line ``{"dimension": d, "label_count": K}`` followed by one
document per line ``{"id", "label", "token_count", "vectors"}``. Vectors are
unit-norm rows; slightly off-norm rows (32-bit exporters) are re-normalized on
ingest and counted.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Iterable, TextIO

import numpy as np

from .numerics import l2_normalize, standard_normals
from .segmenter import SentenceRecord

_NORM_TOLERANCE = 1e-6


@dataclass
class EmbeddedDocument:
    doc_id: str
    label: int
    token_count: int
    vectors: np.ndarray  # (t, d), unit-norm rows

    def __eq__(self, other):
        if not isinstance(other, EmbeddedDocument):
            return NotImplemented
        return (
            self.doc_id == other.doc_id
            and self.label == other.label
            and self.token_count == other.token_count
            and self.vectors.shape == other.vectors.shape
            and bool(np.array_equal(self.vectors, other.vectors))
        )


@dataclass
class EmbeddingCorpus:
    dimension: int
    label_count: int
    documents: list[EmbeddedDocument] = field(default_factory=list)
    renormalized_count: int = 0  # ingest-time fixups; not part of equality

    def __eq__(self, other):
        if not isinstance(other, EmbeddingCorpus):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and self.label_count == other.label_count
            and self.documents == other.documents
        )


def toy_encode(sentence_text: str, dim: int, seed: int) -> np.ndarray:
    """Deterministic unit vector standing in for a pretrained sentence encoder.

    (text, seed) is hashed into a generator state, dim standard normals are
    drawn, and the result is L2-normalized. Pure function of its inputs.
    """
    if dim < 2:
        raise ValueError("toy encoder requires dimension >= 2")
    digest = hashlib.blake2b(
        sentence_text.encode("utf-8"),
        key=(seed & 0xFFFFFFFFFFFFFFFF).to_bytes(8, "little"),
        digest_size=8,
    ).digest()
    state = int.from_bytes(digest, "little")
    return l2_normalize(standard_normals(state, dim))


def corpus_from_sentences(
    records: Iterable[SentenceRecord], dim: int, seed: int
) -> EmbeddingCorpus:
    """Toy-encode sentence records into a corpus, grouping by document id.

    Records of the same document must be consecutive and in sentence order.
    The document token count is the pre-truncation total when the records
    carry one, otherwise the sum of sentence counts.
    """
    documents: list[EmbeddedDocument] = []
    group: list[SentenceRecord] = []

    def flush():
        if not group:
            return
        vectors = np.stack([toy_encode(r.text, dim, seed) for r in group])
        total = group[0].doc_token_count
        if total is None:
            total = sum(r.token_count for r in group)
        documents.append(
            EmbeddedDocument(
                doc_id=group[0].doc_id, label=group[0].label, token_count=total, vectors=vectors
            )
        )
        group.clear()

    for rec in records:
        if group and rec.doc_id != group[0].doc_id:
            flush()
        group.append(rec)
    flush()

    labels = [d.label for d in documents]
    label_count = max(labels) + 1 if labels else 0
    return EmbeddingCorpus(dimension=dim, label_count=label_count, documents=documents)


def write_corpus(corpus: EmbeddingCorpus, out: TextIO) -> None:
    """Serialize to JSONL; float repr round-trips 64-bit values exactly."""
    out.write(json.dumps({"dimension": corpus.dimension, "label_count": corpus.label_count}) + "\n")
    for doc in corpus.documents:
        record = {
            "id": doc.doc_id,
            "label": doc.label,
            "token_count": doc.token_count,
            "vectors": [[float(x) for x in row] for row in doc.vectors],
        }
        out.write(json.dumps(record) + "\n")


def read_corpus(lines: Iterable[str]) -> EmbeddingCorpus:
    """Parse corpus JSONL, validating dimensions, labels and vector norms."""
    it = iter(enumerate(lines, start=1))
    header = None
    for lineno, line in it:
        if line.strip():
            try:
                header = json.loads(line)
                dimension = int(header["dimension"])
                label_count = int(header["label_count"])
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"line {lineno}: malformed corpus header ({exc})") from exc
            break
    if header is None:
        raise ValueError("corpus file is empty: missing header line")

    corpus = EmbeddingCorpus(dimension=dimension, label_count=label_count)
    for lineno, line in it:
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            doc_id = str(obj["id"])
            label = int(obj["label"])
            token_count = int(obj["token_count"])
            vectors = np.asarray(obj["vectors"], dtype=np.float64)
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"line {lineno}: malformed document record ({exc})") from exc
        if vectors.ndim != 2 or vectors.shape[0] < 1:
            raise ValueError(
                f"line {lineno}: document {doc_id!r} needs a non-empty list of "
                "equal-length vectors"
            )
        if vectors.shape[1] != dimension:
            raise ValueError(
                f"line {lineno}: vector dimension {vectors.shape[1]} does not match "
                f"corpus dimension {dimension}"
            )
        if not np.all(np.isfinite(vectors)):
            raise ValueError(f"line {lineno}: non-finite vector entry")
        if not 0 <= label < label_count:
            raise ValueError(
                f"line {lineno}: label {label} outside [0, {label_count})"
            )
        if token_count < 1:
            raise ValueError(f"line {lineno}: token_count must be positive")
        norms = np.linalg.norm(vectors, axis=1)
        if np.any(norms == 0.0):
            raise ValueError(f"line {lineno}: zero vector cannot be normalized")
        off = np.abs(norms - 1.0) > _NORM_TOLERANCE
        if np.any(off):
            vectors = vectors.copy()
            vectors[off] /= norms[off, None]
            corpus.renormalized_count += int(off.sum())
        corpus.documents.append(
            EmbeddedDocument(doc_id=doc_id, label=label, token_count=token_count, vectors=vectors)
        )
    return corpus
