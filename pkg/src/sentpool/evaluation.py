"""Length-stratified accuracy reports and dataset statistics."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .attention import AttentionHeadParams, pool_forward
from .embeddings import EmbeddingCorpus
from .segmenter import RawDocument, count_tokens, strip_html
from .trainer import ClassifierParams, classify, predict_label

DEFAULT_LENGTH_THRESHOLD = 512


@dataclass
class EvalReport:
    threshold: int
    n_all: int
    n_short: int
    n_long: int
    correct_all: int
    correct_short: int
    correct_long: int

    @property
    def acc_all(self) -> float:
        return self.correct_all / self.n_all

    @property
    def acc_short(self) -> float | None:
        return self.correct_short / self.n_short if self.n_short else None

    @property
    def acc_long(self) -> float | None:
        return self.correct_long / self.n_long if self.n_long else None

    def to_json_dict(self) -> dict:
        out = {
            "threshold": self.threshold,
            "n_all": self.n_all,
            "n_short": self.n_short,
            "n_long": self.n_long,
            "acc_all": self.acc_all,
        }
        if self.acc_short is not None:
            out["acc_short"] = self.acc_short
        if self.acc_long is not None:
            out["acc_long"] = self.acc_long
        return out

    def to_text(self) -> str:
        """Aligned table; absent strata render as a dash."""

        def cell(acc):
            return f"{acc:.4f}" if acc is not None else "-"

        rows = [
            ("stratum", "docs", "accuracy"),
            ("all", str(self.n_all), cell(self.acc_all)),
            (f"<={self.threshold}", str(self.n_short), cell(self.acc_short)),
            (f">{self.threshold}", str(self.n_long), cell(self.acc_long)),
        ]
        widths = [max(len(r[i]) for r in rows) for i in range(3)]
        return "\n".join(
            "  ".join(col.ljust(w) for col, w in zip(row, widths)).rstrip() for row in rows
        )


def evaluate(
    head: AttentionHeadParams,
    clf: ClassifierParams,
    corpus: EmbeddingCorpus,
    threshold: int = DEFAULT_LENGTH_THRESHOLD,
) -> EvalReport:
    """Accuracy over all documents and over the <=threshold / >threshold strata.

    Stratification uses each document's stored token count (the total at
    segmentation time, before any cap truncation).
    """
    if not corpus.documents:
        raise ValueError("cannot evaluate an empty corpus")
    if corpus.dimension != head.dim or clf.weights.shape[1] != head.dim:
        raise ValueError(
            f"model dimension {head.dim} does not match corpus dimension {corpus.dimension}"
        )
    report = EvalReport(threshold, 0, 0, 0, 0, 0, 0)
    for doc in corpus.documents:
        predicted = predict_label(classify(clf, pool_forward(head, doc.vectors).pooled))
        hit = int(predicted == doc.label)
        long_doc = doc.token_count > threshold
        report.n_all += 1
        report.correct_all += hit
        if long_doc:
            report.n_long += 1
            report.correct_long += hit
        else:
            report.n_short += 1
            report.correct_short += hit
    return report


@dataclass
class DatasetStats:
    doc_count: int
    long_doc_count: int
    mean_tokens: float | None
    max_tokens: int | None
    label_count: int

    def to_json_dict(self) -> dict:
        out = {
            "doc_count": self.doc_count,
            "long_doc_count": self.long_doc_count,
            "label_count": self.label_count,
        }
        if self.mean_tokens is not None:
            out["mean_tokens"] = self.mean_tokens
        if self.max_tokens is not None:
            out["max_tokens"] = self.max_tokens
        return out


def dataset_stats(
    docs: Iterable[RawDocument],
    counter: Callable[[str], int] | None = None,
    long_threshold: int = DEFAULT_LENGTH_THRESHOLD,
) -> DatasetStats:
    """Document counts and token statistics under the supplied token counter.

    The default counter is the whitespace+punctuation rule; pass a subword
    counter to reproduce tokenizer-based statistics.
    """
    counter = counter or (lambda text: count_tokens(strip_html(text)))
    counts = []
    labels = set()
    for doc in docs:
        counts.append(counter(doc.text))
        labels.add(doc.label)
    if not counts:
        return DatasetStats(0, 0, None, None, 0)
    return DatasetStats(
        doc_count=len(counts),
        long_doc_count=sum(1 for c in counts if c > long_threshold),
        mean_tokens=sum(counts) / len(counts),
        max_tokens=max(counts),
        label_count=len(labels),
    )
