"""Linear classifier head, Adam with gradient accumulation, and the frozen-mode
training loop.

Sentence vectors stay fixed throughout; only the attention head and the
classifier learn. Per-batch gradients are means over documents, and
accumulation divides by the total effective batch so that any factorization of
the same effective batch produces the same update.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, asdict
from typing import Callable, TextIO

import numpy as np

from .attention import AttentionHeadParams, AttentionHeadGrads, pool_backward, pool_forward
from .embeddings import EmbeddingCorpus
from .numerics import SplitMix64, init_params, stable_softmax

MODES = ("frozen", "head-with-input-grads")

_ADAM_BETA1 = 0.9
_ADAM_BETA2 = 0.999
_ADAM_EPS = 1e-8


@dataclass
class ClassifierParams:
    weights: np.ndarray  # (K, d)
    bias: np.ndarray  # (K,)

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.float64)
        self.bias = np.asarray(self.bias, dtype=np.float64)
        if self.weights.ndim != 2 or self.bias.shape != (self.weights.shape[0],):
            raise ValueError(
                f"inconsistent classifier shapes: weights {self.weights.shape}, "
                f"bias {self.bias.shape}"
            )
        if not (np.all(np.isfinite(self.weights)) and np.all(np.isfinite(self.bias))):
            raise ValueError("non-finite classifier entries")

    @classmethod
    def initialize(cls, label_count: int, dim: int, seed: int) -> "ClassifierParams":
        return cls(weights=init_params(label_count, dim, seed), bias=np.zeros(label_count))


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 2e-5
    batch_size: int = 16
    accumulation_steps: int = 1
    epochs: int = 50
    seed: int = 0
    mode: str = "frozen"

    def __post_init__(self):
        if self.learning_rate < 0:
            raise ValueError("learning_rate must be >= 0")
        if self.batch_size < 1 or self.accumulation_steps < 1 or self.epochs < 1:
            raise ValueError("batch_size, accumulation_steps and epochs must be >= 1")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")


@dataclass
class AdamState:
    first: dict[str, np.ndarray] = field(default_factory=dict)
    second: dict[str, np.ndarray] = field(default_factory=dict)
    step: int = 0


@dataclass
class EpochMetrics:
    epoch: int
    mean_loss: float
    accuracy: float
    seconds: float


def classify(params: ClassifierParams, pooled: np.ndarray) -> np.ndarray:
    """Logits of the linear head; prediction is the argmax (lowest index wins ties)."""
    v = np.asarray(pooled, dtype=np.float64)
    if v.shape != (params.weights.shape[1],):
        raise ValueError(
            f"vector dimension {v.shape} does not match classifier {params.weights.shape}"
        )
    return params.weights @ v + params.bias


def predict_label(logits: np.ndarray) -> int:
    return int(np.argmax(logits))


def cross_entropy(logits: np.ndarray, label: int) -> tuple[float, np.ndarray]:
    """Softmax cross-entropy via log-sum-exp; returns (loss, d loss/d logits)."""
    z = np.asarray(logits, dtype=np.float64)
    if not 0 <= label < z.shape[0]:
        raise ValueError(f"label {label} outside [0, {z.shape[0]})")
    m = z.max()
    lse = m + np.log(np.exp(z - m).sum())
    grad = stable_softmax(z)
    grad[label] -= 1.0
    return float(lse - z[label]), grad


def adam_step(
    params: dict[str, np.ndarray],
    grads: dict[str, np.ndarray],
    state: AdamState,
    lr: float,
) -> tuple[dict[str, np.ndarray], AdamState]:
    """One Adam update with bias-corrected moments. Returns new params and state."""
    for name, g in grads.items():
        if not np.all(np.isfinite(g)):
            raise ValueError(f"non-finite gradient for tensor {name!r}")
    t = state.step + 1
    new_params: dict[str, np.ndarray] = {}
    new_state = AdamState(step=t)
    for name, p in params.items():
        g = grads[name]
        m = state.first.get(name, np.zeros_like(p))
        v = state.second.get(name, np.zeros_like(p))
        m = _ADAM_BETA1 * m + (1.0 - _ADAM_BETA1) * g
        v = _ADAM_BETA2 * v + (1.0 - _ADAM_BETA2) * g * g
        m_hat = m / (1.0 - _ADAM_BETA1**t)
        v_hat = v / (1.0 - _ADAM_BETA2**t)
        new_params[name] = p - lr * m_hat / (np.sqrt(v_hat) + _ADAM_EPS)
        new_state.first[name] = m
        new_state.second[name] = v
    return new_params, new_state


def _document_gradients(
    head: AttentionHeadParams,
    clf: ClassifierParams,
    doc,
) -> tuple[float, int, dict[str, np.ndarray], np.ndarray]:
    """Forward and backward for one document.

    Returns (loss, predicted label, parameter gradients, input-vector gradients).
    """
    cache = pool_forward(head, doc.vectors)
    logits = classify(clf, cache.pooled)
    loss, d_logits = cross_entropy(logits, doc.label)
    d_weights = np.outer(d_logits, cache.pooled)
    d_pooled = clf.weights.T @ d_logits
    head_grads = pool_backward(head, doc.vectors, cache, d_pooled)
    grads = {
        "attn_transform": head_grads.transform,
        "attn_bias": head_grads.bias,
        "attn_context": head_grads.context,
        "clf_weights": d_weights,
        "clf_bias": d_logits,
    }
    return loss, predict_label(logits), grads, head_grads.sentences


def train(
    corpus: EmbeddingCorpus,
    cfg: TrainConfig = TrainConfig(),
    input_grad_hook: Callable[[str, np.ndarray], None] | None = None,
) -> tuple[AttentionHeadParams, ClassifierParams, list[EpochMetrics]]:
    """Train the attention head and classifier on a frozen corpus.

    Each epoch shuffles documents with the run seed plus the epoch index,
    walks mini-batches of batch_size, and applies one Adam update per
    accumulation group (accumulation_steps micro-batches; gradients are summed
    then divided by the group's document count). In head-with-input-grads mode
    the gradient w.r.t. each document's sentence vectors is handed to
    input_grad_hook; the vectors themselves are never modified.
    """
    if not corpus.documents:
        raise ValueError("cannot train on an empty corpus")
    if corpus.label_count < 2:
        raise ValueError("training requires at least 2 classes")
    d = corpus.dimension
    for doc in corpus.documents:
        if doc.vectors.shape[1] != d:
            raise ValueError(f"document {doc.doc_id!r} dimension != corpus dimension {d}")

    seed_stream = SplitMix64(cfg.seed)
    head = AttentionHeadParams.initialize(d, seed_stream.next_uint64())
    clf = ClassifierParams.initialize(corpus.label_count, d, seed_stream.next_uint64())
    params = {
        "attn_transform": head.transform,
        "attn_bias": head.bias,
        "attn_context": head.context,
        "clf_weights": clf.weights,
        "clf_bias": clf.bias,
    }
    state = AdamState()
    metrics: list[EpochMetrics] = []

    for epoch in range(cfg.epochs):
        started = time.perf_counter()
        order = list(range(len(corpus.documents)))
        SplitMix64(cfg.seed + epoch).shuffle(order)

        epoch_loss = 0.0
        epoch_correct = 0
        group_sums: dict[str, np.ndarray] | None = None
        group_docs = 0
        micro_batches = 0

        def apply_update():
            nonlocal params, state, group_sums, group_docs, micro_batches
            if group_sums is None:
                return
            mean = {k: v / group_docs for k, v in group_sums.items()}
            params, state = adam_step(params, mean, state, cfg.learning_rate)
            group_sums, group_docs, micro_batches = None, 0, 0

        for start in range(0, len(order), cfg.batch_size):
            batch = order[start : start + cfg.batch_size]
            head = AttentionHeadParams(
                params["attn_transform"], params["attn_bias"], params["attn_context"]
            )
            clf = ClassifierParams(params["clf_weights"], params["clf_bias"])
            for doc_index in batch:
                doc = corpus.documents[doc_index]
                loss, predicted, grads, input_grads = _document_gradients(head, clf, doc)
                epoch_loss += loss
                epoch_correct += int(predicted == doc.label)
                if group_sums is None:
                    group_sums = {k: g.copy() for k, g in grads.items()}
                else:
                    for k, g in grads.items():
                        group_sums[k] += g
                group_docs += 1
                if cfg.mode == "head-with-input-grads" and input_grad_hook is not None:
                    input_grad_hook(doc.doc_id, input_grads)
            micro_batches += 1
            if micro_batches == cfg.accumulation_steps:
                apply_update()
        apply_update()  # partial accumulation group at epoch end

        n = len(corpus.documents)
        metrics.append(
            EpochMetrics(
                epoch=epoch,
                mean_loss=epoch_loss / n,
                accuracy=epoch_correct / n,
                seconds=time.perf_counter() - started,
            )
        )

    head = AttentionHeadParams(params["attn_transform"], params["attn_bias"], params["attn_context"])
    clf = ClassifierParams(params["clf_weights"], params["clf_bias"])
    return head, clf, metrics


# ---------------------------------------------------------------------------
# Checkpoint format: one JSON document holding shapes, tensors, and the config
# ---------------------------------------------------------------------------


def save_checkpoint(
    out: TextIO,
    head: AttentionHeadParams,
    clf: ClassifierParams,
    cfg: TrainConfig,
    label_count: int,
) -> None:
    payload = {
        "dimension": head.dim,
        "label_count": label_count,
        "config": asdict(cfg),
        "params": {
            "attn_transform": head.transform.tolist(),
            "attn_bias": head.bias.tolist(),
            "attn_context": head.context.tolist(),
            "clf_weights": clf.weights.tolist(),
            "clf_bias": clf.bias.tolist(),
        },
    }
    json.dump(payload, out)
    out.write("\n")


def load_checkpoint(source: TextIO) -> tuple[AttentionHeadParams, ClassifierParams, TrainConfig, int, int]:
    try:
        payload = json.load(source)
        head = AttentionHeadParams(
            transform=np.asarray(payload["params"]["attn_transform"], dtype=np.float64),
            bias=np.asarray(payload["params"]["attn_bias"], dtype=np.float64),
            context=np.asarray(payload["params"]["attn_context"], dtype=np.float64),
        )
        clf = ClassifierParams(
            weights=np.asarray(payload["params"]["clf_weights"], dtype=np.float64),
            bias=np.asarray(payload["params"]["clf_bias"], dtype=np.float64),
        )
        cfg = TrainConfig(**payload["config"])
        dimension = int(payload["dimension"])
        label_count = int(payload["label_count"])
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed checkpoint ({exc})") from exc
    if head.dim != dimension or clf.weights.shape != (label_count, dimension):
        raise ValueError("checkpoint tensor shapes disagree with recorded dimensions")
    return head, clf, cfg, dimension, label_count
