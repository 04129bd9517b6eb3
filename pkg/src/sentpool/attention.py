"""Attention pooling over sentence vectors: forward pass and analytic backward.

A document of t unit-norm sentence vectors s_i is pooled into one vector:

    u_i    = tanh(W s_i + b)          hidden sentence representation
    alpha  = softmax(u_i . context)   relevance against a trainable query
    pooled = sum_i alpha_i s_i

Cost is linear in t: scores are taken against the single context vector, never
between sentence pairs. The backward pass is derived by hand; gradients flow
to all parameters and to the input sentence vectors.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import SplitMix64, init_params, stable_softmax, tanh_vec


@dataclass
class AttentionHeadParams:
    transform: np.ndarray  # (d, d)
    bias: np.ndarray  # (d,)
    context: np.ndarray  # (d,)

    def __post_init__(self):
        self.transform = np.asarray(self.transform, dtype=np.float64)
        self.bias = np.asarray(self.bias, dtype=np.float64)
        self.context = np.asarray(self.context, dtype=np.float64)
        d = self.transform.shape[0] if self.transform.ndim == 2 else -1
        if self.transform.shape != (d, d) or self.bias.shape != (d,) or self.context.shape != (d,):
            raise ValueError(
                "inconsistent head shapes: transform "
                f"{self.transform.shape}, bias {self.bias.shape}, context {self.context.shape}"
            )
        for name, t in (("transform", self.transform), ("bias", self.bias), ("context", self.context)):
            if not np.all(np.isfinite(t)):
                raise ValueError(f"non-finite entries in {name}")

    @property
    def dim(self) -> int:
        return self.bias.shape[0]

    @classmethod
    def initialize(cls, dim: int, seed: int) -> "AttentionHeadParams":
        """Xavier-uniform transform and context, zero bias; deterministic in seed."""
        stream = SplitMix64(seed)
        return cls(
            transform=init_params(dim, dim, stream.next_uint64()),
            bias=np.zeros(dim),
            context=init_params(dim, 1, stream.next_uint64()).ravel(),
        )


@dataclass
class PoolResult:
    pooled: np.ndarray  # (d,)
    alphas: np.ndarray  # (t,)
    hidden: np.ndarray  # (t, d) tanh outputs, cached for the backward pass
    fingerprint: tuple  # identifies the (params, sentences) pair of the forward


@dataclass
class AttentionHeadGrads:
    transform: np.ndarray  # (d, d)
    bias: np.ndarray  # (d,)
    context: np.ndarray  # (d,)
    sentences: np.ndarray  # (t, d) gradient w.r.t. the input vectors


def _as_sentence_matrix(sentences, dim: int) -> np.ndarray:
    s = np.asarray(sentences, dtype=np.float64)
    if s.ndim == 1:
        s = s[None, :]
    if s.ndim != 2 or s.shape[0] < 1:
        raise ValueError("pooling requires at least one sentence vector")
    if s.shape[1] != dim:
        raise ValueError(
            f"sentence dimension {s.shape[1]} does not match head dimension {dim}"
        )
    return s


def _fingerprint(params: AttentionHeadParams, s: np.ndarray) -> tuple:
    return (
        s.shape,
        float(params.transform.sum()),
        float(params.bias.sum()),
        float(params.context.sum()),
        float(s.sum()),
    )


def pool_forward(params: AttentionHeadParams, sentences) -> PoolResult:
    """Pool sentence vectors into one document vector; caches the intermediates."""
    s = _as_sentence_matrix(sentences, params.dim)
    hidden = tanh_vec(s @ params.transform.T + params.bias)
    alphas = stable_softmax(hidden @ params.context)
    pooled = alphas @ s
    return PoolResult(
        pooled=pooled, alphas=alphas, hidden=hidden, fingerprint=_fingerprint(params, s)
    )


def pool_backward(
    params: AttentionHeadParams, sentences, cache: PoolResult, grad_pooled
) -> AttentionHeadGrads:
    """Backpropagate a gradient on the pooled vector through the attention head.

    Chain: d pooled/d alpha_i = s_i; the softmax Jacobian diag(a) - a a^T;
    d score_i/d hidden_i = context and d score_i/d context = hidden_i;
    tanh' = 1 - hidden^2; plus the direct path d pooled/d s_i = alpha_i I.
    """
    s = _as_sentence_matrix(sentences, params.dim)
    grad_pooled = np.asarray(grad_pooled, dtype=np.float64)
    if grad_pooled.shape != (params.dim,):
        raise ValueError(f"upstream gradient shape {grad_pooled.shape} != ({params.dim},)")
    if cache.fingerprint != _fingerprint(params, s):
        raise ValueError(
            "stale cache: PoolResult does not match these parameters and sentences"
        )

    alphas, hidden = cache.alphas, cache.hidden
    d_alpha = s @ grad_pooled
    d_scores = alphas * (d_alpha - float(alphas @ d_alpha))
    d_context = d_scores @ hidden
    d_hidden = np.outer(d_scores, params.context)
    d_pre = d_hidden * (1.0 - hidden * hidden)
    return AttentionHeadGrads(
        transform=d_pre.T @ s,
        bias=d_pre.sum(axis=0),
        context=d_context,
        sentences=alphas[:, None] * grad_pooled[None, :] + d_pre @ params.transform,
    )


def count_head_params(dim: int, label_count: int) -> dict[str, int]:
    """Parameter counts for the attention head plus its linear classifier."""
    if dim < 1:
        raise ValueError("dimension must be >= 1")
    if label_count < 2:
        raise ValueError("classification needs at least 2 labels")
    counts = {
        "transform": dim * dim,
        "bias": dim,
        "context": dim,
        "classifier": label_count * dim + label_count,
    }
    counts["total"] = sum(counts.values())
    return counts
