"""Central finite-difference oracle used to verify hand-derived gradients.

Independent of the library's backward code: it only calls scalar loss
functions built from forward passes.
"""
from __future__ import annotations

import numpy as np


def finite_difference(loss_fn, tensors: dict[str, np.ndarray], step: float = 1e-6):
    """Numeric d loss / d tensor for every entry of every tensor.

    loss_fn receives the tensors dict and returns a scalar; tensors are
    perturbed one coordinate at a time with central differences.
    """
    grads = {}
    for name, tensor in tensors.items():
        g = np.zeros_like(tensor, dtype=np.float64)
        flat = tensor.reshape(-1)
        gflat = g.reshape(-1)
        for k in range(flat.size):
            keep = flat[k]
            flat[k] = keep + step
            hi = loss_fn(tensors)
            flat[k] = keep - step
            lo = loss_fn(tensors)
            flat[k] = keep
            gflat[k] = (hi - lo) / (2.0 * step)
        grads[name] = g
    return grads


def max_relative_error(analytic: dict[str, np.ndarray], numeric: dict[str, np.ndarray], floor: float = 1e-3) -> float:
    """Largest guarded relative error across all tensors.

    Denominator is floored so that near-zero partials are compared absolutely
    at the floor scale (finite differences carry ~1e-9 absolute noise).
    """
    worst = 0.0
    for name in analytic:
        a, n = analytic[name], numeric[name]
        denom = np.maximum(np.maximum(np.abs(a), np.abs(n)), floor)
        worst = max(worst, float((np.abs(a - n) / denom).max()))
    return worst
