"""Dense vector/matrix arithmetic, stable nonlinearities, and seeded initialization.

All math runs in 64-bit floats. Randomness comes from a splitmix64 counter
generator so that identical seeds give bit-identical results regardless of
platform or numpy version.
"""
from __future__ import annotations

import numpy as np

_MASK64 = 0xFFFFFFFFFFFFFFFF
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# Largest double strictly below 1; used to keep tanh inside the open interval.
_TANH_CLIP = np.nextafter(1.0, 0.0)


def as_vector(x) -> np.ndarray:
    """Coerce to a 1-D float64 array, rejecting empty or non-finite input."""
    v = np.asarray(x, dtype=np.float64)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {v.shape}")
    if v.size == 0:
        raise ValueError("vector must have at least one entry")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


def as_matrix(x) -> np.ndarray:
    """Coerce to a 2-D float64 array, rejecting empty or non-finite input."""
    m = np.asarray(x, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if m.size == 0:
        raise ValueError("matrix must have at least one entry")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def matvec(m: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Matrix-vector product m @ x with a shape diagnostic on mismatch."""
    m = np.asarray(m, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if m.ndim != 2 or x.ndim != 1 or m.shape[1] != x.shape[0]:
        raise ValueError(
            f"matvec shape mismatch: matrix {m.shape} cannot multiply vector {x.shape}"
        )
    return m @ x


def tanh_vec(x: np.ndarray) -> np.ndarray:
    """Elementwise tanh, clipped so every output stays strictly inside (-1, 1).

    float64 tanh saturates to exactly +/-1.0 for |x| > ~19; the clip keeps the
    open-interval contract without affecting gradients in any measurable way.
    """
    return np.clip(np.tanh(np.asarray(x, dtype=np.float64)), -_TANH_CLIP, _TANH_CLIP)


def stable_softmax(logits: np.ndarray) -> np.ndarray:
    """Softmax computed with max subtraction; safe for arbitrarily large logits."""
    z = np.asarray(logits, dtype=np.float64)
    if z.ndim != 1 or z.size == 0:
        raise ValueError("softmax requires a non-empty 1-D vector of logits")
    with np.errstate(over="ignore"):
        # the shifted difference may overflow to -inf for extreme logits; exp(-inf)=0
        e = np.exp(z - z.max())
    return e / e.sum()


def l2_normalize(x: np.ndarray) -> np.ndarray:
    """Scale x to unit Euclidean norm. Rejects the zero vector."""
    v = np.asarray(x, dtype=np.float64)
    norm = np.linalg.norm(v)
    if norm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return v / norm


class SplitMix64:
    """Stateful splitmix64 stream over plain Python ints.

    Used where values are drawn one at a time (shuffles, sub-seed derivation).
    Bulk draws go through the vectorized helpers below, which walk the exact
    same output sequence.
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        """Uniform double in the open interval (0, 1)."""
        return ((self.next_uint64() >> 11) + 0.5) * 2.0**-53

    def randbelow(self, n: int) -> int:
        """Unbiased integer in [0, n) via rejection sampling."""
        if n <= 0:
            raise ValueError("randbelow requires n >= 1")
        limit = _MASK64 - (_MASK64 + 1) % n
        while True:
            u = self.next_uint64()
            if u <= limit:
                return u % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]


def splitmix64_stream(seed: int, n: int) -> np.ndarray:
    """First n outputs of the splitmix64 stream as a uint64 array."""
    idx = np.arange(1, n + 1, dtype=np.uint64)
    z = np.uint64(seed & _MASK64) + idx * np.uint64(_GAMMA)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def uniform_open01(seed: int, n: int) -> np.ndarray:
    """n uniform doubles in the open interval (0, 1), bit-reproducible."""
    return ((splitmix64_stream(seed, n) >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def standard_normals(seed: int, n: int) -> np.ndarray:
    """n standard-normal draws via Box-Muller over the splitmix stream."""
    pairs = (n + 1) // 2
    u = uniform_open01(seed, 2 * pairs)
    r = np.sqrt(-2.0 * np.log(u[:pairs]))
    theta = 2.0 * np.pi * u[pairs:]
    return np.concatenate([r * np.cos(theta), r * np.sin(theta)])[:n]


def init_params(rows: int, cols: int, seed: int) -> np.ndarray:
    """Xavier-uniform matrix: entries uniform in (-a, a), a = sqrt(6/(rows+cols)).

    Pure function of (rows, cols, seed); identical seeds give bit-identical
    matrices.
    """
    if rows < 1 or cols < 1:
        raise ValueError("init_params requires rows, cols >= 1")
    bound = np.sqrt(6.0 / (rows + cols))
    u = uniform_open01(seed, rows * cols)
    return ((2.0 * u - 1.0) * bound).reshape(rows, cols)
