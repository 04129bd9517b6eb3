import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sentpool.numerics import (
    SplitMix64,
    init_params,
    l2_normalize,
    matvec,
    stable_softmax,
    standard_normals,
    tanh_vec,
    uniform_open01,
)


class TestMatvec:
    def test_identity(self):
        np.testing.assert_array_equal(matvec(np.eye(3), [1.0, 2.0, 3.0]), [1.0, 2.0, 3.0])

    def test_zero_matrix(self):
        np.testing.assert_array_equal(matvec(np.zeros((2, 2)), [5.0, 7.0]), [0.0, 0.0])

    def test_hand_arithmetic(self):
        # [[1,2],[3,4]] @ [1,1]: row sums 1+2=3, 3+4=7
        np.testing.assert_array_equal(matvec([[1.0, 2.0], [3.0, 4.0]], [1.0, 1.0]), [3.0, 7.0])

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError, match="shape"):
            matvec(np.eye(3), [1.0, 2.0])

    def test_linearity(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            m = rng.normal(size=(4, 6))
            x, y = rng.normal(size=6), rng.normal(size=6)
            a, b = rng.normal(), rng.normal()
            lhs = matvec(m, a * x + b * y)
            rhs = a * matvec(m, x) + b * matvec(m, y)
            np.testing.assert_allclose(lhs, rhs, atol=1e-10)


class TestTanh:
    def test_zero(self):
        np.testing.assert_array_equal(tanh_vec([0.0, 0.0]), [0.0, 0.0])

    def test_reference_value(self):
        # math.tanh is the independent reference for the implementation
        np.testing.assert_allclose(tanh_vec([1.0]), [math.tanh(1.0)], rtol=0, atol=1e-15)

    def test_odd_symmetry(self):
        np.testing.assert_array_equal(tanh_vec([-1.0]), -tanh_vec([1.0]))

    def test_strictly_inside_unit_interval(self):
        # float64 tanh saturates to exactly 1.0 near |x|=19; the contract does not
        out = tanh_vec([20.0, 1000.0, -1e300, 0.3])
        assert np.all(np.abs(out) < 1.0)


class TestSoftmax:
    def test_uniform_logits(self):
        np.testing.assert_allclose(stable_softmax([0.0, 0.0, 0.0]), [1 / 3] * 3, atol=1e-15)

    def test_singleton(self):
        np.testing.assert_array_equal(stable_softmax([123.4]), [1.0])

    def test_two_logit_value(self):
        # mpmath 50-digit evaluation of exp(x)/(exp(x)+1) at x=0.761594
        out = stable_softmax([0.761594, 0.0])
        np.testing.assert_allclose(
            out, [0.681699708354431876628, 0.318300291645568123372], atol=1e-12
        )

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            stable_softmax([])

    def test_no_overflow_on_huge_logits(self):
        out = stable_softmax([1e308, 0.0, -1e308])
        assert np.all(np.isfinite(out))
        assert out[0] == 1.0

    @given(
        st.lists(st.floats(min_value=-100, max_value=100), min_size=1, max_size=20),
        st.floats(min_value=-50, max_value=50),
    )
    @settings(max_examples=200, deadline=None)
    def test_sums_to_one_and_shift_invariant(self, logits, shift):
        base = stable_softmax(logits)
        assert abs(base.sum() - 1.0) <= 1e-12
        assert np.all(base > 0)
        shifted = stable_softmax(np.asarray(logits) + shift)
        np.testing.assert_allclose(shifted, base, atol=1e-12)

    def test_permutation_equivariance(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            x = rng.normal(size=rng.integers(1, 12))
            perm = rng.permutation(x.size)
            np.testing.assert_allclose(
                stable_softmax(x[perm]), stable_softmax(x)[perm], atol=1e-15
            )


class TestL2Normalize:
    def test_3_4_5(self):
        np.testing.assert_allclose(l2_normalize([3.0, 4.0]), [0.6, 0.8], atol=1e-15)

    def test_already_unit(self):
        np.testing.assert_array_equal(l2_normalize([1.0, 0.0, 0.0]), [1.0, 0.0, 0.0])

    def test_inverse_sqrt2(self):
        np.testing.assert_allclose(
            l2_normalize([2.0, 2.0]), [0.7071067811865476] * 2, atol=1e-15
        )

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            l2_normalize([0.0, 0.0])

    def test_unit_norm_and_direction(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            x = rng.normal(size=rng.integers(1, 20))
            if np.linalg.norm(x) == 0:
                continue
            n = l2_normalize(x)
            assert abs(np.linalg.norm(n) - 1.0) <= 1e-12
            cos = float(np.dot(n, x) / np.linalg.norm(x))
            assert cos == pytest.approx(1.0, abs=1e-12)


class TestInitParams:
    def test_determinism(self):
        a = init_params(2, 2, seed=7)
        b = init_params(2, 2, seed=7)
        np.testing.assert_array_equal(a, b)

    def test_different_seeds_differ(self):
        assert not np.array_equal(init_params(4, 4, seed=1), init_params(4, 4, seed=2))

    def test_xavier_bound(self):
        for rows, cols, seed in [(3, 5, 0), (16, 16, 9), (768, 768, 4)]:
            m = init_params(rows, cols, seed)
            assert np.all(np.abs(m) < math.sqrt(6.0 / (rows + cols)))

    def test_large_matrix_mean_near_zero(self):
        m = init_params(768, 768, seed=123)
        assert abs(m.mean()) < 0.01

    def test_invalid_shape_rejected(self):
        with pytest.raises(ValueError):
            init_params(0, 3, seed=1)


class TestSplitMix:
    def test_stream_matches_stateful(self):
        s = SplitMix64(42)
        sequential = [s.next_uint64() for _ in range(10)]
        vectorized = [int(v) for v in __import__("sentpool.numerics", fromlist=["x"]).splitmix64_stream(42, 10)]
        assert sequential == vectorized

    def test_uniform_range(self):
        u = uniform_open01(99, 10_000)
        assert np.all(u > 0.0) and np.all(u < 1.0)

    def test_shuffle_is_permutation(self):
        items = list(range(100))
        SplitMix64(3).shuffle(items)
        assert sorted(items) == list(range(100))
        again = list(range(100))
        SplitMix64(3).shuffle(again)
        assert again == items

    def test_normals_moments(self):
        z = standard_normals(17, 200_000)
        assert abs(z.mean()) < 0.01
        assert abs(z.std() - 1.0) < 0.01
