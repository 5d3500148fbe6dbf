"""Tensor graph engine and primitive ops."""

import numpy as np
import pytest

from actionctx import numcore as nc
from actionctx.numcore import tensor as T


class TestMatmul:
    def test_identity(self):
        x = np.random.default_rng(0).standard_normal((3, 5)).astype(np.float32)
        out = nc.matmul(nc.Tensor(np.eye(3, dtype=np.float32)), nc.Tensor(x))
        np.testing.assert_allclose(out.data, x, rtol=1e-6)

    def test_hand_arithmetic(self):
        a = nc.Tensor([[1.0, 2.0], [3.0, 4.0]])
        b = nc.Tensor([[1.0], [1.0]])
        np.testing.assert_array_equal((a @ b).data, [[3.0], [7.0]])

    def test_grad_of_sum_is_ones_bt(self):
        rng = np.random.default_rng(1)
        a = nc.Tensor(rng.standard_normal((4, 5)).astype(np.float32), requires_grad=True)
        b = nc.Tensor(rng.standard_normal((5, 3)).astype(np.float32), requires_grad=True)
        (a @ b).sum().backward()
        np.testing.assert_allclose(a.grad, np.ones((4, 3)) @ b.data.T, rtol=1e-5)
        err = nc.check_gradients(
            lambda x, y: (x @ y).sum(),
            [rng.standard_normal((4, 5)), rng.standard_normal((5, 3))],
        )
        assert err < 1e-4

    def test_shape_mismatch_names_both_shapes(self):
        with pytest.raises(nc.ShapeError, match=r"\(2, 3\).*\(4, 2\)"):
            nc.matmul(nc.Tensor(np.zeros((2, 3))), nc.Tensor(np.zeros((4, 2))))

    def test_batched(self):
        rng = np.random.default_rng(2)
        a = rng.standard_normal((2, 3, 4, 5))
        b = rng.standard_normal((2, 3, 5, 6))
        out = nc.matmul(nc.Tensor(a), nc.Tensor(b))
        np.testing.assert_allclose(out.data, np.matmul(a, b), rtol=1e-6)
        err = nc.check_gradients(lambda x, y: (x @ y).sum(), [a[0], b[0]])
        assert err < 1e-4

    def test_batched_times_2d_weight(self):
        rng = np.random.default_rng(3)
        err = nc.check_gradients(
            lambda x, w: (x @ w).sum(),
            [rng.standard_normal((2, 3, 4)), rng.standard_normal((4, 6))],
        )
        assert err < 1e-4


class TestBackwardContracts:
    def test_sum_of_squares(self):
        x = nc.Tensor(np.array([1.0, -2.0, 3.0], dtype=np.float32), requires_grad=True)
        (x ** 2.0).sum().backward()
        np.testing.assert_allclose(x.grad, 2.0 * x.data, rtol=1e-6)

    def test_constant_loss_leaves_grad_untouched(self):
        x = nc.Tensor(np.ones(3, dtype=np.float32), requires_grad=True)
        c = nc.Tensor(np.float32(4.0), requires_grad=True)
        (c * 2.0).backward()
        assert x.grad is None  # unreachable from the loss

    def test_repeated_backward_accumulates(self):
        x = nc.Tensor(np.array([2.0], dtype=np.float32), requires_grad=True)
        loss = (x ** 2.0).sum()
        loss.backward()
        loss.backward()
        np.testing.assert_allclose(x.grad, [8.0])

    def test_non_scalar_loss_rejected(self):
        x = nc.Tensor(np.ones(3), requires_grad=True)
        with pytest.raises(nc.ShapeError, match="scalar"):
            (x * 2.0).backward()

    def test_diamond_graph_grad(self):
        # y = x*x + x, both paths must contribute
        x = nc.Tensor(np.array([3.0], dtype=np.float32), requires_grad=True)
        y = x * x + x
        y.sum().backward()
        np.testing.assert_allclose(x.grad, [7.0])

    def test_no_grad_suppresses_graph(self):
        x = nc.Tensor(np.ones(3), requires_grad=True)
        with nc.no_grad():
            y = x * 2.0
        assert not y.requires_grad and y._parents == ()


class TestStructuralOps:
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_reshape_transpose_concat_slice_gradcheck(self, seed):
        rng = np.random.default_rng(seed)

        def build(a, b):
            joined = nc.concat([a.reshape(2, 6), b.transpose((1, 0))], axis=0)
            return (joined[1:, ::2] * joined[1:, ::2]).sum()

        err = nc.check_gradients(
            build, [rng.standard_normal((3, 4)), rng.standard_normal((6, 5))]
        )
        assert err < 1e-4

    def test_take_advanced_indexing(self):
        x = nc.Tensor(np.arange(12, dtype=np.float32).reshape(3, 4), requires_grad=True)
        picked = x[(np.array([0, 2]), np.array([1, 3]))]
        picked.sum().backward()
        expected = np.zeros((3, 4))
        expected[0, 1] = expected[2, 3] = 1.0
        np.testing.assert_array_equal(x.grad, expected)

    def test_take_repeated_index_accumulates(self):
        x = nc.Tensor(np.ones(3, dtype=np.float32), requires_grad=True)
        x[np.array([1, 1, 1])].sum().backward()
        np.testing.assert_array_equal(x.grad, [0.0, 3.0, 0.0])

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_reductions_gradcheck(self, seed):
        rng = np.random.default_rng(seed)
        err = nc.check_gradients(
            lambda x: (x.mean(axis=1) * x.sum(axis=0, keepdims=True).reshape(-1)[:3]).sum(),
            [rng.standard_normal((3, 3))],
        )
        assert err < 1e-4


class TestElementwise:
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_arith_gradcheck(self, seed):
        rng = np.random.default_rng(seed)
        err = nc.check_gradients(
            lambda a, b: (a * b + a - b / 2.0 + (a ** 3.0)).sum(),
            [rng.standard_normal((4, 3)), rng.standard_normal((4, 3))],
        )
        assert err < 1e-4

    def test_broadcast_add_grad(self):
        a = nc.Tensor(np.ones((2, 3), dtype=np.float32), requires_grad=True)
        b = nc.Tensor(np.ones(3, dtype=np.float32), requires_grad=True)
        (a + b).sum().backward()
        np.testing.assert_array_equal(b.grad, [2.0, 2.0, 2.0])

    def test_exp_log_gradcheck(self):
        rng = np.random.default_rng(4)
        err = nc.check_gradients(
            lambda x: (T.log(T.exp(x) + 1.0)).sum(), [rng.standard_normal((5,))]
        )
        assert err < 1e-4

    def test_float32_default_dtype(self):
        assert nc.Tensor([1, 2, 3]).dtype == np.float32
        assert nc.Tensor(np.zeros(2, dtype=np.float64)).dtype == np.float64
