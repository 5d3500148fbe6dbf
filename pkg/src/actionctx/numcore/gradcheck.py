"""Finite-difference gradient checking.

The oracle evaluates the loss function at float64 precision with central
differences (default step 1e-3) and compares elementwise against the
analytic gradients produced by backward(). Elements where both gradients
are below `zero_floor` are accepted outright, since the relative error of
two near-zero numbers is dominated by difference noise.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .tensor import Tensor, no_grad


def numeric_gradient(
    fn: Callable[..., float],
    arrays: Sequence[np.ndarray],
    index: int,
    step: float = 1e-3,
) -> np.ndarray:
    """Central-difference gradient of fn wrt arrays[index], in float64."""
    arrays = [np.asarray(a, dtype=np.float64).copy() for a in arrays]
    target = arrays[index]
    grad = np.zeros_like(target)
    flat = target.reshape(-1)
    gflat = grad.reshape(-1)
    for i in range(flat.size):
        original = flat[i]
        flat[i] = original + step
        hi = fn(*arrays)
        flat[i] = original - step
        lo = fn(*arrays)
        flat[i] = original
        gflat[i] = (hi - lo) / (2.0 * step)
    return grad


def check_gradients(
    build_loss: Callable[..., Tensor],
    arrays: Sequence[np.ndarray],
    rtol: float = 1e-4,
    step: float = 1e-3,
    zero_floor: float = 1e-6,
) -> float:
    """Compare backward() gradients against central differences.

    `build_loss` maps Tensors (one per input array) to a scalar Tensor.
    Returns the worst elementwise relative error; raises AssertionError
    when it exceeds `rtol`.
    """
    inputs = [Tensor(np.asarray(a, dtype=np.float64), requires_grad=True) for a in arrays]
    loss = build_loss(*inputs)
    loss.backward()

    def eval_loss(*raw):
        with no_grad():
            return build_loss(*[Tensor(r) for r in raw]).item()

    raw_arrays = [t.data for t in inputs]
    worst = 0.0
    for i, tensor in enumerate(inputs):
        analytic = tensor.grad if tensor.grad is not None else np.zeros_like(tensor.data)
        numeric = numeric_gradient(eval_loss, raw_arrays, i, step=step)
        scale = np.maximum(np.abs(analytic), np.abs(numeric))
        active = scale > zero_floor
        if not active.any():
            continue
        rel = np.abs(analytic - numeric)[active] / scale[active]
        worst = max(worst, float(rel.max()))
        if worst > rtol:
            bad = int(np.argmax(rel))
            raise AssertionError(
                f"gradient check failed on input {i}: relative error {rel.max():.3e} "
                f"> {rtol:.1e} (analytic {analytic[active][bad]:.6e}, "
                f"numeric {numeric[active][bad]:.6e})"
            )
    return worst
