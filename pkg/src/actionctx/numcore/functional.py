"""Neural-network operations built on the tensor graph.

Each op here has a fused forward/backward pair rather than being composed
from primitive graph nodes; this keeps graphs small and the backward
formulas explicit enough to verify against finite differences.
"""

from __future__ import annotations

import numpy as np
from scipy.special import erf

from .tensor import ShapeError, Tensor, _make, as_tensor, take, reduce_sum, mul, log

_INV_SQRT2 = 0.7071067811865476
_INV_SQRT2PI = 0.3989422804014327


def softmax(x, axis: int = -1) -> Tensor:
    """Numerically stable softmax along `axis` (max-subtraction)."""
    x = as_tensor(x)
    shifted = x.data - x.data.max(axis=axis, keepdims=True)
    e = np.exp(shifted)
    y = e / e.sum(axis=axis, keepdims=True)

    def backward(grad):
        inner = (grad * y).sum(axis=axis, keepdims=True)
        return (y * (grad - inner),)

    return _make(y, (x,), backward)


def log_softmax(x, axis: int = -1) -> Tensor:
    x = as_tensor(x)
    shifted = x.data - x.data.max(axis=axis, keepdims=True)
    out = shifted - np.log(np.exp(shifted).sum(axis=axis, keepdims=True))

    def backward(grad):
        soft = np.exp(out)
        return (grad - soft * grad.sum(axis=axis, keepdims=True),)

    return _make(out, (x,), backward)


def layer_norm(x, gain, bias, eps: float = 1e-5) -> Tensor:
    """Normalize the last axis to zero mean, unit variance, then affine."""
    x, gain, bias = as_tensor(x), as_tensor(gain), as_tensor(bias)
    width = x.shape[-1]
    if gain.shape != (width,) or bias.shape != (width,):
        raise ShapeError(
            f"layer_norm gain/bias must have shape ({width},), got {gain.shape} and {bias.shape}"
        )
    mean = x.data.mean(axis=-1, keepdims=True)
    centred = x.data - mean
    var = (centred * centred).mean(axis=-1, keepdims=True)
    inv = 1.0 / np.sqrt(var + eps)
    xhat = centred * inv
    out = xhat * gain.data + bias.data

    def backward(grad):
        gx = ggain = gbias = None
        if x.requires_grad:
            gh = grad * gain.data
            gx = inv * (
                gh
                - gh.mean(axis=-1, keepdims=True)
                - xhat * (gh * xhat).mean(axis=-1, keepdims=True)
            )
        if gain.requires_grad:
            ggain = (grad * xhat).reshape(-1, width).sum(axis=0)
        if bias.requires_grad:
            gbias = grad.reshape(-1, width).sum(axis=0)
        return gx, ggain, gbias

    return _make(out, (x, gain, bias), backward)


def gelu(x) -> Tensor:
    """Gaussian error linear unit, exact erf form."""
    x = as_tensor(x)
    cdf = 0.5 * (1.0 + erf(x.data * _INV_SQRT2))
    out = (x.data * cdf).astype(x.dtype)

    def backward(grad):
        pdf = np.exp(-0.5 * x.data * x.data) * _INV_SQRT2PI
        return (grad * (cdf + x.data * pdf),)

    return _make(out, (x,), backward)


def dropout(x, p: float, rng: np.random.Generator, train: bool) -> Tensor:
    """Inverted dropout: identity in eval mode, mean-preserving in train mode."""
    if not train or p <= 0.0:
        return as_tensor(x)
    if not 0.0 <= p < 1.0:
        raise ValueError(f"dropout rate must be in [0, 1), got {p}")
    x = as_tensor(x)
    scale = 1.0 / (1.0 - p)
    mask = (rng.random(x.shape) >= p).astype(x.dtype) * np.asarray(scale, dtype=x.dtype)
    out = x.data * mask

    def backward(grad):
        return (grad * mask,)

    return _make(out, (x,), backward)


def masked_fill(x, keep: np.ndarray, value: float) -> Tensor:
    """Replace entries where `keep` is False with `value` (no grad there)."""
    x = as_tensor(x)
    keep = np.asarray(keep, dtype=bool)
    out = np.where(keep, x.data, np.asarray(value, dtype=x.dtype))

    def backward(grad):
        return (np.where(keep, grad, 0.0),)

    return _make(out, (x,), backward)


def embedding(table, ids: np.ndarray) -> Tensor:
    """Row gather from an embedding table; gradients scatter-add back."""
    ids = np.asarray(ids)
    if ids.size and (ids.min() < 0 or ids.max() >= as_tensor(table).shape[0]):
        raise IndexError(
            f"embedding ids out of range [0, {as_tensor(table).shape[0]}): "
            f"min={ids.min()}, max={ids.max()}"
        )
    return take(as_tensor(table), ids)


def cross_entropy(logits, targets, weights=None, reduction: str = "mean") -> Tensor:
    """Negative log-likelihood of `targets` under softmax of `logits`.

    `logits` is (N, C). `targets` is either an int vector of class indices
    or a float array of per-row target distributions (rows may be scaled,
    which weights that row's contribution; the loss is linear in the
    target). `weights`, when given, multiplies each row's loss. Reduction
    "mean" divides the weighted sum by N; "sum" does not.
    """
    logits = as_tensor(logits)
    if logits.ndim != 2:
        raise ShapeError(f"cross_entropy expects (N, C) logits, got {logits.shape}")
    n, c = logits.shape
    ls = log_softmax(logits, axis=-1)
    targets_arr = np.asarray(targets)
    if np.issubdtype(targets_arr.dtype, np.integer):
        if targets_arr.shape != (n,):
            raise ShapeError(
                f"cross_entropy targets must have shape ({n},), got {targets_arr.shape}"
            )
        if targets_arr.size and (targets_arr.min() < 0 or targets_arr.max() >= c):
            raise IndexError(
                f"cross_entropy class index out of range [0, {c}): "
                f"min={targets_arr.min()}, max={targets_arr.max()}"
            )
        picked = take(ls, (np.arange(n), targets_arr))
    else:
        if targets_arr.shape != (n, c):
            raise ShapeError(
                f"cross_entropy soft targets must have shape ({n}, {c}), got {targets_arr.shape}"
            )
        picked = reduce_sum(mul(ls, targets_arr.astype(logits.dtype)), axis=-1)
    if weights is not None:
        picked = mul(picked, np.asarray(weights, dtype=logits.dtype))
    total = mul(reduce_sum(picked), -1.0)
    if reduction == "mean":
        return mul(total, 1.0 / n)
    if reduction == "sum":
        return total
    raise ValueError(f"unknown reduction {reduction!r}")


def linear(x, weight, bias=None) -> Tensor:
    """Affine map along the last axis: x @ weight (+ bias)."""
    out = as_tensor(x) @ as_tensor(weight)
    if bias is not None:
        out = out + as_tensor(bias)
    return out
