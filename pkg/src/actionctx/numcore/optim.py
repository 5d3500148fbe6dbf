"""SGD with momentum and Adam over a ParamSet."""

from __future__ import annotations

import numpy as np

from .params import ParamSet


class MissingGradError(RuntimeError):
    """A trainable parameter has no gradient at step time."""


class _Optimizer:
    def __init__(self, params: ParamSet, lr: float, weight_decay: float = 0.0):
        self.params = params
        self.lr = float(lr)
        self.weight_decay = float(weight_decay)

    def step(self) -> None:
        for name, tensor in self.params.items():
            if not tensor.requires_grad:
                continue
            if tensor.grad is None:
                raise MissingGradError(f"parameter {name!r} has no gradient")
            grad = tensor.grad
            if self.weight_decay:
                grad = grad + self.weight_decay * tensor.data
            self._update(name, tensor, grad)
        self.params.zero_grad()

    def _update(self, name, tensor, grad):
        raise NotImplementedError


class SGD(_Optimizer):
    def __init__(self, params, lr, momentum: float = 0.0, weight_decay: float = 0.0):
        super().__init__(params, lr, weight_decay)
        self.momentum = float(momentum)
        self._velocity: dict[str, np.ndarray] = {}

    def _update(self, name, tensor, grad):
        if self.momentum:
            v = self._velocity.get(name)
            v = grad if v is None else self.momentum * v + grad
            self._velocity[name] = v
            grad = v
        tensor.data = tensor.data - (self.lr * grad).astype(tensor.data.dtype)


class Adam(_Optimizer):
    def __init__(
        self,
        params,
        lr: float = 0.001,
        betas: tuple[float, float] = (0.9, 0.999),
        eps: float = 1e-8,
        weight_decay: float = 0.0,
    ):
        super().__init__(params, lr, weight_decay)
        self.beta1, self.beta2 = betas
        self.eps = eps
        self._m: dict[str, np.ndarray] = {}
        self._v: dict[str, np.ndarray] = {}
        self._t = 0

    def step(self) -> None:
        self._t += 1
        super().step()

    def _update(self, name, tensor, grad):
        m = self._m.get(name, 0.0) * self.beta1 + (1.0 - self.beta1) * grad
        v = self._v.get(name, 0.0) * self.beta2 + (1.0 - self.beta2) * grad * grad
        self._m[name], self._v[name] = m, v
        m_hat = m / (1.0 - self.beta1 ** self._t)
        v_hat = v / (1.0 - self.beta2 ** self._t)
        update = self.lr * m_hat / (np.sqrt(v_hat) + self.eps)
        tensor.data = tensor.data - update.astype(tensor.data.dtype)


def build_optimizer(kind: str, params: ParamSet, lr: float, weight_decay: float = 0.0, momentum: float = 0.9):
    if kind == "sgd-momentum":
        return SGD(params, lr, momentum=momentum, weight_decay=weight_decay)
    if kind == "adam":
        return Adam(params, lr, weight_decay=weight_decay)
    raise ValueError(f"unknown optimizer kind {kind!r}")
