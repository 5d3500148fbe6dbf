"""Named parameter collections and initializers."""

from __future__ import annotations

import numpy as np

from .checkpoint import load_checkpoint, save_checkpoint
from .tensor import Tensor


def normal_init(rng: np.random.Generator, shape, std: float) -> np.ndarray:
    return (rng.standard_normal(shape) * std).astype(np.float32)


def xavier_uniform(rng: np.random.Generator, fan_in: int, fan_out: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_in, fan_out)).astype(np.float32)


class ParamSet:
    """Uniquely named trainable tensors, in stable insertion order."""

    def __init__(self):
        self._params: dict[str, Tensor] = {}

    def add(self, name: str, value, requires_grad: bool = True) -> Tensor:
        if name in self._params:
            raise ValueError(f"duplicate parameter name {name!r}")
        tensor = value if isinstance(value, Tensor) else Tensor(value)
        tensor.requires_grad = requires_grad
        self._params[name] = tensor
        return tensor

    def __getitem__(self, name: str) -> Tensor:
        return self._params[name]

    def __contains__(self, name: str) -> bool:
        return name in self._params

    def __len__(self) -> int:
        return len(self._params)

    def names(self) -> list[str]:
        return list(self._params)

    def items(self):
        return self._params.items()

    def tensors(self):
        return self._params.values()

    def zero_grad(self) -> None:
        for tensor in self._params.values():
            tensor.grad = None

    def n_parameters(self, trainable_only: bool = True) -> int:
        return sum(
            t.size
            for t in self._params.values()
            if t.requires_grad or not trainable_only
        )

    def save(self, path) -> None:
        save_checkpoint(path, {name: t.data for name, t in self._params.items()})

    def load_state(self, path) -> None:
        """Load values in place; every name must exist with a matching shape."""
        stored = load_checkpoint(path)
        missing = set(self._params) - set(stored)
        unexpected = set(stored) - set(self._params)
        if missing or unexpected:
            raise KeyError(
                f"checkpoint does not match parameters: missing={sorted(missing)}, "
                f"unexpected={sorted(unexpected)}"
            )
        for name, arr in stored.items():
            tensor = self._params[name]
            if tensor.data.shape != arr.shape:
                raise ValueError(
                    f"checkpoint shape mismatch for {name!r}: "
                    f"model {tensor.data.shape}, file {arr.shape}"
                )
            tensor.data = arr
            tensor.grad = None
