"""Minimal dense-tensor numerical core with reverse-mode autodiff.

Everything runs on numpy arrays, float32 by default. Model code builds a
computation graph out of :class:`Tensor` nodes; calling ``backward()`` on a
scalar loss fills ``.grad`` on every reachable tensor that requires
gradients. Optimizers consume those gradients and zero them afterwards.
"""

from .tensor import Tensor, ShapeError, no_grad, grad_enabled, concat, matmul
from . import functional
from .params import ParamSet, normal_init, xavier_uniform
from .optim import SGD, Adam, MissingGradError, build_optimizer
from .checkpoint import (
    CheckpointError,
    load_checkpoint,
    save_checkpoint,
)
from .gradcheck import check_gradients, numeric_gradient

__all__ = [
    "Tensor",
    "ShapeError",
    "no_grad",
    "grad_enabled",
    "concat",
    "matmul",
    "functional",
    "ParamSet",
    "normal_init",
    "xavier_uniform",
    "SGD",
    "Adam",
    "MissingGradError",
    "build_optimizer",
    "CheckpointError",
    "save_checkpoint",
    "load_checkpoint",
    "check_gradients",
    "numeric_gradient",
]
