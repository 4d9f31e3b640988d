"""Sigmoid hidden layers: activations, inflection geometry and predictions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from .datagen import Hypercube
    from .paramgen import HiddenLayer


def sigmoid(z):
    """Logistic function, evaluated without overflow for any finite input."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return float(out) if out.ndim == 0 else out


def _check_inputs(X, n_dims: int) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1) if n_dims == 1 else X.reshape(1, -1)
    if X.ndim != 2 or X.shape[1] != n_dims:
        raise ValueError(f"inputs have {X.shape[-1]} columns, layer expects {n_dims}")
    return X


def hidden_matrix(X, layer: "HiddenLayer") -> np.ndarray:
    """Activations ``H[l, i] = sigmoid(a_i . x_l + b_i)`` as an N x m matrix."""
    X = _check_inputs(X, layer.weights.shape[0])
    return sigmoid(X @ layer.weights + layer.biases)


def inflection_point_1d(a: float, b: float) -> float:
    if a == 0:
        raise ValueError("a zero weight gives a constant node with no inflection point")
    return -b / a


def inflection_hyperplane_intersects(a, b: float, box: "Hypercube") -> bool:
    """Whether the 0.5-level set ``a . x + b = 0`` meets ``box``.

    The affine form is separable, so its extremes over the box are sums of
    per-coordinate extremes; no vertex enumeration is needed.
    """
    a = np.atleast_1d(np.asarray(a, dtype=float))
    if a.shape != box.lower.shape:
        raise ValueError("weight vector and box differ in dimension")
    if not np.any(a):
        raise ValueError("zero weight vector has no inflection locus")
    lo_terms = a * box.lower
    hi_terms = a * box.upper
    lo = b + np.minimum(lo_terms, hi_terms).sum()
    hi = b + np.maximum(lo_terms, hi_terms).sum()
    return bool(lo <= 0.0 <= hi)


def intersects_many(A: np.ndarray, b: np.ndarray, box: "Hypercube") -> np.ndarray:
    """Vectorized :func:`inflection_hyperplane_intersects` over rows of ``A``.

    Rows with an all-zero weight vector report ``False``.
    """
    lo_terms = A * box.lower
    hi_terms = A * box.upper
    lo = b + np.minimum(lo_terms, hi_terms).sum(axis=1)
    hi = b + np.maximum(lo_terms, hi_terms).sum(axis=1)
    return (lo <= 0.0) & (hi >= 0.0) & np.any(A != 0, axis=1)


@dataclass(frozen=True)
class Model:
    hidden: "HiddenLayer"
    output_weights: np.ndarray
    ridge_lambda: float = 0.0
    train_rmse: float = float("nan")

    def __post_init__(self):
        if self.output_weights.shape != (self.hidden.n_nodes,):
            raise ValueError("need one output weight per hidden node")

    def predict(self, X) -> np.ndarray:
        return predict(self, X)


def predict(model: Model, X) -> np.ndarray:
    return hidden_matrix(X, model.hidden) @ model.output_weights
