"""Random hidden-node parameters.

Three generators are provided:

* ``SM``: weights and biases both drawn from ``U(-u, u)``.
* ``PMu``: weights from ``U(-u, u)``; each bias is chosen so that the node's
  sigmoid equals 0.5 at an anchor point inside the input hypercube.
* ``PMAlpha``: per-coordinate slope angles drawn uniformly in
  ``[alpha_min, alpha_max]`` degrees, mapped to weights by ``a = 4 tan(alpha)``
  with a random sign; biases anchored as in ``PMu``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .datagen import Dataset, Hypercube


class Method(str, enum.Enum):
    SM = "sm"
    PMU = "pmu"
    PMALPHA = "pma"


class AnchorStrategy(str, enum.Enum):
    UNIFORM = "uniform"
    SAMPLE = "sample"
    PROTOTYPE = "prototype"


@dataclass(frozen=True)
class GenConfig:
    method: Method = Method.PMU
    u: float = 1.0
    alpha_min: float = 0.5
    alpha_max: float = 90.0
    anchors: AnchorStrategy = AnchorStrategy.SAMPLE
    bias_nonnegative: bool = False
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))
        object.__setattr__(self, "anchors", AnchorStrategy(self.anchors))
        if self.method is Method.PMALPHA:
            _check_angle_bounds(self.alpha_min, self.alpha_max)
        elif not self.u > 0:
            raise ValueError(f"weight bound u must be positive, got {self.u}")


@dataclass(frozen=True)
class HiddenLayer:
    weights: np.ndarray  # n x m, column i is node i
    biases: np.ndarray  # m
    anchors: np.ndarray | None = None  # m x n
    config: GenConfig | None = None

    def __post_init__(self):
        if self.weights.ndim != 2 or self.biases.shape != (self.weights.shape[1],):
            raise ValueError("weights must be n x m with one bias per column")
        if self.anchors is not None and self.anchors.shape != self.weights.T.shape:
            raise ValueError("anchors must be m x n")
        for arr in (self.weights, self.biases, self.anchors):
            if arr is not None:
                arr.flags.writeable = False

    @property
    def n_dims(self) -> int:
        return self.weights.shape[0]

    @property
    def n_nodes(self) -> int:
        return self.weights.shape[1]

    def anchor_activations(self) -> np.ndarray:
        """Each node's sigmoid evaluated at its own anchor."""
        from .network import sigmoid

        if self.anchors is None:
            raise ValueError("layer has no anchors")
        return sigmoid(_rowwise_dot(self.anchors, self.weights) + self.biases)


def _rowwise_dot(P: np.ndarray, W: np.ndarray) -> np.ndarray:
    return np.einsum("ij,ji->i", P, W)


def _check_angle_bounds(alpha_min, alpha_max):
    if not 0 < alpha_min < alpha_max <= 90:
        raise ValueError(
            f"need 0 < alpha_min < alpha_max <= 90 degrees, got {alpha_min}, {alpha_max}"
        )


def _check_sizes(m, n):
    if m < 1 or n < 1:
        raise ValueError(f"need at least one node and one input, got m={m}, n={n}")


def gen_sm(m: int, n: int, u: float, rng=None, bias_nonnegative: bool = False) -> HiddenLayer:
    _check_sizes(m, n)
    if not u > 0:
        raise ValueError(f"weight bound u must be positive, got {u}")
    rng = np.random.default_rng(rng)
    W = rng.uniform(-u, u, size=(n, m))
    b = rng.uniform(0.0 if bias_nonnegative else -u, u, size=m)
    cfg = GenConfig(Method.SM, u=u, bias_nonnegative=bias_nonnegative)
    return HiddenLayer(W, b, None, cfg)


def _as_inputs(data, hypercube):
    if isinstance(data, Dataset):
        return data.inputs, hypercube or data.hypercube
    X = np.atleast_2d(np.asarray(data, dtype=float))
    return X, hypercube or Hypercube.from_data(X)


def select_anchors(strategy, m: int, data, rng=None, hypercube: Hypercube | None = None,
                   max_iters: int = 100) -> np.ndarray:
    """Pick ``m`` anchor points as an m x n matrix.

    ``data`` is a :class:`Dataset` or an N x n input matrix. For the
    ``uniform`` strategy the box defaults to the dataset's hypercube, or to
    the bounding box of the inputs.
    """
    strategy = AnchorStrategy(strategy)
    X, box = _as_inputs(data, hypercube)
    if X.shape[0] == 0:
        raise ValueError("cannot anchor on an empty dataset")
    rng = np.random.default_rng(rng)
    if strategy is AnchorStrategy.UNIFORM:
        return rng.uniform(box.lower, box.upper, size=(m, box.n_dims))
    if strategy is AnchorStrategy.SAMPLE:
        return X[rng.integers(0, X.shape[0], size=m)].copy()
    if X.shape[0] < m:
        raise ValueError(f"cannot form {m} clusters from {X.shape[0]} points")
    return kmeans(X, m, max_iters=max_iters, seed=rng)


def compute_bias(a, x_star) -> float:
    a = np.atleast_1d(np.asarray(a, dtype=float))
    x_star = np.atleast_1d(np.asarray(x_star, dtype=float))
    if a.shape != x_star.shape:
        raise ValueError("weight vector and anchor differ in dimension")
    return float(-(a @ x_star))


def _anchored(W, anchors, cfg) -> HiddenLayer:
    b = -_rowwise_dot(anchors, W)
    return HiddenLayer(W, b, anchors, cfg)


def gen_pmu(m: int, n: int, u: float, strategy, data, rng=None,
            hypercube: Hypercube | None = None) -> HiddenLayer:
    _check_sizes(m, n)
    if not u > 0:
        raise ValueError(f"weight bound u must be positive, got {u}")
    rng = np.random.default_rng(rng)
    W = rng.uniform(-u, u, size=(n, m))
    anchors = select_anchors(strategy, m, data, rng, hypercube)
    return _anchored(W, anchors, GenConfig(Method.PMU, u=u, anchors=strategy))


def angle_to_weight(alpha, sign=0):
    """``(-1)**sign * 4 tan(alpha)`` for ``alpha`` in degrees, ``0 < alpha < 90``."""
    alpha = np.asarray(alpha, dtype=float)
    if np.any(alpha <= 0) or np.any(alpha >= 90):
        raise ValueError("slope angle must lie strictly between 0 and 90 degrees")
    w = np.where(np.asarray(sign) == 1, -4.0, 4.0) * np.tan(np.radians(alpha))
    return float(w) if w.ndim == 0 else w


def weight_to_angle(a):
    """Slope angle in degrees of a sigmoid with weight ``a`` at its inflection point."""
    out = np.degrees(np.arctan(np.asarray(a, dtype=float) / 4.0))
    return float(out) if out.ndim == 0 else out


def draw_angles(rng, alpha_min: float, alpha_max: float, size) -> np.ndarray:
    """Uniform angles on ``[alpha_min, alpha_max)``; draws that round to 90 are redrawn."""
    _check_angle_bounds(alpha_min, alpha_max)
    alpha = rng.uniform(alpha_min, alpha_max, size=size)
    bad = alpha >= 90.0
    while np.any(bad):
        alpha[bad] = rng.uniform(alpha_min, alpha_max, size=int(bad.sum()))
        bad = alpha >= 90.0
    return alpha


def gen_pmalpha(m: int, n: int, alpha_min: float, alpha_max: float, strategy, data,
                rng=None, hypercube: Hypercube | None = None) -> HiddenLayer:
    _check_sizes(m, n)
    rng = np.random.default_rng(rng)
    alpha = draw_angles(rng, alpha_min, alpha_max, (n, m))
    q = rng.integers(0, 2, size=(n, m))
    W = angle_to_weight(alpha, q)
    anchors = select_anchors(strategy, m, data, rng, hypercube)
    cfg = GenConfig(Method.PMALPHA, alpha_min=alpha_min, alpha_max=alpha_max, anchors=strategy)
    return _anchored(W, anchors, cfg)


def generate(config: GenConfig, m: int, data, hypercube: Hypercube | None = None) -> HiddenLayer:
    """Build a layer of ``m`` nodes as described by ``config``, seeded by ``config.seed``."""
    X, box = _as_inputs(data, hypercube)
    n = X.shape[1]
    rng = np.random.default_rng(config.seed)
    if config.method is Method.SM:
        layer = gen_sm(m, n, config.u, rng, config.bias_nonnegative)
    elif config.method is Method.PMU:
        layer = gen_pmu(m, n, config.u, config.anchors, X, rng, box)
    else:
        layer = gen_pmalpha(m, n, config.alpha_min, config.alpha_max, config.anchors, X, rng, box)
    return HiddenLayer(layer.weights, layer.biases, layer.anchors, config)


def _kmeans_pp(X, k, rng):
    N = X.shape[0]
    centers = np.empty((k, X.shape[1]))
    centers[0] = X[rng.integers(N)]
    d2 = ((X - centers[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        total = d2.sum()
        if total > 0:
            idx = rng.choice(N, p=d2 / total)
        else:
            idx = rng.integers(N)
        centers[c] = X[idx]
        np.minimum(d2, ((X - centers[c]) ** 2).sum(axis=1), out=d2)
    return centers


def kmeans(points, k: int, max_iters: int = 100, seed=None) -> np.ndarray:
    """Lloyd's k-means with k-means++ seeding; returns the k x n centroids.

    A cluster that empties during iteration is re-seeded at the point
    farthest from its assigned centroid.
    """
    X = np.atleast_2d(np.asarray(points, dtype=float))
    N = X.shape[0]
    if not 1 <= k <= N:
        raise ValueError(f"need 1 <= k <= N, got k={k}, N={N}")
    rng = np.random.default_rng(seed)
    centers = _kmeans_pp(X, k, rng)
    labels = None
    for _ in range(max_iters):
        d2 = cdist(X, centers, "sqeuclidean")
        new_labels = d2.argmin(axis=1)
        if labels is not None and np.array_equal(new_labels, labels):
            break
        labels = new_labels
        counts = np.bincount(labels, minlength=k)
        empty = np.flatnonzero(counts == 0)
        if empty.size:
            own = d2[np.arange(N), labels]
            donors = iter(np.argsort(own)[::-1])
            for c in empty:
                idx = next(i for i in donors if counts[labels[i]] > 1)
                counts[labels[idx]] -= 1
                labels[idx] = c
                counts[c] = 1
        sums = np.zeros_like(centers)
        np.add.at(sums, labels, X)
        centers = sums / counts[:, None]
    return centers


__all__ = [
    "AnchorStrategy", "GenConfig", "HiddenLayer", "Method", "angle_to_weight",
    "compute_bias", "draw_angles", "gen_pmalpha", "gen_pmu", "gen_sm", "generate",
    "kmeans", "select_anchors", "weight_to_angle",
]
