"""Synthetic regression tasks built on ``sin(20 exp(x)) x**2``.

Datasets are pure functions of their arguments and seed: the same call
always yields the same bits.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np


class NormalizationOrder(str, enum.Enum):
    NOISE_THEN_NORMALIZE = "noise-first"
    NORMALIZE_THEN_NOISE = "normalize-first"
    NONE = "none"


@dataclass(frozen=True)
class Hypercube:
    """Axis-aligned box ``[lower_1, upper_1] x ... x [lower_n, upper_n]``."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.atleast_1d(np.asarray(self.lower, dtype=float))
        upper = np.atleast_1d(np.asarray(self.upper, dtype=float))
        if lower.shape != upper.shape or lower.ndim != 1:
            raise ValueError("lower and upper must be 1-D vectors of equal length")
        if not np.all(lower < upper):
            raise ValueError("every lower bound must be strictly below its upper bound")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def unit(cls, n: int) -> "Hypercube":
        return cls(np.zeros(n), np.ones(n))

    @classmethod
    def from_data(cls, X) -> "Hypercube":
        """Bounding box of the rows of ``X``; flat coordinates get unit width."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        lower, upper = X.min(axis=0), X.max(axis=0)
        flat = upper <= lower
        upper = np.where(flat, lower + 1.0, upper)
        return cls(lower, upper)

    @property
    def n_dims(self) -> int:
        return self.lower.shape[0]

    def contains(self, X) -> np.ndarray:
        X = np.atleast_2d(X)
        return np.all((X >= self.lower) & (X <= self.upper), axis=1)


@dataclass(frozen=True)
class Dataset:
    inputs: np.ndarray
    targets: np.ndarray
    hypercube: Hypercube
    seed: int | None = None
    noise_amplitude: float = 0.0
    normalization_order: NormalizationOrder = NormalizationOrder.NONE
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.inputs.ndim != 2 or self.inputs.shape[0] != self.targets.shape[0]:
            raise ValueError("inputs must be N x n and match the length of targets")
        self.inputs.flags.writeable = False
        self.targets.flags.writeable = False

    @property
    def n_samples(self) -> int:
        return self.inputs.shape[0]

    @property
    def n_dims(self) -> int:
        return self.inputs.shape[1]


def target_1d(x):
    """``sin(20 exp(x)) * x**2``, elementwise for array input."""
    x = np.asarray(x, dtype=float)
    out = np.sin(20.0 * np.exp(x)) * x**2
    return float(out) if out.ndim == 0 else out


def target_nd(x):
    """Sum of :func:`target_1d` over the coordinates.

    Accepts one point (1-D vector) or a batch of points (rows of a matrix).
    """
    x = np.asarray(x, dtype=float)
    if x.ndim == 0 or x.shape[-1] == 0:
        raise ValueError("target_nd needs at least one coordinate")
    out = (np.sin(20.0 * np.exp(x)) * x**2).sum(axis=-1)
    return float(out) if out.ndim == 0 else out


def zero_target(x):
    x = np.asarray(x, dtype=float)
    return np.zeros(x.shape[:-1]) if x.ndim > 1 else 0.0


TARGETS = {"sinexp": target_nd, "zero": zero_target}


def _minmax_map(lo: float, hi: float):
    span = hi - lo
    if span == 0:
        return lambda v: v - lo, 1.0
    scale = 2.0 / span
    return lambda v: (v - lo) * scale - 1.0, scale


def make_dataset(
    n: int,
    N: int,
    noise_amplitude: float = 0.2,
    seed: int = 0,
    order: NormalizationOrder | str = NormalizationOrder.NORMALIZE_THEN_NOISE,
    with_noise: bool = True,
    target: str = "sinexp",
    scale: tuple[float, float] | None = None,
) -> Dataset:
    """Draw ``N`` points uniformly from ``[0, 1]^n`` and label them.

    Normalization is a min-max map onto ``[-1, 1]`` whose constants come
    from the noiseless targets of this dataset. With ``noise-first`` the
    noise is added on the raw scale and then passed through that map; with
    ``normalize-first`` it is added after mapping. Passing ``scale=(lo, hi)``
    maps with those raw-target bounds instead, e.g. to put a test set on its
    training set's scale (see ``meta["scale"]``).
    """
    if n < 1 or N < 1:
        raise ValueError(f"need n >= 1 and N >= 1, got n={n}, N={N}")
    if noise_amplitude < 0:
        raise ValueError("noise_amplitude must be nonnegative")
    order = NormalizationOrder(order)

    rng = np.random.default_rng(seed)
    X = rng.uniform(0.0, 1.0, size=(N, n))
    # Noise is always drawn so the inputs of noisy/noiseless twins coincide.
    xi = rng.uniform(-noise_amplitude, noise_amplitude, size=N)
    if not with_noise:
        xi = np.zeros(N)

    clean = np.asarray(TARGETS[target](X), dtype=float)
    lo, hi = (float(clean.min()), float(clean.max())) if scale is None else map(float, scale)
    if order is NormalizationOrder.NONE:
        y = clean + xi
    else:
        normalize, _ = _minmax_map(lo, hi)
        if order is NormalizationOrder.NOISE_THEN_NORMALIZE:
            y = normalize(clean + xi)
        else:
            y = normalize(clean) + xi

    return Dataset(
        inputs=X,
        targets=y,
        hypercube=Hypercube.unit(n),
        seed=seed,
        noise_amplitude=noise_amplitude if with_noise else 0.0,
        normalization_order=order,
        meta={"target": target, "scale": (lo, hi)},
    )
