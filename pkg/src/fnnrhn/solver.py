"""Output-weight fitting by (optionally ridge-stabilized) linear least squares."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg


@dataclass(frozen=True)
class FitOptions:
    ridge_lambda: float = 0.0
    rank_tolerance: float = 1e-10  # relative to the largest singular value

    def __post_init__(self):
        if self.ridge_lambda < 0:
            raise ValueError("ridge_lambda must be nonnegative")


def fit_output_weights(H, y, opts: FitOptions | None = None) -> np.ndarray:
    """Solve ``min ||H beta - y||^2 + lambda ||beta||^2`` through the SVD of ``H``.

    With ``lambda = 0`` this is the minimum-norm least-squares solution
    (LAPACK ``gelsd``). In both cases singular values below
    ``rank_tolerance * s_max`` are treated as zero.
    """
    opts = opts or FitOptions()
    H = np.asarray(H, dtype=float)
    y = np.asarray(y, dtype=float)
    if H.ndim != 2 or H.shape[0] < 1 or H.shape[1] < 1:
        raise ValueError("H must be a nonempty N x m matrix")
    if y.shape != (H.shape[0],):
        raise ValueError(f"targets have length {y.shape}, H has {H.shape[0]} rows")
    if not (np.all(np.isfinite(H)) and np.all(np.isfinite(y))):
        raise ValueError("H and y must be finite")

    if opts.ridge_lambda == 0:
        beta, *_ = scipy.linalg.lstsq(H, y, cond=opts.rank_tolerance, lapack_driver="gelsd",
                                      check_finite=False)
        return beta
    U, s, Vt = np.linalg.svd(H, full_matrices=False)
    keep = s > opts.rank_tolerance * s[0] if s[0] > 0 else np.zeros_like(s, dtype=bool)
    s_inv = np.zeros_like(s)
    s_inv[keep] = s[keep] / (s[keep] ** 2 + opts.ridge_lambda)
    return Vt.T @ (s_inv * (U.T @ y))


def rmse(predicted, actual) -> float:
    predicted = np.asarray(predicted, dtype=float)
    actual = np.asarray(actual, dtype=float)
    if predicted.shape != actual.shape or predicted.size == 0:
        raise ValueError("rmse needs two nonempty vectors of equal length")
    return float(np.sqrt(np.mean((predicted - actual) ** 2)))
