"""scikit-learn compatible wrappers around the random hidden layer and its fit."""

from __future__ import annotations

import numbers

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted, validate_data

from .datagen import Hypercube
from .network import Model, hidden_matrix
from .paramgen import GenConfig, generate
from .solver import FitOptions, fit_output_weights, rmse


def _seed_of(random_state):
    if random_state is None or isinstance(random_state, np.random.Generator):
        return random_state
    if isinstance(random_state, numbers.Integral):
        return int(random_state)
    raise ValueError(f"random_state must be None, an int or a numpy Generator, got {random_state!r}")


class RandomHiddenLayer(TransformerMixin, BaseEstimator):
    """Maps inputs to the activations of ``n_hidden`` random sigmoid nodes.

    Parameters
    ----------
    n_hidden : int
        Number of hidden nodes.
    method : {'sm', 'pmu', 'pma'}
        ``sm`` draws weights and biases from ``U(-u, u)``. ``pmu`` draws
        weights from ``U(-u, u)`` and places each node's inflection at an
        anchor point. ``pma`` draws slope angles from
        ``U(alpha_min, alpha_max)`` (degrees) instead of weights.
    u : float
        Weight bound for ``sm`` and ``pmu``.
    alpha_min, alpha_max : float
        Slope angle bounds in degrees for ``pma``.
    anchors : {'uniform', 'sample', 'prototype'}
        Where anchors come from: uniform in the input box, random training
        rows, or k-means centroids of the training inputs.
    bias_nonnegative : bool
        ``sm`` only: draw biases from ``U(0, u)``.
    hypercube : Hypercube or None
        Input box for ``uniform`` anchors; defaults to the bounding box of
        the training inputs.
    random_state : int, numpy Generator or None
    """

    def __init__(self, n_hidden=100, method="pmu", u=1.0, alpha_min=0.5, alpha_max=90.0,
                 anchors="sample", bias_nonnegative=False, hypercube=None, random_state=None):
        self.n_hidden = n_hidden
        self.method = method
        self.u = u
        self.alpha_min = alpha_min
        self.alpha_max = alpha_max
        self.anchors = anchors
        self.bias_nonnegative = bias_nonnegative
        self.hypercube = hypercube
        self.random_state = random_state

    def _gen_config(self) -> GenConfig:
        return GenConfig(self.method, u=self.u, alpha_min=self.alpha_min,
                         alpha_max=self.alpha_max, anchors=self.anchors,
                         bias_nonnegative=self.bias_nonnegative,
                         seed=_seed_of(self.random_state))

    def fit(self, X, y=None):
        X = validate_data(self, X, dtype=float)
        if not isinstance(self.n_hidden, numbers.Integral) or self.n_hidden < 1:
            raise ValueError(f"n_hidden must be a positive integer, got {self.n_hidden!r}")
        box = self.hypercube
        if box is not None and not isinstance(box, Hypercube):
            box = Hypercube(*box)
        self.layer_ = generate(self._gen_config(), self.n_hidden, X, box)
        return self

    def transform(self, X):
        check_is_fitted(self, "layer_")
        X = validate_data(self, X, dtype=float, reset=False)
        return hidden_matrix(X, self.layer_)


class RandomHiddenNodeRegressor(RegressorMixin, BaseEstimator):
    """Single-hidden-layer network with frozen random sigmoids and a
    least-squares output layer.

    Takes every parameter of :class:`RandomHiddenLayer`, plus ``ridge``
    (penalty on the output weights, 0 for plain least squares) and
    ``rank_tolerance`` (relative singular value cutoff).

    Attributes
    ----------
    layer_ : HiddenLayer
    coef_ : ndarray of shape (n_hidden,)
        Output weights.
    model_ : Model
    train_rmse_ : float
    """

    def __init__(self, n_hidden=100, method="pmu", u=1.0, alpha_min=0.5, alpha_max=90.0,
                 anchors="sample", bias_nonnegative=False, hypercube=None, ridge=0.0,
                 rank_tolerance=1e-10, random_state=None):
        self.n_hidden = n_hidden
        self.method = method
        self.u = u
        self.alpha_min = alpha_min
        self.alpha_max = alpha_max
        self.anchors = anchors
        self.bias_nonnegative = bias_nonnegative
        self.hypercube = hypercube
        self.ridge = ridge
        self.rank_tolerance = rank_tolerance
        self.random_state = random_state

    def fit(self, X, y):
        X, y = validate_data(self, X, y, dtype=float, y_numeric=True)
        hidden = RandomHiddenLayer(
            n_hidden=self.n_hidden, method=self.method, u=self.u,
            alpha_min=self.alpha_min, alpha_max=self.alpha_max, anchors=self.anchors,
            bias_nonnegative=self.bias_nonnegative, hypercube=self.hypercube,
            random_state=self.random_state,
        ).fit(X)
        H = hidden.transform(X)
        self.coef_ = fit_output_weights(H, y, FitOptions(self.ridge, self.rank_tolerance))
        self.train_rmse_ = rmse(H @ self.coef_, y)
        self.layer_ = hidden.layer_
        self.model_ = Model(self.layer_, self.coef_, float(self.ridge), self.train_rmse_)
        return self

    def predict(self, X):
        check_is_fitted(self, "model_")
        X = validate_data(self, X, dtype=float, reset=False)
        return self.model_.predict(X)
