"""Feedforward networks with random sigmoid hidden nodes."""

from .datagen import Dataset, Hypercube, NormalizationOrder, make_dataset, target_1d, target_nd
from .estimator import RandomHiddenLayer, RandomHiddenNodeRegressor
from .network import Model, hidden_matrix, predict, sigmoid
from .paramgen import AnchorStrategy, GenConfig, HiddenLayer, Method, generate
from .solver import FitOptions, fit_output_weights, rmse

__all__ = [
    "AnchorStrategy", "Dataset", "FitOptions", "GenConfig", "HiddenLayer", "Hypercube", "Method",
    "Model", "NormalizationOrder", "RandomHiddenLayer", "RandomHiddenNodeRegressor",
    "fit_output_weights", "generate", "hidden_matrix", "make_dataset", "predict", "rmse",
    "sigmoid", "target_1d", "target_nd",
]
__version__ = "0.1.0"
