"""CSV datasets and JSON model files."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .datagen import Dataset, Hypercube
from .network import Model
from .paramgen import GenConfig, HiddenLayer

FLOAT_FMT = "%.16e"  # 17 significant digits: round-trips every double
MODEL_FORMAT = "fnnrhn-model/1"


def _fmt(v: float) -> str:
    return FLOAT_FMT % v


def write_dataset(dataset: Dataset, path) -> None:
    n = dataset.n_dims
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([f"x{j + 1}" for j in range(n)] + ["y"])
        for x, y in zip(dataset.inputs, dataset.targets):
            w.writerow([_fmt(v) for v in x] + [_fmt(y)])


def read_dataset(path) -> Dataset:
    """Read a ``x1,...,xn,y`` CSV; the hypercube is the unit box when every
    input lies in it, otherwise the bounding box of the inputs."""
    with open(path, newline="") as fh:
        header = next(csv.reader(fh))
    if not header or header[-1] != "y" or len(header) < 2:
        raise ValueError(f"{path}: expected header x1,...,xn,y")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    X, y = np.ascontiguousarray(data[:, :-1]), np.ascontiguousarray(data[:, -1])
    unit = Hypercube.unit(X.shape[1])
    box = unit if np.all(unit.contains(X)) else Hypercube.from_data(X)
    return Dataset(X, y, box, meta={"source": str(path)})


def write_predictions(X, y, pred, path) -> None:
    X = np.atleast_2d(X)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([f"x{j + 1}" for j in range(X.shape[1])] + ["y", "prediction"])
        for x, t, p in zip(X, y, pred):
            w.writerow([_fmt(v) for v in x] + [_fmt(t), _fmt(p)])


def layer_to_dict(layer: HiddenLayer) -> dict:
    cfg = layer.config or GenConfig()
    d = {
        "method": cfg.method.value,
        "n_inputs": layer.n_dims,
        "n_nodes": layer.n_nodes,
        "seed": cfg.seed if isinstance(cfg.seed, int) else None,
        # column-major: the weight vector of node 1, then node 2, ...
        "weights": layer.weights.T.ravel().tolist(),
        "biases": layer.biases.tolist(),
        "anchors": None if layer.anchors is None else layer.anchors.ravel().tolist(),
    }
    if cfg.method.value == "pma":
        d.update(alpha_min=cfg.alpha_min, alpha_max=cfg.alpha_max, anchor_strategy=cfg.anchors.value)
    else:
        d["u"] = cfg.u
        if cfg.method.value == "sm":
            d["bias_nonnegative"] = cfg.bias_nonnegative
        else:
            d["anchor_strategy"] = cfg.anchors.value
    return d


def layer_from_dict(d: dict) -> HiddenLayer:
    n, m = d["n_inputs"], d["n_nodes"]
    W = np.asarray(d["weights"], dtype=float).reshape(m, n).T.copy()
    b = np.asarray(d["biases"], dtype=float)
    anchors = None if d.get("anchors") is None else np.asarray(d["anchors"], dtype=float).reshape(m, n)
    cfg = GenConfig(
        d["method"], u=d.get("u", 1.0), alpha_min=d.get("alpha_min", 0.5),
        alpha_max=d.get("alpha_max", 90.0), anchors=d.get("anchor_strategy", "sample"),
        bias_nonnegative=d.get("bias_nonnegative", False), seed=d.get("seed"),
    )
    return HiddenLayer(W, b, anchors, cfg)


def save_model(model: Model, path) -> None:
    doc = {
        "format": MODEL_FORMAT,
        "hidden": layer_to_dict(model.hidden),
        "output_weights": model.output_weights.tolist(),
        "ridge_lambda": model.ridge_lambda,
        "train_rmse": model.train_rmse,
    }
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def load_model(path) -> Model:
    doc = json.loads(Path(path).read_text())
    if doc.get("format") != MODEL_FORMAT:
        raise ValueError(f"{path}: not a {MODEL_FORMAT} document")
    return Model(layer_from_dict(doc["hidden"]), np.asarray(doc["output_weights"], dtype=float),
                 doc.get("ridge_lambda", 0.0), doc.get("train_rmse", float("nan")))
