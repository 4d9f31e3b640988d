"""Method comparison grids: SM vs PMu vs PMAlpha over node counts and bounds.

Every (method, nodes, hyperparameter, trial) cell is an independent,
deterministic job whose seeds are hashed from its coordinates, so cells can
run in any order or in parallel and still give byte-identical reports.
"""

from __future__ import annotations

import csv
import dataclasses
import hashlib
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np
import yaml

from .datagen import Dataset, NormalizationOrder, make_dataset
from .network import hidden_matrix
from .paramgen import AnchorStrategy, GenConfig, Method, generate
from .solver import FitOptions, fit_output_weights, rmse

log = logging.getLogger(__name__)

DEFAULT_U_GRID = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 20, 50, 100)
# 0 degrees is outside the open angle domain; it is replaced by this floor.
ALPHA_FLOOR = 0.5
DEFAULT_ALPHA_GRID = (ALPHA_FLOOR, 10, 20, 30, 40, 50, 60, 70, 80)

REPORT_COLUMNS = ("method", "nodes", "hyperparam", "mean_rmse", "std_rmse", "trials")


def derive_seed(*parts) -> int:
    """Stable 64-bit seed from arbitrary hashable cell coordinates."""
    digest = hashlib.blake2b(repr(parts).encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def _alpha(v: float) -> float:
    return ALPHA_FLOOR if v <= 0 else float(v)


@dataclass(frozen=True)
class ExperimentConfig:
    dims: int = 1
    train_size: int = 5000
    test_size: int | None = None  # defaults to train_size
    noise: float = 0.2
    order: NormalizationOrder = NormalizationOrder.NOISE_THEN_NORMALIZE
    target: str = "sinexp"
    scaling: str = "shared"  # test/validation use the training min-max constants; or "per-set"
    methods: tuple = (Method.SM, Method.PMU, Method.PMALPHA)
    node_counts: tuple = (10, 20, 35, 60, 100)
    u_grid: tuple = DEFAULT_U_GRID
    alpha_grid: tuple = DEFAULT_ALPHA_GRID
    alpha_max: float = 90.0
    anchors: AnchorStrategy = AnchorStrategy.SAMPLE
    ridge: float = 0.0
    trials: int = 20
    seed: int = 0
    selection: str = "test"  # or "holdout"
    validation_size: int | None = None

    def __post_init__(self):
        s = object.__setattr__
        s(self, "order", NormalizationOrder(self.order))
        s(self, "anchors", AnchorStrategy(self.anchors))
        s(self, "methods", tuple(Method(m) for m in self.methods))
        s(self, "node_counts", tuple(int(m) for m in self.node_counts))
        s(self, "u_grid", tuple(float(u) for u in self.u_grid))
        s(self, "alpha_grid", tuple(_alpha(a) for a in self.alpha_grid))
        if self.test_size is None:
            s(self, "test_size", self.train_size)
        if self.validation_size is None:
            s(self, "validation_size", self.train_size)
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if any(m < 1 for m in self.node_counts) or not self.node_counts:
            raise ValueError("node counts must be a nonempty list of positive integers")
        if self.scaling not in ("shared", "per-set"):
            raise ValueError("scaling must be 'shared' or 'per-set'")
        if self.selection not in ("test", "holdout"):
            raise ValueError("selection must be 'test' or 'holdout'")
        for m in self.methods:
            if not self.grid_for(m):
                raise ValueError(f"empty hyperparameter grid for method {m.value}")

    def grid_for(self, method: Method) -> tuple:
        return self.alpha_grid if Method(method) is Method.PMALPHA else self.u_grid

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        """Build from a mapping; nested sections (``data:``, ``model:``, ...) are flattened."""
        flat = {}
        for k, v in doc.items():
            if isinstance(v, dict):
                flat.update(v)
            else:
                flat[k] = v
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(flat) - known
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        return cls(**flat)

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        return cls.from_dict(yaml.safe_load(Path(path).read_text()) or {})


@dataclass(frozen=True)
class CellResult:
    method: Method
    nodes: int
    hyperparam: float
    rmses: tuple

    @property
    def mean(self) -> float:
        return float(np.mean(self.rmses))

    @property
    def std(self) -> float:
        return float(np.std(self.rmses))


@dataclass
class ExperimentReport:
    best: list = field(default_factory=list)  # one CellResult per (method, nodes)
    grid: list = field(default_factory=list)  # every evaluated cell

    def lookup(self, method, nodes) -> CellResult:
        method = Method(method)
        for c in self.best:
            if c.method is method and c.nodes == nodes:
                return c
        raise KeyError((method, nodes))


@lru_cache(maxsize=8)
def trial_data(config: ExperimentConfig, trial: int) -> tuple[Dataset, Dataset, Dataset | None]:
    """Train, test and (holdout mode only) validation sets of one trial.

    All methods within a trial share the same data. Under ``shared``
    scaling the test and validation targets are normalized with the
    training set's constants, so a test sample that misses the extreme of
    the target function does not rescale the whole test set.
    """
    def make(kind, N, noisy, scale=None):
        return make_dataset(config.dims, N, config.noise, derive_seed(config.seed, kind, trial),
                            config.order, with_noise=noisy, target=config.target, scale=scale)

    train = make("train", config.train_size, True)
    scale = train.meta["scale"] if config.scaling == "shared" else None
    test = make("test", config.test_size, False, scale)
    val = None
    if config.selection == "holdout":
        val = make("validation", config.validation_size, True, scale)
    return train, test, val


def _gen_config(method: Method, hyperparam: float, config: ExperimentConfig, seed: int) -> GenConfig:
    if method is Method.PMALPHA:
        return GenConfig(method, alpha_min=hyperparam, alpha_max=config.alpha_max,
                         anchors=config.anchors, seed=seed)
    return GenConfig(method, u=hyperparam, anchors=config.anchors, seed=seed)


def score_cell(method, nodes: int, hyperparam: float, config: ExperimentConfig,
               trial: int) -> tuple[float, float | None]:
    """Fit one network; return its test RMSE and, in holdout mode, its validation RMSE."""
    method = Method(method)
    if nodes < 1:
        raise ValueError("at least one hidden node is required")
    train, test, val = trial_data(config, trial)
    seed = derive_seed(config.seed, "layer", method.value, int(nodes), float(hyperparam), trial)
    layer = generate(_gen_config(method, float(hyperparam), config, seed), nodes, train)
    beta = fit_output_weights(hidden_matrix(train.inputs, layer), train.targets,
                              FitOptions(config.ridge))
    test_rmse = rmse(hidden_matrix(test.inputs, layer) @ beta, test.targets)
    val_rmse = None if val is None else rmse(hidden_matrix(val.inputs, layer) @ beta, val.targets)
    return test_rmse, val_rmse


def run_cell(method, nodes: int, hyperparam: float, config: ExperimentConfig, trial: int) -> float:
    """Test RMSE of one network trained on the trial's noisy data."""
    return score_cell(method, nodes, hyperparam, config, trial)[0]


def _evaluate(jobs, config, n_jobs):
    if n_jobs == 1:
        return [score_cell(*j[:3], config, j[3]) for j in jobs]
    from joblib import Parallel, delayed

    return Parallel(n_jobs=n_jobs)(delayed(score_cell)(*j[:3], config, j[3]) for j in jobs)


def run_grid(config: ExperimentConfig, n_jobs: int = 1) -> ExperimentReport:
    """Evaluate every (method, nodes, hyperparameter) over all trials and keep
    the hyperparameter with the lowest mean selection RMSE per (method, nodes)."""
    keys = [(m, k, h) for m in config.methods for k in config.node_counts for h in config.grid_for(m)]
    # trial-major order keeps each trial's datasets hot in the cache
    jobs = [(m, k, h, t) for t in range(config.trials) for (m, k, h) in keys]
    scores = dict(zip(jobs, _evaluate(jobs, config, n_jobs)))
    sel_index = 1 if config.selection == "holdout" else 0

    report = ExperimentReport()
    for m in config.methods:
        for k in config.node_counts:
            cells = []
            for h in config.grid_for(m):
                test = tuple(scores[(m, k, h, t)][0] for t in range(config.trials))
                sel = np.mean([scores[(m, k, h, t)][sel_index] for t in range(config.trials)])
                cells.append((sel, CellResult(m, k, h, test)))
            report.grid.extend(c for _, c in cells)
            best = min(cells, key=lambda sc: sc[0])[1]
            report.best.append(best)
            log.info("%s m=%d best=%g mean=%.5f", m.value, k, best.hyperparam, best.mean)
    return report


def _fmt(v: float) -> str:
    return repr(float(v))


def emit_report(report: ExperimentReport, path, cells: str = "best") -> None:
    rows = report.best if cells == "best" else report.grid
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(REPORT_COLUMNS)
        for c in rows:
            w.writerow([c.method.value, c.nodes, _fmt(c.hyperparam), _fmt(c.mean), _fmt(c.std),
                        len(c.rmses)])


def read_report(path) -> list[dict]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [
        {"method": Method(r["method"]), "nodes": int(r["nodes"]), "hyperparam": float(r["hyperparam"]),
         "mean_rmse": float(r["mean_rmse"]), "std_rmse": float(r["std_rmse"]), "trials": int(r["trials"])}
        for r in rows
    ]
