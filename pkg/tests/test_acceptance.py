"""Exit criteria. Each test logs one PASS/FAIL line (shown in the pytest summary).

Criterion 7 runs the shipped ``configs/n2_desk.yaml`` grid and takes a
few minutes; deselect it with ``-m "not slow"``.
"""

import time
from pathlib import Path

import numpy as np
import pytest
from scipy import integrate

from fnnrhn import bench
from fnnrhn.analysis import angle_distribution, chi_cdf, chi_pdf, ks_statistic, sample_chi
from fnnrhn.cli import main
from fnnrhn.datagen import Hypercube, make_dataset
from fnnrhn.paramgen import gen_pmalpha, gen_pmu, weight_to_angle
from fnnrhn.solver import fit_output_weights

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def test_c1_inflection_probability_curve(tmp_path, record_criterion):
    t0 = time.perf_counter()
    assert main(["analyze", "in-box", "--dims", "10", "--samples", "1000000", "--seed", "1",
                 "--out", str(tmp_path / "box.csv")]) == 0
    elapsed = time.perf_counter() - t0
    n, p, se = np.loadtxt(tmp_path / "box.csv", delimiter=",", skiprows=1).T
    assert list(n) == list(range(1, 11))
    ok = (abs(p[0] - 0.25) <= 0.005 and abs(p[1] - 0.46) <= 0.01 and p[6] >= 0.90
          and np.all(np.diff(p) >= 0) and elapsed < 30)
    record_criterion("C1", ok, f"P(1)={p[0]:.4f} P(2)={p[1]:.4f} P(7)={p[6]:.4f} "
                     f"monotone={bool(np.all(np.diff(p) >= 0))} t={elapsed:.1f}s")
    assert ok


def test_c2_chi_distribution(record_criterion):
    t0 = time.perf_counter()
    chi = sample_chi(1.0, 1_000_000, seed=2)
    ks = ks_statistic(chi, chi_cdf)
    L = 1e6
    tail = sum(integrate.quad(chi_pdf, 10.0**k, 10.0 ** (k + 1))[0] for k in range(6))
    total = integrate.quad(chi_pdf, -1, 1)[0] + 2 * tail + 2 * 0.25 / L
    # scale invariance: mass in each of several chi bins agrees between u = 1 and u = 100
    chi100 = sample_chi(100.0, 1_000_000, seed=3)
    edges = np.array([-np.inf, -4, -1, -0.25, 0, 0.25, 1, 4, np.inf])
    p1 = np.histogram(chi, edges)[0] / chi.size
    p2 = np.histogram(chi100, edges)[0] / chi100.size
    se = np.sqrt(p1 * (1 - p1) / chi.size + p2 * (1 - p2) / chi100.size)
    z = float(np.max(np.abs(p1 - p2) / se))
    elapsed = time.perf_counter() - t0
    ok = ks < 0.01 and abs(total - 1) <= 1e-4 and z < 3 and elapsed < 30
    record_criterion("C2", ok, f"KS={ks:.5f} integral={total:.7f} max|z|(u=1 vs 100)={z:.2f} "
                     f"t={elapsed:.1f}s")
    assert ok


def test_c3_angle_mapping(record_criterion):
    ends = [weight_to_angle(u) for u in (1.0, 10.0, 100.0)]
    frac = angle_distribution(100.0, 1_000_000, seed=4, threshold=80.0).fraction_above
    ok = all(abs(e - t) <= 0.1 for e, t in zip(ends, (14.0, 68.2, 87.7))) and frac > 0.77
    record_criterion("C3", ok, f"endpoints={[round(e, 3) for e in ends]} frac(|a|>80deg)={frac:.4f}")
    assert ok


def test_c4_anchoring_property(record_criterion):
    t0 = time.perf_counter()
    worst, inside_1d, count = 0.0, True, 0
    for n in (1, 2, 5):
        ds = make_dataset(n, 5000, 0.2, seed=n)
        for strategy in ("uniform", "sample"):
            for layer in (gen_pmu(10_000, n, 10.0, strategy, ds, rng=n),
                          gen_pmalpha(10_000, n, 0.5, 90.0, strategy, ds, rng=n)):
                worst = max(worst, float(np.max(np.abs(layer.anchor_activations() - 0.5))))
                count += layer.n_nodes
                if n == 1:
                    chi = -layer.biases / layer.weights[0]
                    inside_1d &= bool(np.all((chi >= 0) & (chi <= 1)))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and inside_1d and elapsed < 10
    record_criterion("C4", ok, f"{count} nodes, max|h(x*)-0.5|={worst:.2e} 1-D inside={inside_1d} "
                     f"t={elapsed:.1f}s")
    assert ok


def test_c5_angle_uniformity(record_criterion):
    results = []
    for lo, hi in ((20.0, 70.0), (0.5, 90.0)):
        layer = gen_pmalpha(1_000_000, 1, lo, hi, "uniform", np.zeros((1, 1)), rng=5,
                            hypercube=Hypercube.unit(1))
        ang = np.abs(weight_to_angle(layer.weights[0]))
        results.append(ks_statistic(ang, lambda x, lo=lo, hi=hi: (x - lo) / (hi - lo)))
    ok = max(results) < 0.01
    record_criterion("C5", ok, f"KS [20,70]={results[0]:.5f} KS [0.5,90]={results[1]:.5f}")
    assert ok


def test_c6_one_dimensional_fit(record_criterion):
    t0 = time.perf_counter()
    common = dict(dims=1, train_size=5000, noise=0.2, order="noise-first", trials=30, seed=6)
    pm = bench.run_grid(bench.ExperimentConfig(methods=("pmu", "pma"), node_counts=(35,), **common))
    sm = bench.run_grid(bench.ExperimentConfig(methods=("sm",), node_counts=(60,), **common))
    elapsed = time.perf_counter() - t0
    pmu, pma, sm60 = pm.lookup("pmu", 35), pm.lookup("pma", 35), sm.lookup("sm", 60)
    best_trial = min(min(pmu.rmses), min(pma.rmses))
    ok = max(pmu.mean, pma.mean) <= sm60.mean and best_trial <= 0.015 and elapsed < 120
    record_criterion(
        "C6", ok,
        f"PMu@35={pmu.mean:.5f} (u={pmu.hyperparam:g}) PMa@35={pma.mean:.5f} "
        f"(amin={pma.hyperparam:g}) SM@60={sm60.mean:.5f} (u={sm60.hyperparam:g}) "
        f"best PM trial={best_trial:.5f} t={elapsed:.0f}s")
    assert ok


@pytest.mark.slow
def test_c7_multivariate_ordering(record_criterion):
    t0 = time.perf_counter()
    cfg = bench.ExperimentConfig.load(CONFIGS / "n2_desk.yaml")
    assert cfg.dims == 2 and cfg.train_size == 5000 and cfg.trials == 20
    report = bench.run_grid(cfg)
    elapsed = time.perf_counter() - t0
    top = max(cfg.node_counts)
    sm, pmu, pma = (report.lookup(m, top).mean for m in ("sm", "pmu", "pma"))
    pma_best = min(report.lookup("pma", k).mean for k in cfg.node_counts)
    ok = pma <= pmu <= sm and pma_best <= 0.05 and elapsed < 600
    record_criterion("C7", ok, f"m={top}: PMa={pma:.5f} PMu={pmu:.5f} SM={sm:.5f}; "
                     f"best PMa={pma_best:.5f} t={elapsed:.0f}s")
    assert ok


def test_c8_solver_oracle(record_criterion):
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(100):
        H, y = rng.normal(size=(50, 10)), rng.normal(size=50)
        ref = np.linalg.solve(H.T @ H, H.T @ y)  # independent normal-equation solve
        worst = max(worst, float(np.linalg.norm(fit_output_weights(H, y) - ref) / np.linalg.norm(ref)))
    # two equal columns: the minimum-norm solution splits the weight evenly
    H = np.array([[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]])
    beta = fit_output_weights(H, np.array([2.0, 4.0, 6.0]))
    min_norm_ok = np.allclose(beta, [1.0, 1.0], rtol=1e-12)
    ok = worst <= 1e-8 and min_norm_ok
    record_criterion("C8", ok, f"max rel diff={worst:.2e}; rank-deficient beta={beta.round(12).tolist()}")
    assert ok


def test_c9_cli_determinism(tmp_path, record_criterion):
    cfg = tmp_path / "bench.yaml"
    cfg.write_text("dims: 2\ntrain_size: 300\nnode_counts: [5, 20]\nu_grid: [1, 10]\n"
                   "alpha_grid: [0, 40]\ntrials: 2\nseed: 9\n")
    data = tmp_path / "data.csv"
    commands = {
        "gen-data": ["gen-data", "--dims", "2", "--count", "500", "--seed", "9", "--out", "{out}"],
        "gen-data-1d": ["gen-data", "--dims", "1", "--count", "200", "--order", "noise-first",
                        "--no-noise", "--out", "{out}"],
        "train-sm": ["train", "--data", str(data), "--method", "sm", "--nodes", "30", "--u", "5",
                     "--seed", "1", "--out", "{out}"],
        "train-pmu": ["train", "--data", str(data), "--method", "pmu", "--nodes", "30", "--u", "5",
                      "--anchors", "uniform", "--seed", "1", "--out", "{out}"],
        "train-pma": ["train", "--data", str(data), "--method", "pma", "--nodes", "30",
                      "--alpha-min", "10", "--alpha-max", "80", "--anchors", "prototype",
                      "--ridge", "1e-6", "--seed", "1", "--out", "{out}"],
        "predict": ["predict", "--model", str(tmp_path / "model.json"), "--data", str(data),
                    "--out", "{out}"],
        "chi-pdf": ["analyze", "chi-pdf", "--samples", "50000", "--seed", "3", "--out", "{out}"],
        "in-box": ["analyze", "in-box", "--dims", "4", "--samples", "50000", "--out", "{out}"],
        "angle-dist": ["analyze", "angle-dist", "--u", "10", "--samples", "50000", "--out", "{out}"],
        "bench": ["bench", "--config", str(cfg), "--out", "{out}"],
    }
    assert main(commands["gen-data"][:-1] + [str(data)]) == 0
    assert main(commands["train-pma"][:-1] + [str(tmp_path / "model.json")]) == 0
    differing = []
    for name, argv in commands.items():
        outs = []
        for k in range(2):
            out = tmp_path / f"{name}.{k}"
            assert main([a.replace("{out}", str(out)) for a in argv]) == 0
            outs.append(out.read_bytes())
        if outs[0] != outs[1] or not outs[0]:
            differing.append(name)
    ok = not differing
    record_criterion("C9", ok, f"{len(commands)} invocations repeated, differing={differing}")
    assert ok
