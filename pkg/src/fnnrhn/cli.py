"""Command line entry point: ``fnnrhn <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import logging
import sys

import numpy as np

from . import analysis, bench, serialize
from .datagen import make_dataset
from .estimator import RandomHiddenNodeRegressor
from .network import predict

_ORDERS = ["noise-first", "normalize-first", "none"]


def _write_rows(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([v if isinstance(v, (int, np.integer)) else repr(float(v)) for v in row])


def cmd_gen_data(args):
    ds = make_dataset(args.dims, args.count, args.noise, args.seed, args.order,
                      with_noise=not args.no_noise)
    serialize.write_dataset(ds, args.out)


def cmd_train(args):
    ds = serialize.read_dataset(args.data)
    angles_given = args.alpha_min is not None or args.alpha_max is not None
    if args.method == "pma":
        if args.u is not None:
            raise ValueError("--u does not apply to method pma; use --alpha-min/--alpha-max")
        bounds = dict(alpha_min=0.5 if args.alpha_min is None else args.alpha_min,
                      alpha_max=90.0 if args.alpha_max is None else args.alpha_max)
    else:
        if angles_given:
            raise ValueError(f"--alpha-min/--alpha-max do not apply to method {args.method}")
        bounds = dict(u=1.0 if args.u is None else args.u)
    reg = RandomHiddenNodeRegressor(
        n_hidden=args.nodes, method=args.method, anchors=args.anchors, ridge=args.ridge,
        hypercube=ds.hypercube, random_state=args.seed, **bounds,
    ).fit(ds.inputs, ds.targets)
    serialize.save_model(reg.model_, args.out)
    logging.info("train rmse %.6g", reg.train_rmse_)


def cmd_predict(args):
    model = serialize.load_model(args.model)
    ds = serialize.read_dataset(args.data)
    serialize.write_predictions(ds.inputs, ds.targets, predict(model, ds.inputs), args.out)


def cmd_analyze(args):
    if args.what == "chi-pdf":
        chi = analysis.sample_chi(args.u, args.samples, args.seed)
        edges = np.linspace(-args.range, args.range, args.bins + 1)
        counts, _ = np.histogram(chi, bins=edges)
        width = edges[1] - edges[0]
        centers = 0.5 * (edges[:-1] + edges[1:])
        emp = counts / (chi.size * width)
        _write_rows(args.out, ["chi", "density_closed_form", "density_empirical"],
                    zip(centers, analysis.chi_pdf(centers), emp))
    elif args.what == "in-box":
        rows = []
        for n in range(1, args.dims + 1):
            est = analysis.prob_inflection_in_box(n, args.u, args.samples, seed=(args.seed, n))
            rows.append((n, est.value, est.stderr))
        _write_rows(args.out, ["n", "probability", "stderr"], rows)
    else:
        hist = analysis.angle_distribution(args.u, args.samples, args.seed)
        _write_rows(args.out, ["bin_center_deg", "density"], zip(hist.bin_centers, hist.density))


def cmd_bench(args):
    config = bench.ExperimentConfig.load(args.config)
    report = bench.run_grid(config, n_jobs=args.jobs)
    bench.emit_report(report, args.out, cells="all" if args.all_cells else "best")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fnnrhn", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-data", help="write a synthetic dataset as CSV")
    g.add_argument("--dims", type=int, required=True)
    g.add_argument("--count", type=int, required=True)
    g.add_argument("--noise", type=float, default=0.2)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--order", choices=_ORDERS, default="normalize-first")
    g.add_argument("--no-noise", action="store_true")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen_data)

    t = sub.add_parser("train", help="fit a network and save it as JSON")
    t.add_argument("--data", required=True)
    t.add_argument("--method", choices=["sm", "pmu", "pma"], required=True)
    t.add_argument("--nodes", type=int, required=True)
    t.add_argument("--u", type=float, help="sm/pmu weight bound (default 1)")
    t.add_argument("--alpha-min", type=float, help="pma only, degrees (default 0.5)")
    t.add_argument("--alpha-max", type=float, help="pma only, degrees (default 90)")
    t.add_argument("--anchors", choices=["uniform", "sample", "prototype"], default="sample")
    t.add_argument("--ridge", type=float, default=0.0)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--out", required=True)
    t.set_defaults(func=cmd_train)

    pr = sub.add_parser("predict", help="evaluate a saved model on a dataset")
    pr.add_argument("--model", required=True)
    pr.add_argument("--data", required=True)
    pr.add_argument("--out", required=True)
    pr.set_defaults(func=cmd_predict)

    a = sub.add_parser("analyze", help="distribution diagnostics as CSV")
    a.add_argument("what", choices=["chi-pdf", "in-box", "angle-dist"])
    a.add_argument("--u", type=float, default=1.0)
    a.add_argument("--dims", type=int, default=10, help="largest n for in-box")
    a.add_argument("--samples", type=int, default=1_000_000)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--range", type=float, default=5.0, help="chi-pdf: histogram half-width")
    a.add_argument("--bins", type=int, default=100, help="chi-pdf: number of bins")
    a.add_argument("--out", required=True)
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("bench", help="run a method comparison grid from a YAML config")
    b.add_argument("--config", required=True)
    b.add_argument("--out", required=True)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--all-cells", action="store_true",
                   help="write every hyperparameter cell, not only the best per node count")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except (ValueError, OSError) as exc:
        print(f"fnnrhn {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
