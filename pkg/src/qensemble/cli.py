"""Command-line entry point.

Every command prints a JSON document embedding its resolved config, so
any output can be regenerated from the document itself. ``--format csv``
(optionally with ``--out``) emits flat rows instead, prefixed by one
``# config:`` comment line. Exit codes: 0 success, 1 domain or runtime
error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bench, oracle
from .classifier import classify_single
from .encoding import LabeledDataset, load_dataset_csv
from .ensemble import (
    EnsembleConfig,
    MODE_FULL,
    MODE_TRAJECTORIES,
    run_ensemble_full,
    run_ensemble_trajectories,
)
from .errors import CapacityError, DatasetFormatError, EncodingError
from .seeding import subseed

# Four-point demo set and its test vector, used by the toy command.
DEMO_FEATURES = ((1.0, 3.0), (-2.0, 2.0), (3.0, 0.0), (3.0, 1.0))
DEMO_LABELS = (0, 1, 0, 1)
DEMO_TEST = (2.0, 2.0)


def _vector(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'x1,x2', got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-numeric vector component in {text!r}")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}")


def _emit(document: dict, csv_rows: tuple[list[str], list[list]] | None, args) -> None:
    """Write the document as JSON, or as CSV rows with a config comment."""
    if args.format == "json":
        text = json.dumps(document, sort_keys=True, indent=2) + "\n"
    else:
        if csv_rows is None:
            raise ValueError("this command has no CSV representation; use --format json")
        header, rows = csv_rows
        lines = ["# config: " + json.dumps(document["config"], sort_keys=True)]
        lines.append(",".join(header))
        lines.extend(",".join(_csv_cell(cell) for cell in row) for row in rows)
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_cell(cell) -> str:
    return repr(cell) if isinstance(cell, float) else str(cell)


def _mode_name(shots) -> str:
    return "exact" if shots is None else "shots"


def cmd_classify(args) -> int:
    config = {
        "command": "classify",
        "train": list(args.train),
        "label": args.label,
        "test": list(args.test),
        "shots": args.shots,
        "seed": args.seed,
    }
    result = classify_single(args.train, args.label, args.test, shots=args.shots, seed=args.seed)
    document = {
        "config": config,
        "prob_one": result.prob_one,
        "decision": result.decision,
        "mode": _mode_name(args.shots),
    }
    _emit(document, None, args)
    return 0


def cmd_ensemble(args) -> int:
    dataset = load_dataset_csv(args.data)
    config = {
        "command": "ensemble",
        "data": args.data,
        "test": list(args.test),
        "d": args.d,
        "mode": args.mode,
        "shots": args.shots,
        "seed": args.seed,
    }
    mode = MODE_FULL if args.mode == "full" else MODE_TRAJECTORIES
    run_config = EnsembleConfig(d=args.d, mode=mode, shots=args.shots, seed=args.seed)
    if mode == MODE_FULL:
        result = run_ensemble_full(dataset, args.test, run_config)
    else:
        result = run_ensemble_trajectories(dataset, args.test, run_config)
    document = {
        "config": config,
        "prob_one": result.prob_one,
        "decision": result.decision,
        "b": run_config.num_classifiers,
    }
    if result.per_trajectory is not None:
        document["per_trajectory"] = result.per_trajectory
    _emit(document, None, args)
    return 0


def _random_demo_dataset(rng: np.random.Generator) -> LabeledDataset:
    features = rng.standard_normal((4, 2))
    bad = np.linalg.norm(features, axis=1) == 0.0
    while bad.any():
        features[bad] = rng.standard_normal((int(bad.sum()), 2))
        bad = np.linalg.norm(features, axis=1) == 0.0
    return LabeledDataset(features, rng.integers(0, 2, size=4))


def _toy_row(dataset: LabeledDataset, test, shots, seed) -> dict:
    traj_config = EnsembleConfig(d=2, mode=MODE_TRAJECTORIES, shots=shots, seed=seed)
    full_config = EnsembleConfig(
        d=2, mode=MODE_FULL, shots=shots, seed=None if seed is None else subseed(seed, 1)
    )
    traj = run_ensemble_trajectories(dataset, test, traj_config)
    full = run_ensemble_full(dataset, test, full_config)
    avg = float(np.mean(traj.per_trajectory))
    return {
        "per_trajectory": traj.per_trajectory,
        "average": avg,
        "quantum_ensemble": full.prob_one,
        "difference": abs(avg - full.prob_one),
    }


def cmd_toy(args) -> int:
    config = {
        "command": "toy",
        "shots": args.shots,
        "seed": args.seed,
        "random_datasets": args.random_datasets,
    }
    demo = LabeledDataset(np.array(DEMO_FEATURES), np.array(DEMO_LABELS))
    document = {"config": config, "demo": _toy_row(demo, DEMO_TEST, args.shots, args.seed)}
    if args.random_datasets:
        seed = 0 if args.seed is None else args.seed
        rows = []
        for k in range(args.random_datasets):
            rng = np.random.default_rng(subseed(seed, 2, k))
            dataset = _random_demo_dataset(rng)
            row = _toy_row(dataset, rng.standard_normal(2), args.shots, subseed(seed, 3, k))
            row["dataset"] = dataset.features.tolist()
            row["labels"] = dataset.labels.tolist()
            rows.append(row)
        document["random"] = rows
    _emit(document, None, args)
    return 0


def cmd_theory(args) -> int:
    config = {
        "command": "theory",
        "e_model": list(args.e_model),
        "rho": list(args.rho),
        "d_max": args.d_max,
    }
    rows = []
    for e in args.e_model:
        for rho in args.rho:
            for d in range(args.d_max + 1):
                b = 1 << d
                err = oracle.ensemble_error(oracle.EnsembleErrorParams(e, rho, b))
                rows.append({"e_model": e, "rho": rho, "d": d, "b": b, "error": err})
    document = {"config": config, "rows": rows}
    csv_rows = (
        ["e_model", "rho", "d", "b", "error"],
        [[r["e_model"], r["rho"], r["d"], r["b"], r["error"]] for r in rows],
    )
    _emit(document, csv_rows, args)
    return 0


def _report_csv(reports) -> tuple[list[str], list[list]]:
    rows = []
    for report in reports:
        sigma = report.sigma if report.sigma is not None else ""
        for rep, (acc, br) in enumerate(zip(report.accuracies, report.briers)):
            rows.append([report.b, sigma, rep, acc, br])
    return ["b", "sigma", "rep", "accuracy", "brier"], rows


def _gaussian_spec(args) -> bench.GaussianSpec:
    return bench.GaussianSpec(
        n_per_class=args.n_per_class,
        mean0=tuple(args.mean0),
        mean1=tuple(args.mean1),
        sigma=args.sigma,
        seed=args.seed,
    )


def cmd_benchmark(args) -> int:
    config = {
        "command": "benchmark",
        "n_per_class": args.n_per_class,
        "mean0": list(args.mean0),
        "mean1": list(args.mean1),
        "sigma": args.sigma,
        "seed": args.seed,
        "b_values": list(args.b_values),
        "reps": args.reps,
        "train_frac": args.train_frac,
        "shots": args.shots,
    }
    reports = bench.run_benchmark(
        _gaussian_spec(args), args.b_values, args.reps, args.train_frac, args.shots
    )
    document = {"config": config, "reports": [r.summary() for r in reports]}
    _emit(document, _report_csv(reports), args)
    return 0


def cmd_sweep(args) -> int:
    config = {
        "command": "sweep",
        "n_per_class": args.n_per_class,
        "mean0": list(args.mean0),
        "mean1": list(args.mean1),
        "sigmas": list(args.sigmas),
        "seed": args.seed,
        "b_values": list(args.b_values),
        "reps": args.reps,
        "train_frac": args.train_frac,
        "shots": args.shots,
    }
    base = bench.GaussianSpec(
        n_per_class=args.n_per_class,
        mean0=tuple(args.mean0),
        mean1=tuple(args.mean1),
        sigma=args.sigmas[0],
        seed=args.seed,
    )
    reports = bench.run_overlap_sweep(base, args.sigmas, args.b_values, args.reps, args.train_frac, args.shots)
    document = {"config": config, "reports": [r.summary() for r in reports]}
    _emit(document, _report_csv(reports), args)
    return 0


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="JSON file of defaults; explicit flags override it")
    sub.add_argument("--format", choices=["json", "csv"], default="json")
    sub.add_argument("--out", help="write the document to this path instead of stdout")


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="qensemble",
        description="Simulated quantum ensemble classification with a swap-test cosine classifier.",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    subs = {}

    p = subs["classify"] = commands.add_parser("classify", help="classify one test vector from one training point")
    p.add_argument("--train", type=_vector, required=True, metavar="X1,X2")
    p.add_argument("--label", type=int, choices=[0, 1], required=True)
    p.add_argument("--test", type=_vector, required=True, metavar="X1,X2")
    p.add_argument("--shots", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_classify)

    p = subs["ensemble"] = commands.add_parser("ensemble", help="ensemble prediction over a CSV dataset")
    p.add_argument("--data", required=True, help="CSV file with header x1,x2,y")
    p.add_argument("--test", type=_vector, required=True, metavar="X1,X2")
    p.add_argument("--d", type=int, required=True, help="control qubits; ensemble size is 2^d")
    p.add_argument("--mode", choices=["full", "traj"], default="full")
    p.add_argument("--shots", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_ensemble)

    p = subs["toy"] = commands.add_parser("toy", help="four-point demo: per-classifier, average, ensemble")
    p.add_argument("--shots", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--random-datasets", type=int, default=0, metavar="K")
    p.set_defaults(func=cmd_toy)

    p = subs["theory"] = commands.add_parser("theory", help="ensemble error law over a parameter grid")
    p.add_argument("--e-model", type=_float_list, default=(0.3,), metavar="LIST")
    p.add_argument("--rho", type=_float_list, default=(0.0, 0.25, 0.5), metavar="LIST")
    p.add_argument("--d-max", type=int, default=10)
    p.set_defaults(func=cmd_theory)

    for name in ("benchmark", "sweep"):
        p = subs[name] = commands.add_parser(name, help=f"{name} on Gaussian class data")
        p.add_argument("--n-per-class", type=int, default=100)
        p.add_argument("--mean0", type=_vector, default=(1.0, 0.3), metavar="X1,X2")
        p.add_argument("--mean1", type=_vector, default=(0.3, 1.0), metavar="X1,X2")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--b-values", type=_int_list, default=(1, 2, 4, 8, 16), metavar="LIST")
        p.add_argument("--reps", type=int, default=10)
        p.add_argument("--train-frac", type=float, default=0.9)
        p.add_argument("--shots", type=int, default=None)
        if name == "benchmark":
            p.add_argument("--sigma", type=float, default=0.3)
            p.set_defaults(func=cmd_benchmark)
        else:
            p.add_argument("--sigmas", type=_float_list, default=(0.3, 0.6, 0.9, 1.2), metavar="LIST")
            p.set_defaults(func=cmd_sweep)

    for sub in subs.values():
        _add_common(sub)
    return parser, subs


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subs = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                defaults = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read config {args.config}: {exc}", file=sys.stderr)
            return 1
        sub = subs[args.command]
        known = {action.dest for action in sub._actions}
        unknown = set(defaults) - known
        if unknown:
            print(f"error: unknown config keys {sorted(unknown)}", file=sys.stderr)
            return 1
        converted = {}
        for key, value in defaults.items():
            converted[key] = tuple(value) if isinstance(value, list) else value
        sub.set_defaults(**converted)
        args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (EncodingError, CapacityError, DatasetFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
