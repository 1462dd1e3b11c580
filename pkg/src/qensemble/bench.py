"""Experiment harness: Gaussian data, metrics, repeated-trial runners.

Benchmarks run the ensemble in trajectory mode with exact measurement by
default; pass shots to emulate sampled readout. Repetitions resample
both the dataset and the train/test split.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .classifier import classify_single
from .encoding import LabeledDataset
from .ensemble import EnsembleConfig, MODE_TRAJECTORIES, run_ensemble_trajectories
from .seeding import STREAM_DATA, STREAM_SELECT, STREAM_SHOTS, STREAM_SPLIT, subseed


@dataclass(frozen=True)
class GaussianSpec:
    """Two bivariate Gaussian classes with a common diagonal std."""

    n_per_class: int
    mean0: tuple[float, float]
    mean1: tuple[float, float]
    sigma: float
    seed: int

    def __post_init__(self) -> None:
        if self.n_per_class < 1:
            raise ValueError("need at least one point per class")
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")


@dataclass(frozen=True)
class TrialReport:
    """Mean and spread of the metrics over repeated trials."""

    b: int
    accuracy_mean: float
    accuracy_std: float
    brier_mean: float
    brier_std: float
    repetitions: int
    sigma: float | None = None
    accuracies: tuple[float, ...] = field(default=(), repr=False)
    briers: tuple[float, ...] = field(default=(), repr=False)

    def summary(self) -> dict:
        out = {
            "b": self.b,
            "accuracy_mean": self.accuracy_mean,
            "accuracy_std": self.accuracy_std,
            "brier_mean": self.brier_mean,
            "brier_std": self.brier_std,
            "repetitions": self.repetitions,
        }
        if self.sigma is not None:
            out["sigma"] = self.sigma
        if self.accuracies:
            q1, q2, q3 = np.percentile(self.accuracies, [25, 50, 75])
            out["accuracy_quartiles"] = [float(q1), float(q2), float(q3)]
            q1, q2, q3 = np.percentile(self.briers, [25, 50, 75])
            out["brier_quartiles"] = [float(q1), float(q2), float(q3)]
        return out


def gen_gaussian_dataset(spec: GaussianSpec) -> LabeledDataset:
    """Sample n_per_class points per class; zero vectors are redrawn."""
    rng = np.random.default_rng(spec.seed)
    blocks = []
    for mean in (spec.mean0, spec.mean1):
        pts = np.asarray(mean, dtype=float) + spec.sigma * rng.standard_normal((spec.n_per_class, 2))
        bad = np.linalg.norm(pts, axis=1) == 0.0
        while bad.any():
            pts[bad] = np.asarray(mean, dtype=float) + spec.sigma * rng.standard_normal((int(bad.sum()), 2))
            bad = np.linalg.norm(pts, axis=1) == 0.0
        blocks.append(pts)
    features = np.vstack(blocks)
    labels = np.repeat([0, 1], spec.n_per_class)
    return LabeledDataset(features, labels)


def accuracy(decisions, labels) -> float:
    decisions = np.asarray(decisions)
    labels = np.asarray(labels)
    if decisions.shape != labels.shape or decisions.size == 0:
        raise ValueError("decisions and labels must be equal-length and non-empty")
    return float(np.mean(decisions == labels))


def brier(probs, labels) -> float:
    """Mean squared difference between class-1 probabilities and labels."""
    probs = np.asarray(probs, dtype=float)
    labels = np.asarray(labels, dtype=float)
    if probs.shape != labels.shape or probs.size == 0:
        raise ValueError("probs and labels must be equal-length and non-empty")
    if probs.min() < 0.0 or probs.max() > 1.0:
        raise ValueError("probabilities must lie in [0, 1]")
    return float(np.mean((probs - labels) ** 2))


def _split(rng: np.random.Generator, n: int, train_frac: float) -> tuple[np.ndarray, np.ndarray]:
    if not 0.0 < train_frac < 1.0:
        raise ValueError("train_frac must lie strictly between 0 and 1")
    n_train = int(n * train_frac)
    if n_train == 0 or n_train == n:
        raise ValueError(f"train_frac={train_frac} leaves an empty split for n={n}")
    order = rng.permutation(n)
    return order[:n_train], order[n_train:]


def _cycling_choice(rng: np.random.Generator, pool: np.ndarray, k: int) -> np.ndarray:
    """k draws without replacement while the pool lasts, cycling after."""
    if k <= pool.size:
        return rng.choice(pool, size=k, replace=False)
    return np.resize(rng.permutation(pool), k)


def _select_training_points(rng: np.random.Generator, labels: np.ndarray, b: int) -> np.ndarray:
    """B training indices, stratified half per class for b >= 2.

    A committee drawn blindly lands both members of a B=2 ensemble in the
    same class about half the time, and such committees can only repeat
    that class; balancing the draw is what makes small ensembles beat the
    single classifier. b = 1 and single-class training sets fall back to
    an unstratified draw.
    """
    n_train = labels.shape[0]
    pools = [np.flatnonzero(labels == c) for c in (0, 1)]
    if b < 2 or pools[0].size == 0 or pools[1].size == 0:
        return _cycling_choice(rng, np.arange(n_train), b)
    half = b // 2
    return np.concatenate([_cycling_choice(rng, pools[0], half), _cycling_choice(rng, pools[1], b - half)])


def predict_point(
    train: LabeledDataset, test_point, b: int, selection_seed, shots: int | None = None, shots_seed=None
) -> tuple[float, int]:
    """Ensemble probability and decision for one test point.

    Selects b training points from ``train`` (seeded), then runs the
    trajectory-mode ensemble over them; b = 1 degenerates to a single
    classifier call.
    """
    rng = np.random.default_rng(selection_seed)
    chosen = _select_training_points(rng, train.labels, b)
    if b == 1:
        idx = int(chosen[0])
        result = classify_single(
            train.features[idx], int(train.labels[idx]), test_point, shots=shots, seed=shots_seed
        )
        return result.prob_one, result.decision
    subset = LabeledDataset(train.features[chosen], train.labels[chosen])
    config = EnsembleConfig(
        d=int(b).bit_length() - 1, mode=MODE_TRAJECTORIES, shots=shots, seed=shots_seed
    )
    result = run_ensemble_trajectories(subset, test_point, config)
    return result.prob_one, result.decision


def _validate_b_values(b_values) -> list[int]:
    out = [int(b) for b in b_values]
    for b in out:
        if b < 1 or b & (b - 1):
            raise ValueError(f"ensemble sizes must be powers of two, got {b}")
    return out


def run_benchmark(
    spec: GaussianSpec,
    b_values,
    repetitions: int,
    train_frac: float = 0.9,
    shots: int | None = None,
) -> list[TrialReport]:
    """Repeated-trial comparison of ensemble sizes on Gaussian data.

    Each repetition redraws the dataset and the train/test split; each
    test point gets its own seeded selection of B training points. All
    sub-streams derive from ``spec.seed``.
    """
    b_values = _validate_b_values(b_values)
    if repetitions < 1:
        raise ValueError("repetitions must be at least 1")
    reports = []
    for b in b_values:
        accs, brs = [], []
        for rep in range(repetitions):
            data = gen_gaussian_dataset(replace(spec, seed=subseed(spec.seed, STREAM_DATA, rep)))
            split_rng = np.random.default_rng(subseed(spec.seed, STREAM_SPLIT, rep))
            train_idx, test_idx = _split(split_rng, len(data), train_frac)
            train = LabeledDataset(data.features[train_idx], data.labels[train_idx])
            probs, decisions = [], []
            for j, idx in enumerate(test_idx):
                p, dec = predict_point(
                    train,
                    data.features[idx],
                    b,
                    selection_seed=subseed(spec.seed, STREAM_SELECT, b, rep, j),
                    shots=shots,
                    shots_seed=None if shots is None else subseed(spec.seed, STREAM_SHOTS, b, rep, j),
                )
                probs.append(p)
                decisions.append(dec)
            accs.append(accuracy(decisions, data.labels[test_idx]))
            brs.append(brier(probs, data.labels[test_idx]))
        reports.append(
            TrialReport(
                b=b,
                accuracy_mean=float(np.mean(accs)),
                accuracy_std=float(np.std(accs, ddof=1)) if repetitions > 1 else 0.0,
                brier_mean=float(np.mean(brs)),
                brier_std=float(np.std(brs, ddof=1)) if repetitions > 1 else 0.0,
                repetitions=repetitions,
                sigma=spec.sigma,
                accuracies=tuple(accs),
                briers=tuple(brs),
            )
        )
    return reports


def run_overlap_sweep(
    base: GaussianSpec,
    sigmas,
    b_values,
    repetitions: int,
    train_frac: float = 0.9,
    shots: int | None = None,
) -> list[TrialReport]:
    """Grid of TrialReports over increasing class overlap, keyed by (sigma, b)."""
    sigmas = [float(s) for s in sigmas]
    if sigmas != sorted(sigmas):
        raise ValueError("sigmas must be increasing")
    reports = []
    for k, sigma in enumerate(sigmas):
        spec = replace(base, sigma=sigma, seed=subseed(base.seed, k))
        reports.extend(run_benchmark(spec, b_values, repetitions, train_frac, shots))
    return reports
