"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines and
per-criterion timings. Tolerances are fixed here and nowhere else.
"""

import time
from contextlib import contextmanager

import numpy as np
import pytest

from qensemble import qsim
from qensemble.bench import GaussianSpec, run_benchmark, run_overlap_sweep
from qensemble.classifier import classify_single
from qensemble.encoding import RegisterLayout, build_state_prep
from qensemble.ensemble import (
    EnsembleConfig,
    MODE_TRAJECTORIES,
    build_ensemble_circuit,
    build_sampling_stage,
    random_swap_plan,
    run_ensemble_full,
    run_ensemble_trajectories,
)
from qensemble.oracle import EnsembleErrorParams, brute_force_state, classical_bagging, cosine_similarity, ensemble_error

from conftest import DEMO_FEATURES, DEMO_LABELS, DEMO_PROBS, DEMO_TEST, random_dataset
from test_oracle import kron_data_state


@contextmanager
def criterion(number: int, title: str, budget_s: float):
    start = time.perf_counter()
    try:
        yield
    except Exception:
        print(f"[criterion {number}] FAIL - {title}")
        raise
    elapsed = time.perf_counter() - start
    print(f"[criterion {number}] PASS - {title} ({elapsed:.1f}s)")
    assert elapsed < budget_s, f"criterion {number} exceeded its {budget_s:.0f}s budget"


def test_criterion_1_table_exactness():
    with criterion(1, "single-classifier probabilities and cosine values", budget_s=1.0):
        for vec, label, expected in zip(DEMO_FEATURES, DEMO_LABELS, DEMO_PROBS):
            result = classify_single(vec, int(label), DEMO_TEST)
            assert abs(result.prob_one - expected) < 1e-9
        for vec, expected in zip(DEMO_FEATURES, (0.89, 0.0, 0.71, 0.89)):
            assert abs(cosine_similarity(vec, DEMO_TEST) - expected) < 5e-3


def test_criterion_2_single_measurement_ensemble(demo_dataset):
    with criterion(2, "full-circuit readout equals the classical average", budget_s=1.0):
        config = EnsembleConfig(d=2)
        _, layout = build_ensemble_circuit(demo_dataset, DEMO_TEST, config)
        assert layout.num_qubits == 12
        result = run_ensemble_full(demo_dataset, DEMO_TEST, config)
        average = classical_bagging(demo_dataset, DEMO_TEST, range(4))
        assert abs(result.prob_one - 0.4375) < 1e-9
        assert abs(result.prob_one - average) < 1e-9


def test_criterion_3_sampling_stage_oracle_equivalence(demo_dataset):
    with criterion(3, "sampling stage matches the dense-matrix oracle", budget_s=30.0):
        data = kron_data_state(demo_dataset)
        for d in (1, 2, 3):
            layout = RegisterLayout.for_problem(d, 4)
            for k in range(20):
                plan = random_swap_plan(d, 4, seed=100 * d + k)
                circuit = qsim.Circuit(layout.num_qubits)
                for q in layout.control:
                    circuit.append(qsim.h(q))
                circuit.extend(build_state_prep(demo_dataset, (1, 0), layout))
                circuit.extend(build_sampling_stage(plan, layout))
                state = qsim.run_circuit(circuit)
                expected = brute_force_state(plan, data)
                inner = 1 << (d + data.num_qubits)
                assert np.max(np.abs(state.amplitudes[:inner] - expected.amplitudes)) < 1e-10
                assert np.max(np.abs(state.amplitudes[inner:])) == 0.0


def test_criterion_4_mode_equivalence():
    with criterion(4, "full circuit vs trajectories, exact and at 8192 shots", budget_s=120.0):
        rng = np.random.default_rng(2024)
        for k in range(20):
            dataset = random_dataset(rng, 4)
            test = rng.uniform(-2.0, 2.0, 2)
            while np.linalg.norm(test) < 1e-3:
                test = rng.uniform(-2.0, 2.0, 2)
            exact_full = run_ensemble_full(dataset, test, EnsembleConfig(d=2))
            exact_traj = run_ensemble_trajectories(
                dataset, test, EnsembleConfig(d=2, mode=MODE_TRAJECTORIES)
            )
            assert abs(exact_full.prob_one - exact_traj.prob_one) < 1e-9
            shot_full = run_ensemble_full(
                dataset, test, EnsembleConfig(d=2, shots=8192, seed=3 * k)
            )
            shot_traj = run_ensemble_trajectories(
                dataset, test, EnsembleConfig(d=2, mode=MODE_TRAJECTORIES, shots=8192, seed=3 * k + 1)
            )
            assert abs(shot_full.prob_one - shot_traj.prob_one) < 0.03


def test_criterion_5_gaussian_benchmark():
    with criterion(5, "Gaussian benchmark bands and size trend", budget_s=300.0):
        spec = GaussianSpec(n_per_class=100, mean0=(1.0, 0.3), mean1=(0.3, 1.0), sigma=0.3, seed=2025)
        reports = run_benchmark(spec, [1, 2, 4, 8, 16], repetitions=10, train_frac=0.9)
        by_b = {r.b: r for r in reports}
        assert 0.40 <= by_b[1].accuracy_mean <= 0.70
        assert 0.15 <= by_b[1].brier_mean <= 0.30
        assert by_b[16].accuracy_mean >= 0.90
        assert by_b[16].brier_mean <= 0.18
        means = [by_b[b].accuracy_mean for b in (1, 2, 4, 8, 16)]
        inversions = [max(0.0, a - b) for a, b in zip(means, means[1:])]
        assert sum(1 for inv in inversions if inv > 0) <= 1
        assert all(inv <= 0.03 for inv in inversions)


def test_criterion_6_error_law():
    with criterion(6, "ensemble error law grid, monotonicity, large-B limit", budget_s=30.0):
        e_grid = np.linspace(0.05, 0.5, 10)
        rho_grid = np.linspace(0.0, 1.0, 10)
        for e in e_grid:
            for rho in rho_grid:
                values = []
                for d in range(11):
                    b = 1 << d
                    value = ensemble_error(EnsembleErrorParams(float(e), float(rho), b))
                    assert abs(value - (1 + rho * (b - 1)) / b * e) < 1e-12
                    values.append(value)
                assert all(a >= b - 1e-15 for a, b in zip(values, values[1:]))
                limit = ensemble_error(EnsembleErrorParams(float(e), float(rho), 1 << 20))
                assert abs(limit - rho * e) < 1e-4


def test_criterion_7_variance_reduction_sweep():
    with criterion(7, "overlap sweep: ensemble std beats single-classifier std", budget_s=600.0):
        sigmas = [0.3, 0.4, 0.5, 0.6]
        wins = {sigma: 0 for sigma in sigmas}
        for master in range(10):
            base = GaussianSpec(n_per_class=100, mean0=(1.0, 0.3), mean1=(0.3, 1.0), sigma=sigmas[0], seed=master)
            reports = run_overlap_sweep(base, sigmas, [1, 16], repetitions=30)
            by_key = {(r.sigma, r.b): r for r in reports}
            for sigma in sigmas:
                if by_key[(sigma, 16)].accuracy_std <= by_key[(sigma, 1)].accuracy_std:
                    wins[sigma] += 1
        assert all(count >= 8 for count in wins.values()), wins


def test_criterion_8_single_classifier_instance(demo_dataset):
    with criterion(8, "exactly one classifier sub-circuit for every d", budget_s=10.0):
        for d in (1, 2, 3):
            circuit, layout = build_ensemble_circuit(demo_dataset, DEMO_TEST, EnsembleConfig(d=d))
            swap_tests = [
                op
                for op in circuit.ops
                if op.kind == qsim.KIND_CSWAP and layout.test in op.qubits
            ]
            assert len(swap_tests) == 1
            prediction_gates = [op for op in circuit.ops if layout.prediction in op.qubits]
            assert len(prediction_gates) == 4  # H, controlled-swap, H, label-controlled X
