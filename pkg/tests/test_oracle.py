import math

import numpy as np
import pytest

from qensemble import qsim
from qensemble.encoding import LabeledDataset, encode_vector
from qensemble.ensemble import SwapPlan, default_swap_plan
from qensemble.errors import CapacityError, EncodingError
from qensemble.oracle import (
    EnsembleErrorParams,
    brute_force_state,
    classical_bagging,
    cosine_similarity,
    ensemble_error,
    prob_class1,
)

from conftest import DEMO_FEATURES, DEMO_LABELS, DEMO_PROBS, DEMO_TEST


class TestCosineSimilarity:
    # two-decimal reference values for the demo points against (2, 2)
    @pytest.mark.parametrize(
        "vec,reference", [((1, 3), 0.89), ((-2, 2), 0.0), ((3, 0), 0.71), ((3, 1), 0.89)]
    )
    def test_two_decimal_reference_values(self, vec, reference):
        assert cosine_similarity(vec, DEMO_TEST) == pytest.approx(reference, abs=5e-3)

    def test_exact_values(self):
        assert cosine_similarity((1, 3), (2, 2)) == pytest.approx(8 / math.sqrt(80), abs=1e-12)
        assert cosine_similarity((-2, 2), (2, 2)) == pytest.approx(0.0, abs=1e-12)
        assert cosine_similarity((3, 0), (2, 2)) == pytest.approx(6 / math.sqrt(72), abs=1e-12)

    def test_zero_vector_rejected(self):
        with pytest.raises(EncodingError):
            cosine_similarity((0, 0), (1, 1))


class TestProbClass1:
    @pytest.mark.parametrize(
        "vec,label,expected", list(zip(DEMO_FEATURES, DEMO_LABELS, DEMO_PROBS))
    )
    def test_demo_rows(self, vec, label, expected):
        assert prob_class1(vec, int(label), DEMO_TEST) == pytest.approx(expected, abs=1e-12)

    def test_orthogonal(self):
        assert prob_class1((1, 0), 0, (0, 1)) == pytest.approx(0.5, abs=1e-12)

    def test_bounds_by_label(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            a, b = rng.uniform(-5, 5, (2, 2))
            if np.linalg.norm(a) < 1e-6 or np.linalg.norm(b) < 1e-6:
                continue
            assert 0.0 <= prob_class1(a, 0, b) <= 0.5 + 1e-12
            assert 0.5 - 1e-12 <= prob_class1(a, 1, b) <= 1.0


class TestClassicalBagging:
    def test_demo_average(self, demo_dataset):
        assert classical_bagging(demo_dataset, DEMO_TEST, [0, 1, 2, 3]) == pytest.approx(
            sum(DEMO_PROBS) / 4, abs=1e-12
        )

    def test_single_row(self, demo_dataset):
        assert classical_bagging(demo_dataset, DEMO_TEST, [0]) == pytest.approx(0.10, abs=1e-12)

    def test_duplicate_selection(self, demo_dataset):
        assert classical_bagging(demo_dataset, DEMO_TEST, [1, 1]) == pytest.approx(0.50, abs=1e-12)

    def test_empty_selection_rejected(self, demo_dataset):
        with pytest.raises(ValueError):
            classical_bagging(demo_dataset, DEMO_TEST, [])


class TestEnsembleError:
    def test_fully_correlated_no_gain(self):
        assert ensemble_error(EnsembleErrorParams(0.2, 1.0, 64)) == pytest.approx(0.2, abs=1e-15)

    def test_single_model_identity(self):
        assert ensemble_error(EnsembleErrorParams(0.3, 0.0, 1)) == pytest.approx(0.3, abs=1e-15)

    def test_direct_evaluation(self):
        assert ensemble_error(EnsembleErrorParams(0.3, 0.5, 16)) == pytest.approx(
            0.159375, abs=1e-12
        )

    def test_monte_carlo_cross_check(self):
        # equicorrelated Gaussian errors: Var(mean) must follow the law
        rng = np.random.default_rng(42)
        e_model, rho, b, draws = 0.3, 0.5, 16, 400_000
        common = rng.standard_normal(draws)
        individual = rng.standard_normal((draws, b))
        errors = math.sqrt(rho) * common[:, None] + math.sqrt(1 - rho) * individual
        errors *= math.sqrt(e_model)
        mc = float(np.mean(np.mean(errors, axis=1) ** 2))
        assert mc == pytest.approx(ensemble_error(EnsembleErrorParams(e_model, rho, b)), rel=0.02)

    def test_monotone_in_b(self):
        for e in (0.1, 0.3, 0.5):
            for rho in np.linspace(0, 1, 11):
                values = [ensemble_error(EnsembleErrorParams(e, rho, 1 << d)) for d in range(12)]
                assert all(a >= b - 1e-15 for a, b in zip(values, values[1:]))
                if rho == 1.0:
                    assert all(v == pytest.approx(e, abs=1e-12) for v in values)

    def test_large_b_limit(self):
        for rho in (0.0, 0.3, 0.9):
            value = ensemble_error(EnsembleErrorParams(0.3, rho, 1 << 20))
            assert value == pytest.approx(0.3 * rho, abs=1e-4)

    def test_invalid_params(self):
        with pytest.raises(ValueError):
            EnsembleErrorParams(0.3, 1.5, 4)
        with pytest.raises(ValueError):
            EnsembleErrorParams(-0.1, 0.5, 4)
        with pytest.raises(ValueError):
            EnsembleErrorParams(0.3, 0.5, 0)


def kron_data_state(dataset: LabeledDataset) -> qsim.StateVector:
    """Product data state built independently of the gate engine."""
    amps = np.array([1.0 + 0j])
    for vec in dataset.features:
        amp0, amp1 = encode_vector(vec)
        amps = np.kron(np.array([amp0, amp1], dtype=complex), amps)
    for label in dataset.labels:
        single = np.array([0.0, 1.0] if label else [1.0, 0.0], dtype=complex)
        amps = np.kron(single, amps)
    return qsim.StateVector(2 * len(dataset), amps)


class TestBruteForceState:
    def test_identity_plan_gives_uniform_control(self, demo_dataset):
        data = kron_data_state(demo_dataset)
        plan = SwapPlan(1, (((), ()),))
        state = brute_force_state(plan, data)
        expected = np.kron(data.amplitudes, np.full(2, 1 / np.sqrt(2)))
        assert np.allclose(state.amplitudes, expected, atol=1e-12)

    def test_unit_norm(self, demo_dataset):
        data = kron_data_state(demo_dataset)
        state = brute_force_state(default_swap_plan(2, 4), data)
        assert state.norm_error() < 1e-10

    def test_capacity_cap(self, demo_dataset):
        data = kron_data_state(demo_dataset)
        with pytest.raises(CapacityError):
            brute_force_state(default_swap_plan(7, 4), data)
