"""Quantum ensemble classification on a dense statevector simulator.

A swap-test cosine classifier is bagged by entangling a control register
with permuted copies of the training data, so one circuit execution
yields the ensemble-averaged prediction on a single readout qubit.
"""

from .bench import GaussianSpec, TrialReport, accuracy, brier, gen_gaussian_dataset, run_benchmark, run_overlap_sweep
from .classifier import CosineClassifierSpec, PredictionResult, build_cosine_classifier, classify_single
from .encoding import LabeledDataset, RegisterLayout, build_state_prep, encode_vector, load_dataset_csv
from .ensemble import (
    EnsembleConfig,
    SwapPlan,
    active_points,
    build_ensemble_circuit,
    build_sampling_stage,
    default_swap_plan,
    random_swap_plan,
    run_ensemble,
    run_ensemble_full,
    run_ensemble_trajectories,
)
from .errors import CapacityError, DatasetFormatError, EncodingError
from .estimators import QuantumCosineClassifier, QuantumEnsembleClassifier
from .oracle import (
    EnsembleErrorParams,
    brute_force_state,
    classical_bagging,
    cosine_similarity,
    ensemble_error,
    prob_class1,
)
from .qsim import Circuit, GateOp, ShotResult, StateVector, apply_gate, new_zero_state, prob_one, sample_shots

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "Circuit",
    "CosineClassifierSpec",
    "DatasetFormatError",
    "EncodingError",
    "EnsembleConfig",
    "EnsembleErrorParams",
    "GateOp",
    "GaussianSpec",
    "LabeledDataset",
    "PredictionResult",
    "QuantumCosineClassifier",
    "QuantumEnsembleClassifier",
    "RegisterLayout",
    "ShotResult",
    "StateVector",
    "SwapPlan",
    "TrialReport",
    "accuracy",
    "active_points",
    "apply_gate",
    "brier",
    "brute_force_state",
    "build_cosine_classifier",
    "build_ensemble_circuit",
    "build_sampling_stage",
    "build_state_prep",
    "classical_bagging",
    "classify_single",
    "cosine_similarity",
    "default_swap_plan",
    "encode_vector",
    "ensemble_error",
    "gen_gaussian_dataset",
    "load_dataset_csv",
    "new_zero_state",
    "prob_class1",
    "prob_one",
    "random_swap_plan",
    "run_benchmark",
    "run_ensemble",
    "run_ensemble_full",
    "run_ensemble_trajectories",
    "run_overlap_sweep",
    "sample_shots",
]
