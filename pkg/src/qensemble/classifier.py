"""Swap-test cosine classifier.

Compares a training qubit and a test qubit through a swap test read out
on a prediction ancilla, then flips the ancilla conditioned on the
training label. With label 0 the ancilla's one-probability is
1/2 - cos^2/2; with label 1 it is 1/2 + cos^2/2. The prediction is
therefore never more confident than the angle between the two vectors
warrants, and orthogonal vectors give exactly 1/2.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import qsim
from .encoding import encoding_angle


@dataclass(frozen=True)
class CosineClassifierSpec:
    """Qubit indices the classifier sub-circuit reads and writes."""

    train_qubit: int
    label_qubit: int
    test_qubit: int
    prediction_qubit: int

    def __post_init__(self) -> None:
        indices = (self.train_qubit, self.label_qubit, self.test_qubit, self.prediction_qubit)
        if len(set(indices)) != 4:
            raise ValueError(f"classifier qubit indices must be distinct, got {indices}")


@dataclass
class PredictionResult:
    """Estimated class-1 probability plus the thresholded decision.

    ``decision`` is 1 exactly when ``prob_one`` exceeds 1/2; the
    orthogonal tie at 1/2 resolves to 0. ``per_trajectory`` is filled by
    trajectory-mode ensembles and stays None for single-register readout.
    """

    prob_one: float
    decision: int
    per_trajectory: list[float] | None = None


def decide(prob_one: float) -> int:
    return 1 if prob_one > 0.5 else 0


def build_cosine_classifier(spec: CosineClassifierSpec, num_qubits: int | None = None) -> qsim.Circuit:
    """The four-gate classifier: H, controlled-swap, H, label-controlled X."""
    if num_qubits is None:
        num_qubits = max(spec.train_qubit, spec.label_qubit, spec.test_qubit, spec.prediction_qubit) + 1
    circuit = qsim.Circuit(num_qubits)
    circuit.append(qsim.h(spec.prediction_qubit))
    circuit.append(qsim.cswap(spec.prediction_qubit, spec.train_qubit, spec.test_qubit))
    circuit.append(qsim.h(spec.prediction_qubit))
    circuit.append(qsim.cx(spec.label_qubit, spec.prediction_qubit))
    return circuit


_SINGLE = CosineClassifierSpec(train_qubit=0, label_qubit=1, test_qubit=2, prediction_qubit=3)


def single_point_circuit(train, label: int, test) -> qsim.Circuit:
    """Four-qubit circuit classifying ``test`` against one labeled training point."""
    if label not in (0, 1):
        raise ValueError(f"label must be 0 or 1, got {label}")
    circuit = qsim.Circuit(4)
    theta = encoding_angle(train)
    if theta != 0.0:
        circuit.append(qsim.ry(_SINGLE.train_qubit, 2.0 * theta))
    if label == 1:
        circuit.append(qsim.x(_SINGLE.label_qubit))
    theta = encoding_angle(test)
    if theta != 0.0:
        circuit.append(qsim.ry(_SINGLE.test_qubit, 2.0 * theta))
    circuit.extend(build_cosine_classifier(_SINGLE, num_qubits=4))
    return circuit


def classify_single(train, label: int, test, shots: int | None = None, seed=None) -> PredictionResult:
    """Classify one test vector from one training observation.

    Exact mode (``shots=None``) reads the prediction probability straight
    from the statevector; shots mode estimates it from seeded sampling.
    """
    state = qsim.run_circuit(single_point_circuit(train, label, test))
    if shots is None:
        p = qsim.prob_one(state, _SINGLE.prediction_qubit)
    else:
        p = qsim.sample_shots(state, _SINGLE.prediction_qubit, shots, seed).estimated_prob_one
    return PredictionResult(prob_one=p, decision=decide(p))
