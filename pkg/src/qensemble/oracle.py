"""Classical ground truth for the quantum paths.

Closed-form cosine/probability formulas, classical averaging, the
ensemble error law, and a dense-matrix statevector construction that
rebuilds the sampling stage by explicit 2^n x 2^n operator products.
Everything here exists to validate the gate-kernel engine and the
circuit outputs; none of it is used to run experiments.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from . import qsim
from .encoding import LabeledDataset
from .errors import CapacityError, EncodingError

# Dense matrices above this size exist only to blow up memory.
DENSE_MAX_QUBITS = 14


def cosine_similarity(a, b) -> float:
    """cos of the angle between ``a`` and ``b``, in [-1, 1]."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    na, nb = float(np.linalg.norm(a)), float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        raise EncodingError("cosine similarity is undefined for a zero vector")
    return float(np.dot(a, b) / (na * nb))


def prob_class1(train, label: int, test) -> float:
    """Closed-form class-1 probability of the cosine classifier.

    The classifier assigns the training point's label with probability
    1/2 + cos^2/2 (cos is the conventional cosine similarity, despite the
    looser "distance" name this quantity sometimes gets).
    """
    if label not in (0, 1):
        raise ValueError(f"label must be 0 or 1, got {label}")
    p_same = 0.5 + cosine_similarity(train, test) ** 2 / 2.0
    return p_same if label == 1 else 1.0 - p_same


def classical_bagging(dataset: LabeledDataset, test, selection) -> float:
    """Mean of prob_class1 over the selected training points."""
    selection = list(selection)
    if not selection:
        raise ValueError("selection must not be empty")
    probs = [prob_class1(dataset.features[i], int(dataset.labels[i]), test) for i in selection]
    return float(np.mean(probs))


@dataclass(frozen=True)
class EnsembleErrorParams:
    e_model: float
    rho: float
    b: int

    def __post_init__(self) -> None:
        if self.e_model < 0:
            raise ValueError("e_model must be non-negative")
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError("rho must lie in [0, 1]")
        if self.b < 1:
            raise ValueError("ensemble size must be at least 1")


def ensemble_error(p: EnsembleErrorParams) -> float:
    """Expected error of an average of b models with error correlation rho."""
    return (1.0 + p.rho * (p.b - 1)) / p.b * p.e_model


# ---------------------------------------------------------------------------
# Dense operator construction


def dense_gate(op: qsim.GateOp, num_qubits: int) -> np.ndarray:
    """Full 2^n x 2^n matrix of a single gate, built by index bookkeeping.

    This is the brute-force counterpart of the in-place kernel in
    :mod:`qensemble.qsim` and shares only its index conventions.
    """
    if num_qubits > DENSE_MAX_QUBITS:
        raise CapacityError(f"dense operators capped at {DENSE_MAX_QUBITS} qubits, got {num_qubits}")
    dim = 1 << num_qubits
    s = np.arange(dim)
    ctrl_ok = np.ones(dim, dtype=bool)
    for qubit, value in op.controls:
        ctrl_ok &= ((s >> qubit) & 1) == value

    if op.kind in (qsim.KIND_SWAP, qsim.KIND_CSWAP):
        small = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
    else:
        small = op.matrix

    targets = op.targets
    k = len(targets)
    mat = np.zeros((dim, dim), dtype=complex)
    off = s[~ctrl_ok]
    mat[off, off] = 1.0
    on = s[ctrl_ok]
    clear = on.copy()
    for t in targets:
        clear &= ~(1 << t)
    col_bits = sum(((on >> t) & 1) << j for j, t in enumerate(targets))
    for row_bits in range(1 << k):
        rows = clear | sum(((row_bits >> j) & 1) << t for j, t in enumerate(targets))
        mat[rows, on] = small[row_bits, col_bits]
    return mat


def _step_position_map(transpositions) -> dict[int, int]:
    """Composite point-position permutation of one ordered transposition list."""
    pos: dict[int, int] = {}
    for a, b in transpositions:
        pos.setdefault(a, a)
        pos.setdefault(b, b)
        for key, cur in pos.items():
            if cur == a:
                pos[key] = b
            elif cur == b:
                pos[key] = a
    return pos


def _data_permutation_indices(transpositions, d: int, n_points: int) -> np.ndarray:
    """Basis-index destinations of the data permutation over the joint space."""
    n = d + 2 * n_points
    s = np.arange(1 << n)
    moved = _step_position_map(transpositions)
    kept = ~sum((1 << (d + p)) | (1 << (d + n_points + p)) for p in moved) if moved else -1
    dest = s & kept
    for p, q in moved.items():
        dest |= ((s >> (d + p)) & 1) << (d + q)
        dest |= ((s >> (d + n_points + p)) & 1) << (d + n_points + q)
    return dest


def _controlled_permutation(transpositions, control_qubit: int, d: int, n_points: int) -> np.ndarray:
    n = d + 2 * n_points
    dim = 1 << n
    s = np.arange(dim)
    dest = _data_permutation_indices(transpositions, d, n_points)
    on = ((s >> control_qubit) & 1) == 1
    rows = np.where(on, dest, s)
    mat = np.zeros((dim, dim))
    mat[rows, s] = 1.0
    return mat


def _bit_flip_matrix(qubit: int, num_qubits: int) -> np.ndarray:
    dim = 1 << num_qubits
    s = np.arange(dim)
    mat = np.zeros((dim, dim))
    mat[s ^ (1 << qubit), s] = 1.0
    return mat


def brute_force_state(plan, initial_data_state: qsim.StateVector) -> qsim.StateVector:
    """Sampling-stage output rebuilt from explicit dense operator products.

    Control qubits occupy indices 0..d-1, the data register follows. The
    i-th step applies, in order: the step's first permutation controlled
    on qubit i-1 being 1, a bit flip of qubit i-1, then the second
    permutation under the same control. The Walsh-Hadamard on the control
    register is applied first.
    """
    d = plan.d
    n_points = initial_data_state.num_qubits // 2
    if initial_data_state.num_qubits != 2 * n_points:
        raise ValueError("data state must hold a feature qubit and a label qubit per point")
    n = d + initial_data_state.num_qubits
    if n > DENSE_MAX_QUBITS:
        raise CapacityError(f"dense oracle capped at {DENSE_MAX_QUBITS} qubits, needs {n}")

    hadamard = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
    walsh = reduce(np.kron, [hadamard] * d)
    full_walsh = np.kron(np.eye(1 << initial_data_state.num_qubits), walsh)

    def matvec(mat: np.ndarray, vec: np.ndarray) -> np.ndarray:
        # all operators here are real; split the product to stay on BLAS paths
        return mat @ vec.real + 1j * (mat @ vec.imag)

    state = np.kron(initial_data_state.amplitudes, np.eye(1, 1 << d)[0])
    state = matvec(full_walsh, state)
    for i, (first, second) in enumerate(plan.steps):
        state = matvec(_controlled_permutation(first, i, d, n_points), state)
        state = matvec(_bit_flip_matrix(i, n), state)
        state = matvec(_controlled_permutation(second, i, d, n_points), state)
    return qsim.StateVector(n, state)
