"""Minimal dense statevector simulator.

State allocation, unitary gate application with arbitrary basis-value
controls, exact single-qubit probabilities and seeded shot sampling.

Conventions used everywhere in this package:

* qubit 0 is the least-significant bit of the basis-state index;
* gates mutate the statevector in place (single-writer); independent
  states may be processed in parallel without coordination.

The kernel iterates index pairs that differ in the target bit, masked by
the control condition. It never materialises a full 2^n x 2^n matrix;
the dense-matrix construction lives in :mod:`qensemble.oracle` and is
used only to cross-check this kernel.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError

# Capacity and tolerance defaults. MAX_QUBITS = 26 keeps a single state
# under ~1 GiB of complex128 amplitudes.
MAX_QUBITS = 26
UNITARY_ATOL = 1e-10
NORM_ATOL = 1e-10

KIND_UNITARY = "unitary"
KIND_CONTROLLED = "controlled unitary"
KIND_SWAP = "swap"
KIND_CSWAP = "controlled-swap"

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)
_X = np.array([[0, 1], [1, 0]], dtype=complex)


def _is_unitary(matrix: np.ndarray) -> bool:
    return np.allclose(matrix.conj().T @ matrix, np.eye(matrix.shape[0]), atol=UNITARY_ATOL)


@dataclass(frozen=True)
class GateOp:
    """One gate application: a small unitary embedded at ``targets``, gated on ``controls``.

    ``controls`` is a tuple of ``(qubit, required_basis_value)`` pairs; the
    embedded unitary acts only on basis states where every control qubit
    holds its required value (0 or 1).
    """

    kind: str
    targets: tuple[int, ...]
    matrix: np.ndarray | None = None
    controls: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        touched = list(self.targets) + [q for q, _ in self.controls]
        if len(set(touched)) != len(touched):
            raise ValueError(f"targets and controls must be pairwise disjoint, got {touched}")
        for _, value in self.controls:
            if value not in (0, 1):
                raise ValueError(f"control basis value must be 0 or 1, got {value}")
        if self.kind in (KIND_SWAP, KIND_CSWAP):
            if len(self.targets) != 2:
                raise ValueError("swap acts on exactly two targets")
        else:
            expected = {1: 2, 2: 4}.get(len(self.targets))
            if expected is None:
                raise ValueError("unitary ops take one or two targets")
            if self.matrix is None or self.matrix.shape != (expected, expected):
                raise ValueError(f"expected a {expected}x{expected} matrix for {len(self.targets)} target(s)")
            if not _is_unitary(self.matrix):
                raise ValueError("matrix is not unitary")

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(self.targets) + tuple(q for q, _ in self.controls)


def unitary(matrix: np.ndarray, *targets: int, controls: tuple[tuple[int, int], ...] = ()) -> GateOp:
    kind = KIND_CONTROLLED if controls else KIND_UNITARY
    return GateOp(kind, tuple(targets), np.asarray(matrix, dtype=complex), tuple(controls))


def h(qubit: int) -> GateOp:
    return GateOp(KIND_UNITARY, (qubit,), _H)


def x(qubit: int) -> GateOp:
    return GateOp(KIND_UNITARY, (qubit,), _X)


def ry(qubit: int, theta: float) -> GateOp:
    """Real-plane rotation; ry(q, 2*a) maps |0> to (cos a, sin a)."""
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return GateOp(KIND_UNITARY, (qubit,), np.array([[c, -s], [s, c]], dtype=complex))


def cx(control: int, target: int, value: int = 1) -> GateOp:
    return GateOp(KIND_CONTROLLED, (target,), _X, ((control, value),))


def swap(a: int, b: int) -> GateOp:
    return GateOp(KIND_SWAP, (a, b))


def cswap(control: int, a: int, b: int, value: int = 1) -> GateOp:
    return GateOp(KIND_CSWAP, (a, b), controls=((control, value),))


@dataclass
class Circuit:
    """Ordered gate sequence over a fixed register width."""

    num_qubits: int
    ops: list[GateOp] = field(default_factory=list)

    def __post_init__(self) -> None:
        for op in self.ops:
            self._check(op)

    def _check(self, op: GateOp) -> None:
        for q in op.qubits:
            if not 0 <= q < self.num_qubits:
                raise ValueError(f"qubit {q} out of range for {self.num_qubits}-qubit circuit")

    def append(self, op: GateOp) -> "Circuit":
        self._check(op)
        self.ops.append(op)
        return self

    def extend(self, ops) -> "Circuit":
        for op in ops.ops if isinstance(ops, Circuit) else ops:
            self.append(op)
        return self


@dataclass(eq=False)
class StateVector:
    """2^n complex amplitudes with unit norm; the simulator's sole mutable object."""

    num_qubits: int
    amplitudes: np.ndarray

    def norm_error(self) -> float:
        return abs(float(np.sum(np.abs(self.amplitudes) ** 2)) - 1.0)


@dataclass(frozen=True)
class ShotResult:
    shots: int
    counts: dict[int, int]
    estimated_prob_one: float


def new_zero_state(num_qubits: int) -> StateVector:
    """Allocate |0...0>."""
    if not 1 <= num_qubits <= MAX_QUBITS:
        raise CapacityError(f"num_qubits must be in [1, {MAX_QUBITS}], got {num_qubits}")
    amps = np.zeros(1 << num_qubits, dtype=complex)
    amps[0] = 1.0
    return StateVector(num_qubits, amps)


def _control_mask(indices: np.ndarray, controls: tuple[tuple[int, int], ...]) -> np.ndarray:
    mask = np.ones(indices.shape, dtype=bool)
    for qubit, value in controls:
        mask &= ((indices >> qubit) & 1) == value
    return mask


def apply_gate(state: StateVector, op: GateOp) -> StateVector:
    """Apply ``op`` in place and return the state."""
    n = state.num_qubits
    for q in op.qubits:
        if not 0 <= q < n:
            raise ValueError(f"qubit {q} out of range for {n}-qubit state")
    amps = state.amplitudes
    idx = np.arange(amps.size)

    if op.kind in (KIND_SWAP, KIND_CSWAP):
        a, b = op.targets
        sel = (((idx >> a) & 1) == 1) & (((idx >> b) & 1) == 0)
        if op.controls:
            sel &= _control_mask(idx, op.controls)
        i = idx[sel]
        j = i ^ (1 << a) ^ (1 << b)
        amps[i], amps[j] = amps[j], amps[i]  # fancy-index reads copy, so this swaps
        return state

    if len(op.targets) == 1:
        (t,) = op.targets
        sel = ((idx >> t) & 1) == 0
        if op.controls:
            sel &= _control_mask(idx, op.controls)
        i0 = idx[sel]
        i1 = i0 | (1 << t)
        u = op.matrix
        a0, a1 = amps[i0], amps[i1]
        amps[i0] = u[0, 0] * a0 + u[0, 1] * a1
        amps[i1] = u[1, 0] * a0 + u[1, 1] * a1
        return state

    # two-target unitary; matrix index = bit(targets[0]) + 2 * bit(targets[1])
    t0, t1 = op.targets
    sel = (((idx >> t0) & 1) == 0) & (((idx >> t1) & 1) == 0)
    if op.controls:
        sel &= _control_mask(idx, op.controls)
    base = idx[sel]
    quads = [base, base | (1 << t0), base | (1 << t1), base | (1 << t0) | (1 << t1)]
    vec = np.stack([amps[q] for q in quads])
    out = op.matrix @ vec
    for q, row in zip(quads, out):
        amps[q] = row
    return state


def apply_circuit(state: StateVector, circuit: Circuit) -> StateVector:
    if circuit.num_qubits != state.num_qubits:
        raise ValueError(
            f"circuit width {circuit.num_qubits} does not match state width {state.num_qubits}"
        )
    for op in circuit.ops:
        apply_gate(state, op)
    return state


def run_circuit(circuit: Circuit) -> StateVector:
    """Allocate |0...0> and run the whole circuit on it."""
    return apply_circuit(new_zero_state(circuit.num_qubits), circuit)


def prob_one(state: StateVector, qubit: int) -> float:
    """Probability that measuring ``qubit`` yields 1."""
    if not 0 <= qubit < state.num_qubits:
        raise IndexError(f"qubit {qubit} out of range for {state.num_qubits}-qubit state")
    probs = np.abs(state.amplitudes) ** 2
    block = 1 << (qubit + 1)
    p = float(probs.reshape(-1, block)[:, block // 2 :].sum())
    return min(max(p, 0.0), 1.0)


def sample_shots(state: StateVector, qubit: int, shots: int, seed: int) -> ShotResult:
    """Seeded Bernoulli sampling of one qubit, emulating shot-based readout."""
    if shots <= 0:
        raise ValueError(f"shots must be positive, got {shots}")
    p1 = prob_one(state, qubit)
    rng = np.random.default_rng(seed)
    ones = int(rng.binomial(shots, p1))
    return ShotResult(shots, {0: shots - ones, 1: ones}, ones / shots)
