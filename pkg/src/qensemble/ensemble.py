"""Bagging by superposed data permutations.

A d-qubit control register is put into uniform superposition and each of
its qubits is entangled, in turn, with two alternative permutations of
the data register. The 2^d control basis states then index 2^d
"trajectories", each holding a differently permuted copy of the training
set; applying the classifier once classifies against all of them, and
the prediction qubit's one-probability is exactly the trajectory average.

The same average is available without the big circuit by classifying the
per-trajectory active training points directly (trajectory mode); both
paths are exposed and must agree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import qsim
from .classifier import CosineClassifierSpec, PredictionResult, build_cosine_classifier, classify_single, decide
from .encoding import LabeledDataset, RegisterLayout, build_state_prep
from .errors import CapacityError
from .seeding import subseed

MODE_FULL = "full-circuit"
MODE_TRAJECTORIES = "trajectories"

# Trajectory mode stays tractable far beyond statevector capacity, but an
# ensemble is still enumerated trajectory by trajectory.
MAX_TRAJECTORY_D = 14

Transpositions = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class SwapPlan:
    """The d pairs of data-register permutations, one pair per control qubit.

    Each permutation is an ordered list of transpositions of training-point
    positions; a transposition moves the feature qubit and the label qubit
    of the two points together, so applying it as swap gates is unitary by
    construction. Step i's pair is selected by bit i-1 of the trajectory
    index: 0 picks the first permutation, 1 the second.
    """

    d: int
    steps: tuple[tuple[Transpositions, Transpositions], ...]

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("control register needs at least one qubit")
        if len(self.steps) != self.d:
            raise ValueError(f"expected {self.d} step pairs, got {len(self.steps)}")
        for first, second in self.steps:
            for a, b in (*first, *second):
                if a == b or a < 0 or b < 0:
                    raise ValueError(f"invalid transposition ({a}, {b})")

    @property
    def num_trajectories(self) -> int:
        return 1 << self.d

    def max_position(self) -> int:
        return max((max(a, b) for first, second in self.steps for a, b in (*first, *second)), default=0)


def _apply_transpositions(position: int, transpositions: Transpositions) -> int:
    for a, b in transpositions:
        if position == a:
            position = b
        elif position == b:
            position = a
    return position


def active_points(plan: SwapPlan, n_points: int) -> list[int]:
    """Training-point index read by the classifier in each trajectory.

    The classifier reads data position 0, so trajectory t reads the point
    whose position the trajectory's permutation product maps to 0; that
    preimage is found by walking the steps backwards with each selected
    permutation inverted (the reversed transposition list).
    """
    if plan.max_position() >= n_points:
        raise ValueError(
            f"plan permutes position {plan.max_position()} but only {n_points} points exist"
        )
    out = []
    for t in range(plan.num_trajectories):
        position = 0
        for i in range(plan.d - 1, -1, -1):
            first, second = plan.steps[i]
            selected = second if (t >> i) & 1 else first
            position = _apply_transpositions(position, tuple(reversed(selected)))
        out.append(position)
    return out


def _xor_pairs(block: int, bit: int) -> Transpositions:
    return tuple((p, p | bit) for p in range(block) if not p & bit)


def _cycle_transpositions(perm: list[int]) -> Transpositions:
    """Ordered transpositions realizing ``position p -> perm[p]``."""
    out: list[tuple[int, int]] = []
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cycle = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            cycle.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt]
        out.extend((cycle[j], cycle[j + 1]) for j in range(len(cycle) - 2, -1, -1))
    return tuple(out)


def default_swap_plan(d: int, n_points: int) -> SwapPlan:
    """Plan whose trajectory t reads training point t mod n_points.

    For 2^d <= n_points (and for any power-of-two dataset) the steps are
    disjoint swap pairs toggling one bit of the active position. When the
    ensemble outgrows a dataset whose size is not a power of two, the
    second permutation of each step becomes a position rotation instead,
    which keeps the cyclic point reuse exact.
    """
    if d < 1:
        raise ValueError("control register needs at least one qubit")
    if n_points < 1:
        raise ValueError("need at least one training point")
    block = 1 << d
    if block <= n_points or n_points & (n_points - 1) == 0:
        steps = []
        for i in range(d):
            bit = 1 << i
            steps.append(((), _xor_pairs(min(block, n_points), bit) if bit < n_points else ()))
        return SwapPlan(d, tuple(steps))
    steps = []
    for i in range(d):
        shift = (1 << i) % n_points
        perm = [(p - shift) % n_points for p in range(n_points)]
        steps.append(((), _cycle_transpositions(perm)))
    return SwapPlan(d, tuple(steps))


def random_swap_plan(d: int, n_points: int, seed) -> SwapPlan:
    """Seeded random involutions per step; deterministic for a fixed seed."""
    if n_points < 2:
        return SwapPlan(d, tuple(((), ()) for _ in range(d)))
    rng = np.random.default_rng(seed)
    steps = []
    for _ in range(d):
        pair = []
        for _ in range(2):
            order = rng.permutation(n_points)
            k = int(rng.integers(0, n_points // 2, endpoint=True))
            pair.append(tuple((int(order[2 * j]), int(order[2 * j + 1])) for j in range(k)))
        steps.append((pair[0], pair[1]))
    return SwapPlan(d, tuple(steps))


@dataclass
class EnsembleConfig:
    """How to run an ensemble: size, execution mode, measurement, plan."""

    d: int
    mode: str = MODE_FULL
    shots: int | None = None
    seed: int | None = None
    swap_plan: SwapPlan | None = None

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("ensemble needs d >= 1 control qubits")
        if self.mode not in (MODE_FULL, MODE_TRAJECTORIES):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.shots is not None and self.shots <= 0:
            raise ValueError("shots must be positive")

    @property
    def num_classifiers(self) -> int:
        return 1 << self.d


def resolve_plan(config: EnsembleConfig, n_points: int) -> SwapPlan:
    plan = config.swap_plan if config.swap_plan is not None else default_swap_plan(config.d, n_points)
    if plan.d != config.d:
        raise ValueError(f"swap plan has d={plan.d} but config has d={config.d}")
    return plan


def build_sampling_stage(plan: SwapPlan, layout: RegisterLayout) -> qsim.Circuit:
    """Entangle each control qubit with its two data permutations.

    Per control qubit, in order: the first permutation as controlled
    swaps, an X on the control qubit, then the second permutation. Every
    point transposition moves the feature pair and the label pair under
    the same control.
    """
    if plan.d != len(layout.control):
        raise ValueError(f"plan d={plan.d} does not match control register size {len(layout.control)}")
    if plan.max_position() >= layout.n_points:
        raise ValueError(
            f"plan permutes position {plan.max_position()} but the data register holds {layout.n_points} points"
        )
    circuit = qsim.Circuit(layout.num_qubits)
    for i, (first, second) in enumerate(plan.steps):
        ctrl = layout.control[i]
        for a, b in first:
            circuit.append(qsim.cswap(ctrl, layout.feature[a], layout.feature[b]))
            circuit.append(qsim.cswap(ctrl, layout.label[a], layout.label[b]))
        circuit.append(qsim.x(ctrl))
        for a, b in second:
            circuit.append(qsim.cswap(ctrl, layout.feature[a], layout.feature[b]))
            circuit.append(qsim.cswap(ctrl, layout.label[a], layout.label[b]))
    return circuit


def classifier_spec(layout: RegisterLayout) -> CosineClassifierSpec:
    """The classifier reads data position 0 by convention."""
    return CosineClassifierSpec(
        train_qubit=layout.feature[0],
        label_qubit=layout.label[0],
        test_qubit=layout.test,
        prediction_qubit=layout.prediction,
    )


def build_ensemble_circuit(
    dataset: LabeledDataset, test, config: EnsembleConfig
) -> tuple[qsim.Circuit, RegisterLayout]:
    """Assemble the full circuit: control superposition, state prep,
    sampling stage, then exactly one classifier instance."""
    layout = RegisterLayout.for_problem(config.d, len(dataset))
    if layout.num_qubits > qsim.MAX_QUBITS:
        raise CapacityError(
            f"full-circuit mode needs {layout.num_qubits} qubits "
            f"(d={config.d} + 2x{len(dataset)} points + 2) but the cap is {qsim.MAX_QUBITS}"
        )
    plan = resolve_plan(config, len(dataset))
    circuit = qsim.Circuit(layout.num_qubits)
    for q in layout.control:
        circuit.append(qsim.h(q))
    circuit.extend(build_state_prep(dataset, test, layout))
    circuit.extend(build_sampling_stage(plan, layout))
    circuit.extend(build_cosine_classifier(classifier_spec(layout), layout.num_qubits))
    return circuit, layout


def run_ensemble_full(dataset: LabeledDataset, test, config: EnsembleConfig) -> PredictionResult:
    """Single-register readout of the whole entangled ensemble.

    The prediction qubit's one-probability equals the mean of the 2^d
    per-trajectory probabilities; individual trajectories are not
    measured, so ``per_trajectory`` stays None.
    """
    circuit, layout = build_ensemble_circuit(dataset, test, config)
    state = qsim.run_circuit(circuit)
    if config.shots is None:
        p = qsim.prob_one(state, layout.prediction)
    else:
        p = qsim.sample_shots(state, layout.prediction, config.shots, config.seed).estimated_prob_one
    return PredictionResult(prob_one=p, decision=decide(p))


def run_ensemble_trajectories(dataset: LabeledDataset, test, config: EnsembleConfig) -> PredictionResult:
    """Classify each trajectory's active point separately and average."""
    if config.d > MAX_TRAJECTORY_D:
        raise CapacityError(f"trajectory mode capped at d={MAX_TRAJECTORY_D}, got d={config.d}")
    plan = resolve_plan(config, len(dataset))
    actives = active_points(plan, len(dataset))
    per_trajectory = []
    for t, idx in enumerate(actives):
        seed = None if config.seed is None else subseed(config.seed, t)
        result = classify_single(
            dataset.features[idx], int(dataset.labels[idx]), test, shots=config.shots, seed=seed
        )
        per_trajectory.append(result.prob_one)
    p = float(np.mean(per_trajectory))
    return PredictionResult(prob_one=p, decision=decide(p), per_trajectory=per_trajectory)


def run_ensemble(dataset: LabeledDataset, test, config: EnsembleConfig) -> PredictionResult:
    if config.mode == MODE_FULL:
        return run_ensemble_full(dataset, test, config)
    return run_ensemble_trajectories(dataset, test, config)
