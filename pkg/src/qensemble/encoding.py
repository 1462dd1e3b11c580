"""Qubit encoding of 2D feature vectors and binary labels.

One observation occupies one qubit: the normalized feature vector becomes
the qubit's two real amplitudes, and the binary label becomes a basis
state on a paired label qubit. Feature vectors are accepted as any
length-2 sequence of reals; negative components are allowed and map to
negative amplitudes (a rotation by an angle in (-pi, pi]).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from . import qsim
from .errors import DatasetFormatError, EncodingError

CSV_HEADER = ("x1", "x2", "y")


def _as_vector(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float).reshape(-1)
    if arr.shape != (2,):
        raise EncodingError(f"expected a 2-dimensional feature vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise EncodingError(f"feature vector must be finite, got {arr}")
    return arr


def encode_vector(v) -> tuple[float, float]:
    """Normalize ``v`` to the two amplitudes of a single qubit."""
    arr = _as_vector(v)
    norm = float(np.linalg.norm(arr))
    if norm == 0.0:
        raise EncodingError("cannot encode a zero vector")
    return float(arr[0] / norm), float(arr[1] / norm)


def encoding_angle(v) -> float:
    """Rotation angle theta with (cos, sin) equal to the encoded amplitudes."""
    amp0, amp1 = encode_vector(v)
    return float(np.arctan2(amp1, amp0))


@dataclass
class LabeledDataset:
    """Ordered 2D observations with binary labels."""

    features: np.ndarray  # shape (N, 2)
    labels: np.ndarray  # shape (N,), values in {0, 1}

    def __post_init__(self) -> None:
        self.features = np.asarray(self.features, dtype=float)
        self.labels = np.asarray(self.labels, dtype=int)
        if self.features.ndim != 2 or self.features.shape[1] != 2:
            raise EncodingError(f"features must have shape (N, 2), got {self.features.shape}")
        if self.features.shape[0] == 0:
            raise ValueError("dataset must not be empty")
        if self.labels.shape != (self.features.shape[0],):
            raise ValueError("labels must align one-to-one with features")
        if not np.isin(self.labels, (0, 1)).all():
            raise ValueError("labels must be 0 or 1")
        for row in self.features:
            _ = encode_vector(row)  # every point must be encodable

    def __len__(self) -> int:
        return self.features.shape[0]

    @property
    def points(self) -> list[tuple[np.ndarray, int]]:
        return [(self.features[i], int(self.labels[i])) for i in range(len(self))]


@dataclass(frozen=True)
class RegisterLayout:
    """Named qubit index ranges for the ensemble circuit.

    ``control`` holds d qubits whose basis states index the trajectories,
    ``feature``/``label`` hold one qubit per training point, and single
    qubits carry the test vector and the prediction.
    """

    control: tuple[int, ...]
    feature: tuple[int, ...]
    label: tuple[int, ...]
    test: int
    prediction: int

    def __post_init__(self) -> None:
        if len(self.feature) != len(self.label):
            raise ValueError("feature and label registers must have equal size")
        every = list(self.control) + list(self.feature) + list(self.label) + [self.test, self.prediction]
        if len(set(every)) != len(every):
            raise ValueError("register index ranges must be pairwise disjoint")
        if min(every) < 0:
            raise ValueError("qubit indices must be non-negative")

    @property
    def num_qubits(self) -> int:
        return max(*self.control, *self.feature, *self.label, self.test, self.prediction) + 1

    @property
    def n_points(self) -> int:
        return len(self.feature)

    @classmethod
    def for_problem(cls, d: int, n_points: int) -> "RegisterLayout":
        """Contiguous layout: control, features, labels, test, prediction."""
        if d < 0 or n_points < 1:
            raise ValueError(f"invalid layout request d={d}, n_points={n_points}")
        control = tuple(range(d))
        feature = tuple(range(d, d + n_points))
        label = tuple(range(d + n_points, d + 2 * n_points))
        return cls(control, feature, label, d + 2 * n_points, d + 2 * n_points + 1)


def build_state_prep(dataset: LabeledDataset, test, layout: RegisterLayout) -> qsim.Circuit:
    """Circuit segment loading the dataset, labels and test vector.

    Each feature qubit gets a single real-plane rotation to its encoded
    amplitudes, label qubits with label 1 get an X, and the test qubit is
    rotated like a feature qubit. The prediction qubit is untouched.
    """
    if len(dataset) != layout.n_points:
        raise ValueError(
            f"layout sized for {layout.n_points} points but dataset has {len(dataset)}"
        )
    circuit = qsim.Circuit(layout.num_qubits)
    for qubit, vec in zip(layout.feature, dataset.features):
        theta = encoding_angle(vec)
        if theta != 0.0:
            circuit.append(qsim.ry(qubit, 2.0 * theta))
    for qubit, label in zip(layout.label, dataset.labels):
        if label == 1:
            circuit.append(qsim.x(qubit))
    theta = encoding_angle(test)
    if theta != 0.0:
        circuit.append(qsim.ry(layout.test, 2.0 * theta))
    return circuit


def load_dataset_csv(path) -> LabeledDataset:
    """Read a ``x1,x2,y`` CSV file into a dataset, preserving row order."""
    features: list[tuple[float, float]] = []
    labels: list[int] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DatasetFormatError(f"{path}: empty file, expected header {','.join(CSV_HEADER)}")
        if tuple(cell.strip() for cell in header) != CSV_HEADER:
            raise DatasetFormatError(
                f"{path}: line 1: expected header {','.join(CSV_HEADER)}, got {','.join(header)}"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise DatasetFormatError(f"{path}: line {lineno}: expected 3 fields, got {len(row)}")
            try:
                x1, x2 = float(row[0]), float(row[1])
            except ValueError:
                raise DatasetFormatError(f"{path}: line {lineno}: non-numeric feature in {row!r}")
            if row[2].strip() not in ("0", "1"):
                raise DatasetFormatError(f"{path}: line {lineno}: label must be 0 or 1, got {row[2]!r}")
            features.append((x1, x2))
            labels.append(int(row[2]))
    if not features:
        raise DatasetFormatError(f"{path}: no data rows")
    return LabeledDataset(np.array(features), np.array(labels))
