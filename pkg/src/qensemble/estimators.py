"""Scikit-learn compatible estimators wrapping the quantum classifiers.

Both estimators are memory-based: ``fit`` validates and stores the
training set, and each ``predict_proba`` call simulates the relevant
circuits per test row. They compose with the usual sklearn machinery
(clone, get_params, pipelines, cross-validation).
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from .bench import predict_point
from .encoding import LabeledDataset
from .errors import EncodingError
from .seeding import STREAM_SELECT, STREAM_SHOTS, subseed


def validate_features(X) -> np.ndarray:
    """2D float array of shape (n, 2) with finite, non-zero rows."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != 2:
        raise ValueError(f"expected X of shape (n_samples, 2), got {X.shape}")
    if X.shape[0] == 0:
        raise ValueError("X must not be empty")
    if not np.all(np.isfinite(X)):
        raise ValueError("X must be finite")
    if (np.linalg.norm(X, axis=1) == 0.0).any():
        raise EncodingError("zero feature vectors cannot be qubit-encoded")
    return X


def validate_labels(y, n: int) -> np.ndarray:
    y = np.asarray(y)
    if y.shape != (n,):
        raise ValueError(f"expected y of shape ({n},), got {y.shape}")
    classes = np.unique(y)
    if len(classes) != 2:
        raise ValueError(f"binary classification only, got classes {classes}")
    return y


class _SwapTestClassifierBase(ClassifierMixin, BaseEstimator):
    """Shared fit/predict plumbing; subclasses fix the ensemble size."""

    def fit(self, X, y):
        X = validate_features(X)
        y = validate_labels(y, X.shape[0])
        self.classes_, encoded = np.unique(y, return_inverse=True)
        self.X_ = X
        self.y_ = encoded.astype(int)
        self.n_features_in_ = 2
        return self

    def _ensemble_size(self) -> int:
        raise NotImplementedError

    def predict_proba(self, X):
        check_is_fitted(self, "X_")
        X = validate_features(X)
        train = LabeledDataset(self.X_, self.y_)
        b = self._ensemble_size()
        seed = 0 if self.random_state is None else self.random_state
        probs = np.empty(X.shape[0])
        for j, row in enumerate(X):
            probs[j], _ = predict_point(
                train,
                row,
                b,
                selection_seed=subseed(seed, STREAM_SELECT, j),
                shots=self.shots,
                shots_seed=None if self.shots is None else subseed(seed, STREAM_SHOTS, j),
            )
        return np.column_stack([1.0 - probs, probs])

    def predict(self, X):
        proba = self.predict_proba(X)
        return self.classes_[(proba[:, 1] > 0.5).astype(int)]


class QuantumCosineClassifier(_SwapTestClassifierBase):
    """Weak learner: classifies each test row against one random training point.

    Parameters
    ----------
    shots : int or None
        None reads probabilities exactly from the statevector; an integer
        emulates shot-based readout.
    random_state : int or None
        Seeds the per-row training-point selection (and sampling).
    """

    def __init__(self, shots: int | None = None, random_state: int | None = None):
        self.shots = shots
        self.random_state = random_state

    def _ensemble_size(self) -> int:
        return 1


class QuantumEnsembleClassifier(_SwapTestClassifierBase):
    """Bagged ensemble of swap-test cosine classifiers.

    Parameters
    ----------
    n_estimators : int
        Ensemble size; must be a power of two (the control register holds
        log2(n_estimators) qubits).
    shots, random_state
        As in :class:`QuantumCosineClassifier`.
    """

    def __init__(
        self,
        n_estimators: int = 16,
        shots: int | None = None,
        random_state: int | None = None,
    ):
        self.n_estimators = n_estimators
        self.shots = shots
        self.random_state = random_state

    def fit(self, X, y):
        if self.n_estimators < 1 or self.n_estimators & (self.n_estimators - 1):
            raise ValueError(f"n_estimators must be a power of two, got {self.n_estimators}")
        return super().fit(X, y)

    def _ensemble_size(self) -> int:
        return self.n_estimators
