import numpy as np
import pytest

from qensemble.encoding import LabeledDataset

# Four-point demo set: features, labels, test vector, and the exact
# classifier probabilities each point produces for that test vector.
DEMO_FEATURES = np.array([(1.0, 3.0), (-2.0, 2.0), (3.0, 0.0), (3.0, 1.0)])
DEMO_LABELS = np.array([0, 1, 0, 1])
DEMO_TEST = (2.0, 2.0)
DEMO_PROBS = (0.10, 0.50, 0.25, 0.90)


@pytest.fixture
def demo_dataset() -> LabeledDataset:
    return LabeledDataset(DEMO_FEATURES.copy(), DEMO_LABELS.copy())


def random_encodable(rng: np.random.Generator, n: int = 1) -> np.ndarray:
    """n random 2D vectors bounded away from the origin."""
    out = rng.uniform(-3.0, 3.0, size=(n, 2))
    bad = np.linalg.norm(out, axis=1) < 1e-3
    while bad.any():
        out[bad] = rng.uniform(-3.0, 3.0, size=(int(bad.sum()), 2))
        bad = np.linalg.norm(out, axis=1) < 1e-3
    return out


def random_dataset(rng: np.random.Generator, n: int) -> LabeledDataset:
    return LabeledDataset(random_encodable(rng, n), rng.integers(0, 2, size=n))
