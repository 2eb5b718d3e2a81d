import numpy as np
import pytest

import lazysaddle as ls


@pytest.fixture(scope="session")
def heart_like():
    """Dense (features, labels, protected) triple shaped like the clinical sets."""
    dataset = ls.parse_libsvm(ls.synthetic_fairness_text())
    features, labels, protected = ls.extract_protected(dataset, 2)
    return ls.normalize_features(features), labels, protected


@pytest.fixture(scope="session")
def fairness_problem(heart_like):
    features, labels, protected = heart_like
    return ls.make_fairness(features, labels, protected)


@pytest.fixture(scope="session")
def cubic10():
    return ls.make_cubic(10, 42)


def random_monotone_jacobian(rng, dim):
    """Random matrix with PSD symmetric part: PSD Gram plus a skew part."""
    b = rng.standard_normal((dim, dim)) / np.sqrt(dim)
    k = rng.standard_normal((dim, dim))
    return b.T @ b + 0.5 * (k - k.T)
