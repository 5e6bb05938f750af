import numpy as np
import pytest


def random_rotation(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random orthogonal matrix via QR of a Gaussian."""
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.diag(r))


def random_antipodal_base(m: int, d: int, rng: np.random.Generator) -> np.ndarray:
    x = rng.standard_normal((m, d))
    return x / np.linalg.norm(x, axis=1)[:, None]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
