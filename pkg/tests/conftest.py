import numpy as np
import pytest

import quditpulse as qp


@pytest.fixture(scope="session")
def basis2():
    return qp.build_basis(2)


@pytest.fixture(scope="session")
def basis3():
    return qp.build_basis(3)


@pytest.fixture(scope="session")
def sbasis3():
    return qp.build_symmetric_basis(3)


@pytest.fixture(scope="session")
def spin1_depth2():
    return qp.enumerate_composites(qp.spin1_elementary_pulses(), max_depth=2)


@pytest.fixture(scope="session")
def spin1_depth4():
    """The full depth-4 composite set; shared by the acceptance criteria."""
    return qp.enumerate_composites(qp.spin1_elementary_pulses(), max_depth=4)


def random_interaction(d: int, rng: np.random.Generator) -> qp.TwoQuditInteraction:
    """Random valid two-qudit interaction via a random symmetric C matrix."""
    m = d * d - 1
    c = rng.normal(size=(m, m))
    c = (c + c.T) / 2
    return qp.to_interaction(qp.CMatrix(d=d, entries=c), qp.build_basis(d))


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(a)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_sequence(d: int, k: int, rng: np.random.Generator,
                    period_T: float = 1.0) -> qp.PulseSequence:
    frames = np.array([random_unitary(d, rng) for _ in range(k)])
    w = rng.uniform(0.2, 1.0, size=k)
    return qp.PulseSequence(d=d, frames=frames, weights=w / w.sum(), period_T=period_T)
