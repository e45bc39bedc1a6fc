"""Shared builders for randomized tests.

Tensors for reconstruction tests are drawn rejection-style so that every
Vandermonde system in the pipeline stays well conditioned: Gram spectra
bounded away from zero and from each other, vector components bounded away
from zero.
"""

import numpy as np
import pytest

from lu3q import BlochTensor, canonicalize, decompose, random_mixed


def random_density(rng, rank=8):
    return random_mixed(rng, rank=rank)


def random_bloch(rng, scale=1.0):
    """Unconstrained coefficient tensor (not necessarily a physical state)."""
    return BlochTensor(
        alpha=scale * rng.normal(size=3),
        beta=scale * rng.normal(size=3),
        gamma=scale * rng.normal(size=3),
        R=scale * rng.normal(size=(3, 3)),
        S=scale * rng.normal(size=(3, 3)),
        T=scale * rng.normal(size=(3, 3)),
        Q=scale * rng.normal(size=(3, 3, 3)),
    )


def physical_bloch(rng, rank=8):
    """Coefficient tensor of an actual random mixed state."""
    return decompose(random_density(rng, rank=rank))


def canonical_q(rng, min_eig=0.05, min_gap=0.05):
    """A Q tensor whose Grams are diagonal, descending and well separated."""
    while True:
        q = rng.normal(size=(3, 3, 3))
        b0 = BlochTensor(np.zeros(3), np.zeros(3), np.zeros(3),
                         np.zeros((3, 3)), np.zeros((3, 3)), np.zeros((3, 3)), q)
        cf = canonicalize(b0)
        spec = np.array(cf.orbit_class.spectra)
        gaps = np.min(spec[:, :2] - spec[:, 1:], axis=1)
        if spec.min() > min_eig and gaps.min() > min_gap:
            return cf.tensor.Q


def bounded_vector(rng, lo=0.25, hi=1.0):
    """Vector with components bounded away from zero, random signs."""
    return rng.uniform(lo, hi, 3) * rng.choice([-1.0, 1.0], 3)


def zeroed_tensor(rng, zero_slots):
    """Well-conditioned tensor with prescribed zero components.

    zero_slots: iterable of (vector, index) pairs with vector in "abg" and
    index in 0..2, interpreted in the frame where the Grams are diagonal.
    """
    vecs = {v: bounded_vector(rng) for v in "abg"}
    for vec, idx in zero_slots:
        vecs[vec][idx] = 0.0
    return BlochTensor(vecs["a"], vecs["b"], vecs["g"],
                       rng.normal(size=(3, 3)), rng.normal(size=(3, 3)),
                       rng.normal(size=(3, 3)), canonical_q(rng))


@pytest.fixture
def rng():
    return np.random.default_rng(20260814)


ACCEPTANCE_LINES = []


def record_acceptance(line):
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance checks")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
