"""Flattenings, Gram matrices and small determinant helpers for the 3x3x3 tensor Q.

Flattening layouts (1-indexed in the math, 0-indexed in code):

  axis 1:  M[i, 3(j-1)+k] = Q_ijk
  axis 2:  M[j, 3(i-1)+k] = Q_ijk
  axis 3:  M[k, 3(i-1)+j] = Q_ijk

Columns iterate the first remaining index slowest, which matches the
column ordering of np.kron for the paired transformation laws.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

__all__ = ["flatten", "refold", "gram", "GramTriple", "triple", "kron"]


def _check_axis(axis):
    if axis not in (1, 2, 3):
        raise ValueError(f"axis must be 1, 2 or 3, got {axis}")


def flatten(Q, axis):
    """3x9 flattening of Q along the given axis (1, 2 or 3)."""
    _check_axis(axis)
    Q = np.asarray(Q, dtype=float)
    if Q.shape != (3, 3, 3):
        raise ValueError(f"Q must be 3x3x3, got {Q.shape}")
    if axis == 1:
        return Q.reshape(3, 9)
    if axis == 2:
        return Q.transpose(1, 0, 2).reshape(3, 9)
    return Q.transpose(2, 0, 1).reshape(3, 9)


def refold(mat, axis):
    """Inverse of flatten: rebuild the 3x3x3 tensor from a 3x9 matrix."""
    _check_axis(axis)
    mat = np.asarray(mat, dtype=float)
    if mat.shape != (3, 9):
        raise ValueError(f"flattening must be 3x9, got {mat.shape}")
    cube = mat.reshape(3, 3, 3)
    if axis == 1:
        return cube
    if axis == 2:
        return cube.transpose(1, 0, 2)
    return cube.transpose(1, 2, 0)


class GramTriple(NamedTuple):
    X: np.ndarray
    Y: np.ndarray
    Z: np.ndarray


def gram(Q):
    """Gram matrices of the three flattenings: X_ii' = sum_jk Q_ijk Q_i'jk etc.

    All three are symmetric positive semidefinite and share their trace.
    """
    m1 = flatten(Q, 1)
    m2 = flatten(Q, 2)
    m3 = flatten(Q, 3)
    return GramTriple(m1 @ m1.T, m2 @ m2.T, m3 @ m3.T)


def triple(a, b, c):
    """Scalar triple product (a, b, c) = det [a b c], columns.

    Written as the cofactor expansion along the third column so every triple
    product in the package goes through one code path.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(np.dot(triple_cofactor(a, b), np.asarray(c, dtype=float)))


def triple_cofactor(a, b):
    """Cofactors of the third column of [a b c]: triple(a, b, c) = cof . c."""
    return np.array([
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])


def kron(a, b):
    """Kronecker product with row-major pair ordering (thin numpy wrapper)."""
    return np.kron(np.asarray(a), np.asarray(b))
