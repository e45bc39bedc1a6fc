"""Local unitary action: SU(2) elements, their SO(3) images and the tensor action.

The adjoint rotation O of u in SU(2) is fixed by  u s_i u+ = sum_j O_ji s_j.
With that convention a conjugation rho -> (u1*u2*u3) rho (u1*u2*u3)+ acts on
the coefficients as

  alpha -> L alpha,  beta -> M beta,  gamma -> N gamma,
  R -> L R M^T,  S -> L S N^T,  T -> M T N^T,
  Q_ijk -> L_ia M_jb N_kc Q_abc,

where L, M, N are the adjoints of u1, u2, u3.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotRotationError, NotSpecialUnitaryError
from .pauli import PAULI, BlochTensor, validate_density

__all__ = ["adjoint", "haar_su2", "LocalRotation", "act", "conjugate"]

UNITARITY_TOL = 1e-10


def _check_su2(u, tol=UNITARITY_TOL):
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise NotSpecialUnitaryError(f"expected a 2x2 matrix, got shape {u.shape}")
    unit_dev = np.abs(u.conj().T @ u - np.eye(2)).max()
    if unit_dev > tol:
        raise NotSpecialUnitaryError(f"unitarity deviation {unit_dev:.3e} exceeds {tol:.1e}")
    det_dev = abs(np.linalg.det(u) - 1.0)
    if det_dev > tol:
        raise NotSpecialUnitaryError(f"determinant deviates from 1 by {det_dev:.3e}")
    return u


def adjoint(u, tol=UNITARITY_TOL):
    """SO(3) image of u in SU(2), O[j, i] = (1/2) Re tr(s_j u s_i u+).

    Satisfies adjoint(u @ v) = adjoint(u) @ adjoint(v) and adjoint(-u) = adjoint(u).
    """
    u = _check_su2(u, tol)
    udag = u.conj().T
    out = np.empty((3, 3))
    for i in range(3):
        rotated = u @ PAULI[i + 1] @ udag
        for j in range(3):
            out[j, i] = 0.5 * np.einsum("ab,ba->", PAULI[j + 1], rotated).real
    return out


def haar_su2(rng):
    """Haar-random SU(2) element.

    (a, b) uniform on the unit 3-sphere gives u = [[a, b], [-conj(b), conj(a)]].
    """
    v = rng.standard_normal(4)
    v /= np.linalg.norm(v)
    a = v[0] + 1j * v[1]
    b = v[2] + 1j * v[3]
    return np.array([[a, b], [-np.conj(b), np.conj(a)]])


def _check_rotation(mat, tol=UNITARITY_TOL):
    mat = np.asarray(mat, dtype=float)
    if mat.shape != (3, 3):
        raise NotRotationError(f"expected a 3x3 matrix, got shape {mat.shape}")
    orth_dev = np.abs(mat.T @ mat - np.eye(3)).max()
    if orth_dev > tol:
        raise NotRotationError(f"orthogonality deviation {orth_dev:.3e} exceeds {tol:.1e}")
    det_dev = abs(np.linalg.det(mat) - 1.0)
    if det_dev > tol:
        raise NotRotationError(f"determinant deviates from +1 by {det_dev:.3e}")
    return mat


@dataclass(frozen=True)
class LocalRotation:
    """Triple of proper rotations (L, M, N) acting on qubits 1, 2, 3."""

    L: np.ndarray
    M: np.ndarray
    N: np.ndarray

    def __post_init__(self):
        for name in ("L", "M", "N"):
            mat = _check_rotation(getattr(self, name))
            mat = mat.copy()
            mat.setflags(write=False)
            object.__setattr__(self, name, mat)

    @classmethod
    def identity(cls):
        return cls(np.eye(3), np.eye(3), np.eye(3))

    @classmethod
    def from_su2(cls, u1, u2, u3):
        return cls(adjoint(u1), adjoint(u2), adjoint(u3))

    @classmethod
    def random(cls, rng):
        return cls.from_su2(haar_su2(rng), haar_su2(rng), haar_su2(rng))

    def compose(self, other):
        """Rotation applying other first, then self."""
        return LocalRotation(self.L @ other.L, self.M @ other.M, self.N @ other.N)


def act(b, g):
    """Apply the local rotation triple g to a coefficient tensor."""
    L, M, N = g.L, g.M, g.N
    return BlochTensor(
        alpha=L @ b.alpha,
        beta=M @ b.beta,
        gamma=N @ b.gamma,
        R=L @ b.R @ M.T,
        S=L @ b.S @ N.T,
        T=M @ b.T @ N.T,
        Q=np.einsum("ia,jb,kc,abc->ijk", L, M, N, b.Q),
    )


def conjugate(rho, u1, u2, u3, tol=UNITARITY_TOL):
    """Conjugate a density matrix by u1 x u2 x u3 (the oracle for act)."""
    rho = validate_density(rho)
    for u in (u1, u2, u3):
        _check_su2(u, tol)
    big = np.kron(np.kron(u1, u2), u3)
    return big @ rho @ big.conj().T
