"""In-repo cyclic Jacobi eigensolver for dense complex Hermitian matrices.

Each sweep annihilates off-diagonal pivots with exact 2x2 Hermitian
eigendecompositions; convergence is quadratic once the off-diagonal mass is
small.  Accurate to near machine precision for sizes up to a few hundred.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import EvaluationError


def hermitian_part(a: np.ndarray) -> np.ndarray:
    return (a + a.conj().T) / 2


def _two_by_two_rotation(app: float, aqq: float, apq: complex) -> np.ndarray:
    """Unitary V with V^H [[app, apq],[conj(apq), aqq]] V diagonal."""
    d = (app - aqq) / 2.0
    r = math.hypot(d, abs(apq))
    # eigenvector for the eigenvalue mean + r; avoid cancellation in r - d
    if d >= 0:
        rm = abs(apq) ** 2 / (r + d) if (r + d) != 0 else 0.0
    else:
        rm = r - d
    v1 = np.array([apq, rm], dtype=complex)
    n1 = np.linalg.norm(v1)
    if n1 == 0:
        return np.eye(2, dtype=complex)
    v1 /= n1
    v2 = np.array([-v1[1].conjugate(), v1[0].conjugate()], dtype=complex)
    return np.column_stack([v1, v2])


def jacobi_eigenvalues(
    h: np.ndarray, tol: float = 1e-14, max_sweeps: int = 60
) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, ascending, via cyclic Jacobi."""
    a = np.array(h, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if not np.all(np.isfinite(a.view(float))):
        raise EvaluationError("matrix has non-finite entries")
    a = hermitian_part(a)
    n = a.shape[0]
    if n == 1:
        return a.real.diagonal().copy()
    scale = max(np.abs(a).max(), 1e-300)
    for _ in range(max_sweeps):
        off = math.sqrt(max((np.abs(a) ** 2).sum() - (np.abs(np.diag(a)) ** 2).sum(), 0.0))
        if off <= tol * scale * n:
            break
        thresh = off / n  # annihilate only pivots that matter this sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 0.05 * thresh:
                    continue
                v = _two_by_two_rotation(a[p, p].real, a[q, q].real, apq)
                rows = a[[p, q], :]
                a[[p, q], :] = v.conj().T @ rows
                cols = a[:, [p, q]]
                a[:, [p, q]] = cols @ v
                a[p, q] = 0.0
                a[q, p] = 0.0
    return np.sort(np.diag(a).real)


def min_eigenvalue(h: np.ndarray) -> float:
    """Smallest eigenvalue of a Hermitian matrix (symmetrized first)."""
    return float(jacobi_eigenvalues(h)[0])
