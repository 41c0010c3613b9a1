"""Dense complex matrix kernel for one- and two-qubit operators.

Matrices are plain ``numpy`` complex arrays of shape (2, 2) or (4, 4).
Subsystem ``a`` is the left (most-significant) tensor factor, so the
two-qubit basis is ordered |00>, |01>, |10>, |11> with the first label on a.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10

JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100

_DIMS = (2, 4)


class DensityError(ValueError):
    """Raised when a matrix fails density-matrix validation."""


class EigSystem(NamedTuple):
    values: np.ndarray
    vectors: np.ndarray


class DensityDiagnostics(NamedTuple):
    hermiticity: float
    trace: float
    min_eigenvalue: float

    def ok(self) -> bool:
        return (
            self.hermiticity <= HERMITIAN_TOL
            and self.trace <= TRACE_TOL
            and self.min_eigenvalue >= -PSD_TOL
        )


def as_cmatrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in _DIMS:
        raise ValueError(f"expected a 2x2 or 4x4 matrix, got shape {m.shape}")
    return m


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def kron(a, b) -> np.ndarray:
    """Tensor product ``a (x) b`` with ``a`` as the most-significant factor."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    n = a.shape[0] * b.shape[0]
    if n > 4:
        raise ValueError(f"tensor product of dimension {n} is out of scope (max 4)")
    out = np.empty((n, n), dtype=complex)
    db = b.shape[0]
    for i1 in range(a.shape[0]):
        for j1 in range(a.shape[1]):
            out[i1 * db:(i1 + 1) * db, j1 * db:(j1 + 1) * db] = a[i1, j1] * b
    return out


def hermiticity_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - dagger(m))))


def herm_eig(h) -> EigSystem:
    """Eigendecomposition of a small Hermitian matrix by cyclic complex Jacobi.

    Each rotation first removes the phase of the pivot element, then applies
    the real symmetric Jacobi rotation. Sweeps stop once the largest
    off-diagonal magnitude drops below ``JACOBI_TOL``.

    Returns eigenvalues in ascending order with matching orthonormal
    eigenvector columns.
    """
    a = as_cmatrix(h).copy()
    if hermiticity_defect(a) > HERMITIAN_TOL:
        raise DensityError(
            f"matrix is not Hermitian (defect {hermiticity_defect(a):.3e})"
        )
    a = 0.5 * (a + dagger(a))
    n = a.shape[0]
    if n == 2:
        return _jacobi2(a)
    v = np.eye(n, dtype=complex)

    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.abs(a - np.diag(np.diag(a)))
        if off.max() < JACOBI_TOL:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                if tau >= 0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # U = diag(1, conj(phase)) on (p, q) followed by the real rotation
                u_pp, u_pq = c, s
                u_qp, u_qq = -s * phase.conjugate(), c * phase.conjugate()

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = col_p * u_pp + col_q * u_qp
                a[:, q] = col_p * u_pq + col_q * u_qq
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = np.conj(u_pp) * row_p + np.conj(u_qp) * row_q
                a[q, :] = np.conj(u_pq) * row_p + np.conj(u_qq) * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = vp * u_pp + vq * u_qp
                v[:, q] = vp * u_pq + vq * u_qq

    values = np.diag(a).real.copy()
    order = np.argsort(values, kind="stable")
    return EigSystem(values[order], v[:, order])


def _jacobi2(a: np.ndarray) -> EigSystem:
    # a single Jacobi rotation diagonalizes a 2x2 Hermitian matrix exactly
    app = a[0, 0].real
    aqq = a[1, 1].real
    apq = complex(a[0, 1])
    mag = abs(apq)
    if mag < JACOBI_TOL:
        vals = np.array([app, aqq])
        vecs = np.eye(2, dtype=complex)
    else:
        phase = apq / mag
        tau = (aqq - app) / (2.0 * mag)
        t = 1.0 / (tau + math.sqrt(1.0 + tau * tau)) if tau >= 0 else -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
        c = 1.0 / math.sqrt(1.0 + t * t)
        s = t * c
        vals = np.array([app - t * mag, aqq + t * mag])
        vecs = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
    if vals[1] < vals[0]:
        return EigSystem(vals[::-1].copy(), vecs[:, ::-1].copy())
    return EigSystem(vals, vecs)


def jacobi2_values(h: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a stack of 2x2 Hermitian matrices, shape (N, 2).

    Vectorized form of the single rotation used by :func:`herm_eig`.
    """
    app = h[:, 0, 0].real
    aqq = h[:, 1, 1].real
    mag = np.abs(h[:, 0, 1])
    with np.errstate(divide="ignore", invalid="ignore"):
        tau = (aqq - app) / (2.0 * mag)
        t = np.sign(tau) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
    t = np.where(tau == 0.0, 1.0, t)
    t = np.where(mag < JACOBI_TOL, 0.0, t)
    v1 = app - t * mag
    v2 = aqq + t * mag
    return np.stack([np.minimum(v1, v2), np.maximum(v1, v2)], axis=1)


def eigvalsh(h) -> np.ndarray:
    return herm_eig(h).values


def validate_density(m) -> DensityDiagnostics:
    """Return hermiticity defect, trace defect and smallest eigenvalue of ``m``.

    Pure diagnostic: nothing is raised; callers compare against tolerances.
    """
    m = as_cmatrix(m)
    herm = hermiticity_defect(m)
    trace = abs(np.trace(m) - 1.0)
    values = herm_eig(0.5 * (m + dagger(m))).values
    return DensityDiagnostics(herm, float(trace), float(values[0]))


def check_density(m) -> np.ndarray:
    """Validate ``m`` as a density matrix and return it as a complex array."""
    m = as_cmatrix(m)
    diag = validate_density(m)
    if diag.hermiticity > HERMITIAN_TOL:
        raise DensityError(f"not Hermitian: defect {diag.hermiticity:.3e}")
    if diag.trace > TRACE_TOL:
        raise DensityError(f"trace is not 1: defect {diag.trace:.3e}")
    if diag.min_eigenvalue < -PSD_TOL:
        raise DensityError(
            f"not positive semidefinite: min eigenvalue {diag.min_eigenvalue:.3e}"
        )
    return m


def partial_trace(rho, keep: str) -> np.ndarray:
    """Reduce a two-qubit state to subsystem ``keep`` ('a' or 'b')."""
    rho = check_density(rho)
    if rho.shape != (4, 4):
        raise ValueError("partial_trace expects a 4x4 two-qubit state")
    return _ptrace(rho, keep)


def _ptrace(m: np.ndarray, keep: str) -> np.ndarray:
    # unchecked variant, also used for unnormalized operators
    t = m.reshape(2, 2, 2, 2)
    if keep == "a":
        return np.einsum("ijkj->ik", t)
    if keep == "b":
        return np.einsum("ijil->jl", t)
    raise ValueError(f"keep must be 'a' or 'b', got {keep!r}")
