"""Constructors for the two-qubit state families and Bloch projector pairs."""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from qadvantage.qmat import DensityError, kron

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SX, SY, SZ)

_PROJECTOR_TOL = 1e-12


class BlochBasis(NamedTuple):
    """Measurement direction on the Bloch sphere (polar ``theta``, azimuth ``phi``)."""

    theta: float = 0.0
    phi: float = 0.0

    def direction(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array(
            [st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)]
        )


def _check_probability(lambda0: float) -> float:
    lambda0 = float(lambda0)
    if not 0.0 <= lambda0 <= 1.0:
        raise DensityError(f"Schmidt coefficient lambda0={lambda0} outside [0, 1]")
    return lambda0


def pure_schmidt(lambda0: float) -> np.ndarray:
    """Projector onto sqrt(l0)|00> + sqrt(1 - l0)|11>."""
    lambda0 = _check_probability(lambda0)
    psi = np.zeros(4, dtype=complex)
    psi[0] = math.sqrt(lambda0)
    psi[3] = math.sqrt(1.0 - lambda0)
    return np.outer(psi, psi.conj())


def bell_weights(c1: float, c2: float, c3: float) -> tuple[float, float, float, float]:
    """The four combinations whose quarter is the Bell-diagonal spectrum."""
    return (
        1.0 - c1 - c2 - c3,
        1.0 + c1 + c2 - c3,
        1.0 + c1 - c2 + c3,
        1.0 - c1 + c2 + c3,
    )


_BELL_LABELS = ("1-c1-c2-c3", "1+c1+c2-c3", "1+c1-c2+c3", "1-c1+c2+c3")


def check_bell_params(c1: float, c2: float, c3: float, tol: float = 1e-12) -> None:
    for label, w in zip(_BELL_LABELS, bell_weights(c1, c2, c3)):
        if w < -tol:
            raise DensityError(
                f"unphysical Bell-diagonal triple ({c1}, {c2}, {c3}): {label} = {w:.6g} < 0"
            )


def bell_diagonal(c1: float, c2: float, c3: float) -> np.ndarray:
    """(I + sum_j c_j sigma_j (x) sigma_j) / 4."""
    check_bell_params(c1, c2, c3)
    rho = np.eye(4, dtype=complex)
    for c, s in zip((c1, c2, c3), PAULIS):
        rho = rho + c * kron(s, s)
    return rho / 4.0


def singlet() -> np.ndarray:
    psi = np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2.0)
    return np.outer(psi, psi.conj())


def werner(c: float) -> np.ndarray:
    """c |psi-><psi-| + (1 - c) I/4, physical for -1/3 <= c <= 1."""
    c = float(c)
    if not -1.0 / 3.0 - 1e-12 <= c <= 1.0 + 1e-12:
        raise DensityError(f"Werner parameter c={c} outside [-1/3, 1]")
    return c * singlet() + (1.0 - c) * np.eye(4, dtype=complex) / 4.0


def product_state(rho_a, rho_b) -> np.ndarray:
    return kron(rho_a, rho_b)


def bloch_projectors(basis: BlochBasis) -> tuple[np.ndarray, np.ndarray]:
    """Projector pair (|psi><psi|, I - |psi><psi|) for
    |psi> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
    """
    theta, phi = basis
    psi = np.array(
        [math.cos(theta / 2.0), complex(math.cos(phi), math.sin(phi)) * math.sin(theta / 2.0)]
    )
    p1 = np.outer(psi, psi.conj())
    return p1, I2 - p1
