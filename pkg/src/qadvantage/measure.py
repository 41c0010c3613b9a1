"""Projective and weak two-outcome measurements on one qubit of a pair."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from qadvantage.qmat import _ptrace, check_density, dagger, kron
from qadvantage.states import I2, BlochBasis, bloch_projectors

IMPOSSIBLE_TOL = 1e-14


@dataclass(frozen=True)
class WeakStrength:
    """Measurement strength ``x``; ``x = 0`` is no measurement, ``|x| -> inf`` projective."""

    x: float

    def __post_init__(self):
        if not math.isfinite(self.x):
            raise ValueError(f"weak strength must be finite, got {self.x}")

    @property
    def x_minus(self) -> float:
        return 0.5 * (1.0 - math.tanh(self.x))

    @property
    def x_plus(self) -> float:
        return 0.5 * (1.0 + math.tanh(self.x))


class MeasurementOutcome(NamedTuple):
    probability: float
    # None when the outcome is impossible (probability below IMPOSSIBLE_TOL)
    conditional: Optional[np.ndarray]

    @property
    def impossible(self) -> bool:
        return self.conditional is None


def _sqrt_weights(x: float) -> tuple[float, float]:
    # sqrt((1 -/+ tanh x)/2) without cancellation at large |x|
    t = math.tanh(x)
    if x >= 0:
        sm = 1.0 / (math.sqrt(2.0 * (1.0 + t)) * math.cosh(x))
        sp = math.sqrt(0.5 * (1.0 + t))
    else:
        sp = 1.0 / (math.sqrt(2.0 * (1.0 - t)) * math.cosh(x))
        sm = math.sqrt(0.5 * (1.0 - t))
    return sm, sp


def weak_pair(x, basis: BlochBasis) -> tuple[np.ndarray, np.ndarray]:
    """Weak operators (M(x), M(-x)).

    M(x) = sqrt(X-) P1 + sqrt(X+) P2 and M(-x) = sqrt(X+) P1 + sqrt(X-) P2,
    with X-/+ = (1 -/+ tanh x) / 2 and (P1, P2) the Bloch projectors.
    """
    if isinstance(x, WeakStrength):
        x = x.x
    WeakStrength(x)
    p1, p2 = bloch_projectors(basis)
    sm, sp = _sqrt_weights(x)
    return sm * p1 + sp * p2, sp * p1 + sm * p2


def projective_pair(basis: BlochBasis) -> tuple[np.ndarray, np.ndarray]:
    return bloch_projectors(basis)


def lift_to_b(m) -> np.ndarray:
    """I (x) m acting on subsystem b."""
    return kron(I2, m)


def lift_to_a(m) -> np.ndarray:
    return kron(m, I2)


def _outcome(rho: np.ndarray, op: np.ndarray, keep: str) -> MeasurementOutcome:
    post = op @ rho @ dagger(op)
    p = float(np.trace(post).real)
    if p < IMPOSSIBLE_TOL:
        return MeasurementOutcome(max(p, 0.0), None)
    cond = _ptrace(post, keep) / p
    return MeasurementOutcome(p, 0.5 * (cond + dagger(cond)))


def measure_on_b(rho, m) -> MeasurementOutcome:
    """Apply Kraus operator ``m`` to qubit b; return p and the state of a."""
    rho = check_density(rho)
    return _outcome(rho, lift_to_b(m), "a")


def measure_on_a(rho, m) -> MeasurementOutcome:
    """Apply Kraus operator ``m`` to qubit a; return p and the state of b."""
    rho = check_density(rho)
    return _outcome(rho, lift_to_a(m), "b")


def measure(rho, m, side: str = "b", validate: bool = True) -> MeasurementOutcome:
    if validate:
        rho = check_density(rho)
    if side == "b":
        return _outcome(rho, lift_to_b(m), "a")
    if side == "a":
        return _outcome(rho, lift_to_a(m), "b")
    raise ValueError(f"side must be 'a' or 'b', got {side!r}")


def pair_effects(kind: str, x: float, thetas, phis) -> tuple[np.ndarray, np.ndarray]:
    """Effects M^dagger M of both outcomes for many bases at once.

    Returns two arrays of shape (N, 2, 2); only the effects matter for the
    outcome probabilities and the conditional state of the other qubit.
    """
    thetas = np.asarray(thetas, dtype=float).ravel()
    phis = np.asarray(phis, dtype=float).ravel()
    c = np.cos(thetas / 2.0)
    s = np.sin(thetas / 2.0)
    p1 = np.empty((thetas.size, 2, 2), dtype=complex)
    p1[:, 0, 0] = c * c
    p1[:, 0, 1] = np.exp(-1j * phis) * s * c
    p1[:, 1, 0] = np.exp(1j * phis) * s * c
    p1[:, 1, 1] = s * s
    p2 = I2 - p1
    if kind == "projective":
        return p1, p2
    w = WeakStrength(x)
    return w.x_minus * p1 + w.x_plus * p2, w.x_plus * p1 + w.x_minus * p2
