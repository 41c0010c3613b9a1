"""Unitary encoding on qubit a and the coherent-versus-local information gap.

Alice applies U_k with probability p_k to her qubit. Bob then either
measures the whole encoded pair (I_q) or measures one qubit before the
other (the local quantities). Their difference is the quantum advantage.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from qadvantage.correlate import (
    Scheme,
    _cond_entropy,
    cond_entropy_batch,
    discord,
    minimize_over_basis,
    min_cond_entropy,
    vn_entropy,
)
from qadvantage.qmat import _ptrace, check_density, dagger, kron
from qadvantage.states import I2


def gen_pauli(d: int, m: int, n: int) -> np.ndarray:
    """Generalized Pauli X^m Z^n with X|j> = |j+1 mod d>, Z|j> = w^j |j>."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    if not (0 <= m < d and 0 <= n < d):
        raise ValueError(f"indices must lie in [0, {d}), got m={m}, n={n}")
    omega = cmath.exp(2j * math.pi / d)
    x = np.zeros((d, d), dtype=complex)
    for j in range(d):
        x[(j + 1) % d, j] = 1.0
    z = np.diag([omega ** j for j in range(d)])
    return np.linalg.matrix_power(x, m) @ np.linalg.matrix_power(z, n)


@dataclass(frozen=True)
class EncodingEnsemble:
    """Probabilities and single-qubit unitaries applied to subsystem a."""

    entries: tuple

    def __post_init__(self):
        entries = tuple((float(p), np.asarray(u, dtype=complex)) for p, u in self.entries)
        if not entries:
            raise ValueError("empty encoding ensemble")
        probs = [p for p, _ in entries]
        if min(probs) < 0 or abs(sum(probs) - 1.0) > 1e-12:
            raise ValueError(f"encoding probabilities must be >= 0 and sum to 1, got {probs}")
        for _, u in entries:
            if u.shape[0] != u.shape[1]:
                raise ValueError("encoding unitaries must be square")
            if np.abs(dagger(u) @ u - np.eye(u.shape[0])).max() > 1e-10:
                raise ValueError("encoding operator is not unitary")
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.entries[0][1].shape[0]

    @classmethod
    def from_unitaries(cls, unitaries: Sequence, probs: Sequence[float] | None = None):
        if probs is None:
            probs = [1.0 / len(unitaries)] * len(unitaries)
        return cls(tuple(zip(probs, unitaries)))


def pauli_ensemble() -> EncodingEnsemble:
    """The four qubit Paulis X^m Z^n, m, n in {0, 1}, each with weight 1/4."""
    return EncodingEnsemble.from_unitaries(
        [gen_pauli(2, m, n) for m in (0, 1) for n in (0, 1)]
    )


def identity_ensemble() -> EncodingEnsemble:
    return EncodingEnsemble(((1.0, I2),))


def apply_encoding(rho, ensemble: EncodingEnsemble) -> np.ndarray:
    """sum_k p_k (U_k (x) I) rho (U_k (x) I)^dagger."""
    rho = check_density(rho)
    if ensemble.dim != 2:
        raise ValueError("only qubit encodings act on two-qubit states")
    out = np.zeros((4, 4), dtype=complex)
    for p, u in ensemble.entries:
        big = kron(u, I2)
        out += p * (big @ rho @ dagger(big))
    return 0.5 * (out + dagger(out))


class AdvantageReport(NamedTuple):
    i0: float
    iq: float
    ic_b: float
    ic_a_bound: float
    # realized local information: the b-first value
    ic: float
    # max(ic_b, ic_a_bound); mixes a realized value with an upper bound
    ic_upper: float
    delta_i: float
    delta_discord: float
    j_tilde: float
    delta_tilde: float


def _local_gain_b(rho, rho_enc, scheme: Scheme) -> float:
    """sup over bases of [S_cond(encoded) - S_cond(original)], measuring b."""
    def gain(basis):
        ops = scheme.operators(basis)
        return _cond_entropy(rho_enc, ops, "b") - _cond_entropy(rho, ops, "b")

    if scheme.basis is not None:
        return gain(scheme.basis)
    def batch(th, ph):
        return cond_entropy_batch(rho, scheme, "b", th, ph) - cond_entropy_batch(
            rho_enc, scheme, "b", th, ph
        )

    _, neg = minimize_over_basis(lambda b: -gain(b), batch=batch)
    return -neg


def advantage(rho, ensemble: EncodingEnsemble, scheme: Scheme) -> AdvantageReport:
    """Information quantities of one encoding run under a measurement scheme."""
    rho = check_density(rho)
    if ensemble.dim != 2:
        raise ValueError(f"advantage is defined for qubit encodings only (d={ensemble.dim})")
    enc = apply_encoding(rho, ensemble)

    s_a = vn_entropy(_ptrace(rho, "a"), validate=False)
    s_b = vn_entropy(_ptrace(rho, "b"), validate=False)
    i0 = vn_entropy(_ptrace(enc, "a"), validate=False) - s_a
    iq = vn_entropy(enc, validate=False) - vn_entropy(rho, validate=False)

    ic_b = _local_gain_b(rho, enc, scheme)
    _, s_cond_a = min_cond_entropy(rho, scheme, side="a")
    ic_a_bound = i0 + s_b - s_cond_a

    before = discord(rho, scheme, "b")
    after = discord(enc, scheme, "b")
    return AdvantageReport(
        i0=i0,
        iq=iq,
        ic_b=ic_b,
        ic_a_bound=ic_a_bound,
        ic=ic_b,
        ic_upper=max(ic_b, ic_a_bound),
        delta_i=iq - ic_b,
        delta_discord=before.discord - after.discord,
        j_tilde=after.classical_corr,
        delta_tilde=after.discord,
    )


class SandwichResult(NamedTuple):
    passed: bool
    lower_margin: float
    upper_margin: float
    message: str


def sandwich_check(report: AdvantageReport, tol: float = 1e-8) -> SandwichResult:
    """Check  delta_discord - J~ <= delta_I <= delta_discord  within ``tol``.

    Margins are positive when the bound holds.
    """
    lower = report.delta_i - (report.delta_discord - report.j_tilde)
    upper = report.delta_discord - report.delta_i
    passed = bool(lower >= -tol and upper >= -tol)
    msg = (
        f"delta_I={report.delta_i:.12g} delta_discord={report.delta_discord:.12g} "
        f"J~={report.j_tilde:.12g} I_q={report.iq:.12g} I_c={report.ic:.12g} "
        f"lower_margin={lower:.3e} upper_margin={upper:.3e}"
    )
    return SandwichResult(passed, float(lower), float(upper), msg)
