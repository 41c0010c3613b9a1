"""Entropies, measurement-conditional entropy, classical correlation and discord.

All logarithms are base 2. A :class:`Scheme` picks projective or weak
measurements and either a fixed Bloch basis or an optimization over the
whole sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

from qadvantage.measure import (
    IMPOSSIBLE_TOL,
    WeakStrength,
    measure,
    pair_effects,
    projective_pair,
    weak_pair,
)
from qadvantage.qmat import _ptrace, check_density, herm_eig, jacobi2_values
from qadvantage.states import BlochBasis

GRID_POINTS = 61
GOLDEN_TOL = 1e-6
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Scheme:
    """Measurement scheme: ``kind`` is 'projective' or 'weak'.

    ``basis=None`` means optimize over all Bloch directions.
    """

    kind: str = "projective"
    x: float = 0.0
    basis: Optional[BlochBasis] = None

    def __post_init__(self):
        if self.kind not in ("projective", "weak"):
            raise ValueError(f"unknown scheme kind {self.kind!r}")
        if self.kind == "weak":
            WeakStrength(self.x)
        if self.basis is not None and not isinstance(self.basis, BlochBasis):
            object.__setattr__(self, "basis", BlochBasis(*self.basis))

    @classmethod
    def projective(cls, basis=None) -> "Scheme":
        return cls("projective", 0.0, basis)

    @classmethod
    def weak(cls, x: float, basis=None) -> "Scheme":
        return cls("weak", float(x), basis)

    def with_basis(self, basis: BlochBasis) -> "Scheme":
        return Scheme(self.kind, self.x, basis)

    def operators(self, basis: Optional[BlochBasis] = None):
        basis = self.basis if basis is None else basis
        if basis is None:
            raise ValueError("scheme has no fixed basis")
        if self.kind == "weak":
            return weak_pair(self.x, basis)
        return projective_pair(basis)


class CorrelationReport(NamedTuple):
    mutual_info: float
    classical_corr: float
    discord: float
    argmin_basis: Optional[BlochBasis]


def entropy_of_spectrum(values) -> float:
    """-sum e log2 e over eigenvalues clipped to [0, 1] with 0 log 0 = 0."""
    s = 0.0
    for e in np.clip(np.asarray(values, dtype=float), 0.0, 1.0):
        if e > 0.0:
            s -= e * math.log2(e)
    return s + 0.0


def binary_entropy(p: float) -> float:
    return entropy_of_spectrum((p, 1.0 - p))


def vn_entropy(rho, validate: bool = True) -> float:
    """Von Neumann entropy in bits."""
    if validate:
        rho = check_density(rho)
    return entropy_of_spectrum(herm_eig(rho).values)


def mutual_info(rho) -> float:
    """S(rho_a) + S(rho_b) - S(rho_ab)."""
    rho = check_density(rho)
    return (
        vn_entropy(_ptrace(rho, "a"), validate=False)
        + vn_entropy(_ptrace(rho, "b"), validate=False)
        - vn_entropy(rho, validate=False)
    )


def _cond_entropy(rho: np.ndarray, ops, side: str) -> float:
    total = 0.0
    for m in ops:
        out = measure(rho, m, side, validate=False)
        if out.impossible:
            continue
        total += out.probability * vn_entropy(out.conditional, validate=False)
    return total


def cond_entropy(rho, scheme: Scheme, side: str = "b") -> float:
    """Probability-weighted entropy of the unmeasured qubit after measuring ``side``.

    The scheme must carry a fixed basis.
    """
    if scheme.basis is None:
        raise ValueError("cond_entropy needs a scheme with a fixed basis")
    rho = check_density(rho)
    return _cond_entropy(rho, scheme.operators(), side)


def _entropy_rows(values: np.ndarray) -> np.ndarray:
    e = np.clip(values, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(e > 0.0, -e * np.log2(np.where(e > 0.0, e, 1.0)), 0.0)
    return terms.sum(axis=1)


def cond_entropy_batch(rho: np.ndarray, scheme: Scheme, side: str, thetas, phis) -> np.ndarray:
    """Conditional entropy for many bases at once (same convention as
    :func:`cond_entropy`); used for grid scans.
    """
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    total = 0.0
    for eff in pair_effects(scheme.kind, scheme.x, thetas, phis):
        if side == "b":
            sub = np.einsum("ijkl,nlj->nik", r, eff)
        else:
            sub = np.einsum("ijkl,nki->njl", r, eff)
        p = np.einsum("nii->n", sub).real
        ok = p >= IMPOSSIBLE_TOL
        safe = np.where(ok, p, 1.0)
        cond = sub / safe[:, None, None]
        cond = 0.5 * (cond + np.conj(np.swapaxes(cond, 1, 2)))
        total = total + np.where(ok, p * _entropy_rows(jacobi2_values(cond)), 0.0)
    return total


def _golden(f: Callable[[float], float], lo: float, hi: float, tol: float):
    c = hi - _INVPHI * (hi - lo)
    d = lo + _INVPHI * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc <= fd:
            hi, d, fd = d, c, fc
            c = hi - _INVPHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INVPHI * (hi - lo)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def minimize_over_basis(
    objective: Callable[[BlochBasis], float],
    grid: int = GRID_POINTS,
    tol: float = GOLDEN_TOL,
    max_rounds: int = 6,
    batch: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]] = None,
) -> tuple[BlochBasis, float]:
    """Deterministic global minimization of ``objective`` over (theta, phi).

    A ``grid`` x ``grid`` scan of [0, pi] x [0, 2 pi) picks the best cell;
    alternating golden-section searches in theta and phi then refine it
    until the brackets are narrower than ``tol``. Ties are broken by the
    smallest (value, theta, phi).

    ``batch``, if given, evaluates the objective on flat arrays of angles
    and is used for the grid scan only.
    """
    th, ph = np.meshgrid(
        np.linspace(0.0, math.pi, grid), np.arange(grid) * (2.0 * math.pi / grid),
        indexing="ij",
    )
    th, ph = th.ravel(), ph.ravel()
    if batch is not None:
        values = np.asarray(batch(th, ph), dtype=float)
    else:
        values = np.array([objective(BlochBasis(float(t), float(p))) for t, p in zip(th, ph)])
    k = np.lexsort((ph, th, values))[0]
    value, theta, phi = float(values[k]), float(th[k]), float(ph[k])

    h_theta = math.pi / (grid - 1)
    h_phi = 2.0 * math.pi / grid
    for _ in range(max_rounds):
        start = value
        lo, hi = max(0.0, theta - h_theta), min(math.pi, theta + h_theta)
        t, v = _golden(lambda th: objective(BlochBasis(th, phi)), lo, hi, tol)
        if (v, t) < (value, theta):
            theta, value = t, v
        if 0.0 < theta < math.pi:
            p, v = _golden(
                lambda ph: objective(BlochBasis(theta, ph % (2.0 * math.pi))),
                phi - h_phi, phi + h_phi, tol,
            )
            p %= 2.0 * math.pi
            if v < value:
                phi, value = p, v
        if start - value < 1e-15:
            break
        h_theta *= 0.25
        h_phi *= 0.25
    if theta in (0.0, math.pi):
        phi = 0.0
    return BlochBasis(theta, phi), value


def min_cond_entropy(rho, scheme: Scheme, side: str = "b") -> tuple[BlochBasis, float]:
    """Conditional entropy at the scheme's basis, or its minimum over bases."""
    rho = check_density(rho)
    if scheme.basis is not None:
        return scheme.basis, _cond_entropy(rho, scheme.operators(), side)
    return minimize_over_basis(
        lambda b: _cond_entropy(rho, scheme.operators(b), side),
        batch=lambda th, ph: cond_entropy_batch(rho, scheme, side, th, ph),
    )


def _marginal(side: str) -> str:
    # the measured side is traced out; the other one carries the information
    return "a" if side == "b" else "b"


def classical_corr(rho, scheme: Scheme, side: str = "b") -> tuple[float, BlochBasis]:
    """J = S(unmeasured marginal) - min over bases of the conditional entropy."""
    rho = check_density(rho)
    basis, s_cond = min_cond_entropy(rho, scheme, side)
    s_marg = vn_entropy(_ptrace(rho, _marginal(side)), validate=False)
    return s_marg - s_cond, basis


def discord(rho, scheme: Scheme, side: str = "b") -> CorrelationReport:
    """Mutual information, classical correlation and their difference.

    With a weak scheme the difference is the super discord.
    """
    rho = check_density(rho)
    i = mutual_info(rho)
    j, basis = classical_corr(rho, scheme, side)
    return CorrelationReport(i, j, i - j, basis)
