"""Analytic advantage formulas for pure, Bell-diagonal and Werner states.

These are evaluated directly from the state parameters and serve as the
reference the density-matrix pipeline is checked against. All values in bits.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from qadvantage.measure import WeakStrength
from qadvantage.states import BlochBasis, bell_weights, check_bell_params


def xlog2x(v: float) -> float:
    return v * math.log2(v) if v > 0.0 else 0.0


def h2(p: float) -> float:
    """Binary entropy in bits."""
    return -xlog2x(p) - xlog2x(1.0 - p)


def _strength(x) -> float:
    return x.x if isinstance(x, WeakStrength) else float(WeakStrength(float(x)).x)


class PureClosedForm(NamedTuple):
    discord: float
    adv_projective: float
    p_plus: float
    p_minus: float
    k1_plus: float
    k2_plus: float
    k1_minus: float
    k2_minus: float
    cond_entropy_weak: float
    adv_weak: float


def _pure_k(lambda0: float, p: float, x: float) -> tuple[float, float]:
    if p <= 0.0:
        return 1.0, 0.0
    arg = 1.0 - lambda0 * (1.0 - lambda0) / (p * p * math.cosh(x) ** 2)
    root = math.sqrt(min(1.0, max(0.0, arg)))
    return 0.5 * (1.0 + root), 0.5 * (1.0 - root)


def pure_family(lambda0: float, x=0.0, basis: BlochBasis = BlochBasis()) -> PureClosedForm:
    """Closed forms for sqrt(l0)|00> + sqrt(l1)|11> under maximal encoding.

    The weak quantities use the operator pair along ``basis``; only the polar
    angle enters.
    """
    lambda0 = float(lambda0)
    if not 0.0 <= lambda0 <= 1.0:
        raise ValueError(f"lambda0={lambda0} outside [0, 1]")
    x = _strength(x)
    lambda1 = 1.0 - lambda0
    s_a = h2(lambda0)

    t = math.tanh(x)
    bias = (lambda0 - lambda1) * t * math.cos(basis.theta)
    p_plus = 0.5 * (1.0 - bias)
    p_minus = 0.5 * (1.0 + bias)
    k1p, k2p = _pure_k(lambda0, p_plus, x)
    k1m, k2m = _pure_k(lambda0, p_minus, x)

    # sum_s p(s x) [k1 log k1 + k2 log k2] is minus the weak conditional entropy
    bracket = p_plus * (xlog2x(k1p) + xlog2x(k2p)) + p_minus * (xlog2x(k1m) + xlog2x(k2m))
    return PureClosedForm(
        discord=s_a,
        adv_projective=s_a,
        p_plus=p_plus,
        p_minus=p_minus,
        k1_plus=k1p,
        k2_plus=k2p,
        k1_minus=k1m,
        k2_minus=k2m,
        cond_entropy_weak=-bracket,
        adv_weak=s_a - bracket,
    )


def maxent_adv_weak(x) -> float:
    """Weak-measurement advantage of the maximally entangled pair, 1 + H2(X-)."""
    w = WeakStrength(_strength(x))
    xm, xp = w.x_minus, w.x_plus
    return 2.0 - (xm * math.log2(2.0 * xm) if xm > 0 else 0.0) - (
        xp * math.log2(2.0 * xp) if xp > 0 else 0.0
    )


class BellDiagClosedForm(NamedTuple):
    iq: float
    c_max: float
    cond_entropy_luo: float
    adv_projective: float
    lam1_plus: float
    lam2_plus: float
    lam1_minus: float
    lam2_minus: float
    cond_entropy_weak: float
    adv_weak: float


def belldiag_iq(c1: float, c2: float, c3: float) -> float:
    """I_q = S(I/4) - S(rho) = (1/4) sum_w w log2 w over the four weights."""
    return 0.25 * sum(xlog2x(w) for w in bell_weights(c1, c2, c3))


def luo_cond_entropy(c_max: float) -> float:
    """Minimal projective conditional entropy of a Bell-diagonal state."""
    return h2(0.5 * (1.0 + c_max))


def weak_radius(c1: float, c2: float, c3: float, basis: BlochBasis) -> float:
    """Length of the conditional Bloch vector (c_j n_j) left by a measurement along n."""
    n = basis.direction()
    return math.sqrt((c1 * n[0]) ** 2 + (c2 * n[1]) ** 2 + (c3 * n[2]) ** 2)


def belldiag_family(
    c1: float, c2: float, c3: float, x=0.0, basis: BlochBasis = BlochBasis()
) -> BellDiagClosedForm:
    """Closed forms for (I + sum c_j s_j (x) s_j)/4 under maximal encoding.

    Both weak outcomes occur with probability 1/2 and leave qubit a with
    eigenvalues (1 +/- r tanh(+/-x))/2, where r is :func:`weak_radius`.
    """
    check_bell_params(c1, c2, c3)
    x = _strength(x)
    iq = belldiag_iq(c1, c2, c3)
    c_max = max(abs(c1), abs(c2), abs(c3))
    adv_p = iq - 0.5 * (xlog2x(1.0 - c_max) + xlog2x(1.0 + c_max))

    shift = weak_radius(c1, c2, c3, basis) * math.tanh(x)
    l1p, l2p = 0.5 * (1.0 + shift), 0.5 * (1.0 - shift)
    l1m, l2m = 0.5 * (1.0 - shift), 0.5 * (1.0 + shift)
    bracket = xlog2x(l1p) + xlog2x(l2p) + xlog2x(l1m) + xlog2x(l2m)
    return BellDiagClosedForm(
        iq=iq,
        c_max=c_max,
        cond_entropy_luo=luo_cond_entropy(c_max),
        adv_projective=adv_p,
        lam1_plus=l1p,
        lam2_plus=l2p,
        lam1_minus=l1m,
        lam2_minus=l2m,
        cond_entropy_weak=-0.5 * bracket,
        adv_weak=iq - 1.0 - 0.5 * bracket,
    )


def belldiag_best_weak(c1: float, c2: float, c3: float, x=0.0) -> float:
    """Weak advantage along the direction of the largest |c_j|."""
    check_bell_params(c1, c2, c3)
    shift = max(abs(c1), abs(c2), abs(c3)) * math.tanh(_strength(x))
    return belldiag_iq(c1, c2, c3) - 1.0 + h2(0.5 * (1.0 + shift))


class WernerClosedForm(NamedTuple):
    adv_projective: float
    adv_weak: float


def werner_family(c: float, x=0.0) -> WernerClosedForm:
    """Closed forms for c|psi-><psi-| + (1 - c) I/4, 0 <= c <= 1."""
    c = float(c)
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"Werner parameter c={c} outside [0, 1]")
    ct = c * math.tanh(_strength(x))
    adv_p = 0.25 * xlog2x(1.0 + 3.0 * c) + 0.25 * xlog2x(1.0 - c) - 0.5 * xlog2x(1.0 + c)
    adv_w = (
        0.75 * xlog2x(1.0 - c)
        + 0.25 * xlog2x(1.0 + 3.0 * c)
        - xlog2x(0.5 * (1.0 - ct))
        - xlog2x(0.5 * (1.0 + ct))
        - 1.0
    )
    return WernerClosedForm(adv_p, adv_w)
