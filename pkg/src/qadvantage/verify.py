"""Cross-checks of the closed forms against the density-matrix pipeline.

Each check returns a :class:`CheckResult` with the worst deviation seen and
the tolerance it is held to. Objects built along the way are collected so
the structural suite can validate every one of them.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from qadvantage import closedform as cf
from qadvantage.correlate import Scheme, discord, min_cond_entropy, vn_entropy
from qadvantage.encode import advantage, apply_encoding, pauli_ensemble, sandwich_check
from qadvantage.measure import measure_on_b, measure_on_a, weak_pair
from qadvantage.qmat import validate_density
from qadvantage.states import (
    BlochBasis,
    bell_diagonal,
    bloch_projectors,
    check_bell_params,
    pure_schmidt,
    werner,
)

LAMBDA0_GRID = tuple(round(0.05 * k, 2) for k in range(1, 20))
WERNER_GRID = tuple(round(0.1 * k, 1) for k in range(1, 10))
X_GRID = (0.1, 0.5, 1.0, 2.0, 4.0, 8.0)
THETA_GRID = tuple(k * math.pi / 6 for k in range(7))
TRIPLE_SEED = 2015
N_TRIPLES = 50

ORACLE_TOL = 1e-6


def physical_triples(n: int = N_TRIPLES, seed: int = TRIPLE_SEED) -> list[tuple[float, float, float]]:
    """``n`` reproducible Bell-diagonal triples drawn uniformly from the tetrahedron."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        c = rng.uniform(-1.0, 1.0, size=3)
        try:
            check_bell_params(*c, tol=0.0)
        except ValueError:
            continue
        out.append(tuple(round(float(v), 6) for v in c))
    return out


@dataclass
class CheckResult:
    name: str
    max_dev: float
    tol: float
    passed: bool
    seconds: float = 0.0
    failures: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<28s} max_dev={self.max_dev:.3e} tol={self.tol:.1e} ({self.seconds:.2f}s)"


class Tracker:
    """Accumulates worst deviations and records failing parameter sets."""

    def __init__(self, name: str, tol: float):
        self.name = name
        self.tol = tol
        self.max_dev = 0.0
        self.failures: list = []
        self._t0 = time.perf_counter()

    def dev(self, value: float, tol: float | None = None, **params) -> None:
        value = float(value)
        if not math.isfinite(value):
            value = math.inf
        self.max_dev = max(self.max_dev, value)
        if value > (self.tol if tol is None else tol):
            self.failures.append(dict(params, dev=value))

    def close(self, a: float, b: float, tol: float | None = None, **params) -> None:
        self.dev(abs(a - b), tol, **params)

    def require(self, ok: bool, **params) -> None:
        if not ok:
            self.max_dev = math.inf
            self.failures.append(params)

    def result(self) -> CheckResult:
        return CheckResult(
            self.name, self.max_dev, self.tol, not self.failures,
            time.perf_counter() - self._t0, self.failures[:20],
        )


@dataclass
class Registry:
    """Objects constructed during a verify run, checked by :func:`check_structure`."""

    states: list = field(default_factory=list)
    reports: list = field(default_factory=list)

    def state(self, rho):
        self.states.append(rho)
        return rho


def _pure(reg: Registry, lam: float):
    return reg.state(pure_schmidt(lam))


def check_maxent(reg: Registry) -> CheckResult:
    t = Tracker("maxent_projective", 1e-9)
    rep = advantage(_pure(reg, 0.5), pauli_ensemble(), Scheme.projective())
    reg.reports.append(rep)
    t.close(rep.iq, 2.0, quantity="I_q")
    t.close(rep.ic, 1.0, quantity="I_c")
    t.close(rep.delta_i, 1.0, quantity="delta_I")
    return t.result()


def check_belldiag_plane(reg: Registry) -> CheckResult:
    t = Tracker("belldiag_0.045_plane", 1e-3)
    c = (0.15, 0.03, 0.7)
    rep = advantage(reg.state(bell_diagonal(*c)), pauli_ensemble(), Scheme.projective())
    reg.reports.append(rep)
    t.close(cf.belldiag_family(*c).adv_projective, 0.045, route="closed form")
    t.close(rep.delta_i, 0.045, route="numeric")
    return t.result()


def check_pure_oracle(reg: Registry) -> CheckResult:
    t = Tracker("oracle_pure", ORACLE_TOL)
    ens = pauli_ensemble()
    for lam in LAMBDA0_GRID:
        rho = _pure(reg, lam)
        rep = advantage(rho, ens, Scheme.projective())
        reg.reports.append(rep)
        t.close(rep.delta_i, cf.pure_family(lam).adv_projective, lam=lam, scheme="projective")
        t.close(discord(rho, Scheme.projective()).discord, cf.pure_family(lam).discord, lam=lam, q="discord")
        for x in X_GRID:
            for th in THETA_GRID:
                basis = BlochBasis(th, 0.0)
                ref = cf.pure_family(lam, x, basis)
                scheme = Scheme.weak(x, basis)
                rep = advantage(rho, ens, scheme)
                reg.reports.append(rep)
                t.close(rep.delta_i, ref.adv_weak, lam=lam, x=x, theta=th, q="adv_weak")
                _, s = min_cond_entropy(rho, scheme)
                t.close(s, ref.cond_entropy_weak, lam=lam, x=x, theta=th, q="cond_weak")
    return t.result()


def check_belldiag_oracle(reg: Registry, triples) -> CheckResult:
    t = Tracker("oracle_belldiag", ORACLE_TOL)
    ens = pauli_ensemble()
    for c in triples:
        rho = reg.state(bell_diagonal(*c))
        rep = advantage(rho, ens, Scheme.projective())
        reg.reports.append(rep)
        ref = cf.belldiag_family(*c)
        t.close(rep.delta_i, ref.adv_projective, c=c, q="adv_projective")
        t.close(rep.iq, ref.iq, c=c, q="I_q")
        for x in X_GRID:
            for th in THETA_GRID:
                basis = BlochBasis(th, 0.0)
                ref = cf.belldiag_family(*c, x, basis)
                scheme = Scheme.weak(x, basis)
                rep = advantage(rho, ens, scheme)
                reg.reports.append(rep)
                t.close(rep.delta_i, ref.adv_weak, c=c, x=x, theta=th, q="adv_weak")
                _, s = min_cond_entropy(rho, scheme)
                t.close(s, ref.cond_entropy_weak, c=c, x=x, theta=th, q="cond_weak")
    return t.result()


def check_werner_oracle(reg: Registry) -> CheckResult:
    t = Tracker("oracle_werner", ORACLE_TOL)
    ens = pauli_ensemble()
    for c in WERNER_GRID:
        rho = reg.state(werner(c))
        rep = advantage(rho, ens, Scheme.projective())
        reg.reports.append(rep)
        t.close(rep.delta_i, cf.werner_family(c).adv_projective, c=c, q="adv_projective")
        for x in X_GRID:
            ref = cf.werner_family(c, x)
            t.close(ref.adv_weak, cf.belldiag_family(-c, -c, -c, x).adv_weak, c=c, x=x, q="werner_vs_belldiag")
            for th in (0.0, math.pi / 3):
                rep = advantage(rho, ens, Scheme.weak(x, BlochBasis(th, 0.7)))
                reg.reports.append(rep)
                t.close(rep.delta_i, ref.adv_weak, c=c, x=x, theta=th, q="adv_weak")
    return t.result()


def check_luo(reg: Registry, triples) -> CheckResult:
    t = Tracker("luo_cond_entropy", ORACLE_TOL)
    for c in triples:
        rho = reg.state(bell_diagonal(*c))
        _, s = min_cond_entropy(rho, Scheme.projective())
        t.close(s, cf.belldiag_family(*c).cond_entropy_luo, c=c)
    return t.result()


def check_limits(reg: Registry) -> CheckResult:
    t = Tracker("limits", 1e-3)
    ens = pauli_ensemble()
    zero = advantage(_pure(reg, 0.5), ens, Scheme.weak(0.0, BlochBasis()))
    reg.reports.append(zero)
    t.close(zero.delta_i, 2.0, tol=1e-9, q="maxent x=0")
    t.close(cf.maxent_adv_weak(0.0), 2.0, tol=1e-9, q="maxent x=0 closed form")

    cases = [("pure", _pure(reg, 0.3), cf.pure_family(0.3).adv_projective)]
    c = (0.15, 0.03, 0.7)
    cases.append(("belldiag", reg.state(bell_diagonal(*c)), cf.belldiag_family(*c).adv_projective))
    cases.append(("werner", reg.state(werner(0.4)), cf.werner_family(0.4).adv_projective))
    for fam, rho, adv_p in cases:
        rep = advantage(rho, ens, Scheme.weak(10.0))
        reg.reports.append(rep)
        t.close(rep.delta_i, adv_p, family=fam, x=10.0)
    t.close(cf.belldiag_best_weak(*c, 10.0), cf.belldiag_family(*c).adv_projective, family="belldiag closed")
    t.close(cf.werner_family(0.4, 10.0).adv_weak, cf.werner_family(0.4).adv_projective, family="werner closed")
    return t.result()


def _sweep_ok(t: Tracker, values, adv_p, **params) -> None:
    for x, v in zip(X_GRID, values):
        t.dev(adv_p - v, x=x, q="ordering", **params)
    for (x0, a), (x1, b) in zip(zip(X_GRID, values), zip(X_GRID[1:], values[1:])):
        t.dev(b - a, x0=x0, x1=x1, q="monotone", **params)


def check_ordering(reg: Registry, triples) -> CheckResult:
    t = Tracker("ordering_monotonicity", 1e-9)
    for lam in LAMBDA0_GRID:
        for th in THETA_GRID:
            b = BlochBasis(th, 0.0)
            vals = [cf.pure_family(lam, x, b).adv_weak for x in X_GRID]
            _sweep_ok(t, vals, cf.pure_family(lam).adv_projective, lam=lam, theta=th)
    for c in triples:
        for th in THETA_GRID:
            b = BlochBasis(th, 0.0)
            vals = [cf.belldiag_family(*c, x, b).adv_weak for x in X_GRID]
            _sweep_ok(t, vals, cf.belldiag_family(*c).adv_projective, c=c, theta=th)
    for c in WERNER_GRID:
        vals = [cf.werner_family(c, x).adv_weak for x in X_GRID]
        _sweep_ok(t, vals, cf.werner_family(c).adv_projective, c=c)
    vals = [cf.maxent_adv_weak(x) for x in X_GRID]
    _sweep_ok(t, vals, 1.0, family="maxent")

    # numeric sweeps at the optimal direction
    ens = pauli_ensemble()
    for fam, rho in (("pure", _pure(reg, 0.3)), ("belldiag", reg.state(bell_diagonal(0.15, 0.03, 0.7))),
                     ("werner", reg.state(werner(0.4)))):
        adv_p = advantage(rho, ens, Scheme.projective()).delta_i
        vals = [advantage(rho, ens, Scheme.weak(x)).delta_i for x in X_GRID]
        _sweep_ok(t, vals, adv_p, family=fam, route="numeric")
    return t.result()


def check_sandwich(reg: Registry, triples) -> CheckResult:
    t = Tracker("sandwich", 1e-8)
    ens = pauli_ensemble()
    states = [("pure", lam, _pure(reg, lam)) for lam in LAMBDA0_GRID]
    states += [("belldiag", c, reg.state(bell_diagonal(*c))) for c in triples[:10]]
    states += [("werner", c, reg.state(werner(c))) for c in WERNER_GRID]
    for scheme in (Scheme.projective(), Scheme.weak(0.7)):
        for fam, p, rho in states:
            rep = advantage(rho, ens, scheme)
            reg.reports.append(rep)
            t.dev(abs(rep.j_tilde), tol=1e-9, family=fam, param=p, q="J~", scheme=scheme.kind)
            t.dev(abs(rep.delta_tilde), tol=1e-9, family=fam, param=p, q="discord~", scheme=scheme.kind)
            t.close(rep.delta_i, rep.delta_discord, family=fam, param=p, q="dI-dDelta", scheme=scheme.kind)
            res = sandwich_check(rep)
            t.require(res.passed, family=fam, param=p, msg=res.message)
    return t.result()


def check_crossover(reg: Registry) -> CheckResult:
    t = Tracker("fig1_crossover", 1e-9)
    gap = cf.maxent_adv_weak(2.7) - 1.0
    rep_w = advantage(_pure(reg, 0.5), pauli_ensemble(), Scheme.weak(2.7, BlochBasis()))
    rep_p = advantage(_pure(reg, 0.5), pauli_ensemble(), Scheme.projective())
    num_gap = rep_w.delta_i - rep_p.delta_i
    for g, route in ((gap, "closed"), (num_gap, "numeric")):
        t.require(0.02 < g < 0.05, gap=g, route=route)
    t.close(gap, num_gap, q="closed vs numeric")
    return t.result()


def check_structure(reg: Registry) -> CheckResult:
    """Density validity, probability completeness, entropy bounds, additivity
    and weak-operator completeness over everything in ``reg``."""
    t = Tracker("structural", 1e-10)
    probe = [BlochBasis(th, ph) for th in THETA_GRID for ph in (0.0, 1.1, 4.0)]
    for k, rho in enumerate(reg.states):
        d = validate_density(rho)
        t.dev(d.hermiticity, state=k, q="hermitian")
        t.dev(d.trace, state=k, q="trace")
        t.dev(-d.min_eigenvalue, state=k, q="psd")
        s = vn_entropy(rho)
        t.dev(-s, state=k, q="entropy>=0")
        t.dev(s - 2.0, state=k, q="entropy<=2")
        rep = discord(rho, Scheme.projective())
        t.close(rep.mutual_info, rep.classical_corr + rep.discord, state=k, q="additivity")
        t.dev(-rep.discord, tol=1e-9, state=k, q="discord>=0")
        enc = apply_encoding(rho, pauli_ensemble())
        d = validate_density(enc)
        t.dev(max(d.hermiticity, d.trace, -d.min_eigenvalue), state=k, q="encoded valid")
        for b in probe[k % 7::7]:
            for x in (0.3, 2.0):
                mp, mm = weak_pair(x, b)
                for meas in (measure_on_b, measure_on_a):
                    outs = [meas(rho, mp), meas(rho, mm)]
                    t.close(sum(o.probability for o in outs), 1.0, state=k, q="weak completeness p")
                    for o in outs:
                        if not o.impossible:
                            d = validate_density(o.conditional)
                            t.dev(max(d.hermiticity, d.trace, -d.min_eigenvalue), state=k, q="conditional")
            p1, p2 = bloch_projectors(b)
            outs = [measure_on_b(rho, p1), measure_on_b(rho, p2)]
            t.close(sum(o.probability for o in outs), 1.0, state=k, q="projective completeness")
    for x in X_GRID + (0.0, 10.0, -3.0):
        for b in probe:
            mp, mm = weak_pair(x, b)
            dev = np.abs(mp.conj().T @ mp + mm.conj().T @ mm - np.eye(2)).max()
            t.dev(dev, x=x, basis=b, q="M+^2 + M-^2 = I")
    for k, rep in enumerate(reg.reports):
        t.close(rep.delta_i, rep.iq - rep.ic, report=k, q="dI = Iq - Ic")
        t.dev(rep.i0 - rep.iq, tol=1e-9, report=k, q="Iq >= I0")
    return t.result()


def run_all(n_triples: int = N_TRIPLES, extra_triples=()) -> list[CheckResult]:
    triples = physical_triples(n_triples)
    for c in extra_triples:
        check_bell_params(*c)
        triples.append(tuple(c))
    reg = Registry()
    checks: list[Callable[[], CheckResult]] = [
        lambda: check_maxent(reg),
        lambda: check_belldiag_plane(reg),
        lambda: check_pure_oracle(reg),
        lambda: check_belldiag_oracle(reg, triples),
        lambda: check_werner_oracle(reg),
        lambda: check_luo(reg, triples),
        lambda: check_limits(reg),
        lambda: check_ordering(reg, triples),
        lambda: check_sandwich(reg, triples),
        lambda: check_crossover(reg),
        lambda: check_structure(reg),
    ]
    return [c() for c in checks]
