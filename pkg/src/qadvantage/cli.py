"""Command-line driver: single-point reports, sweeps, figure data and verify.

Exit codes: 0 success, 1 invariant failure, 2 invalid arguments.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from qadvantage import closedform as cf
from qadvantage.correlate import Scheme, discord
from qadvantage.encode import advantage, pauli_ensemble, sandwich_check
from qadvantage.qmat import DensityError
from qadvantage.states import BlochBasis, bell_diagonal, check_bell_params, pure_schmidt, werner

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_USAGE = 2

FAMILY_AXES = {
    "pure": ("lambda0", "x", "theta", "phi"),
    "belldiag": ("c1", "c2", "c3", "x", "theta", "phi"),
    "werner": ("c", "x", "theta", "phi"),
}


class UsageError(Exception):
    pass


class RowError(Exception):
    pass


def fmt(v: float) -> str:
    return f"{v:.12g}"


def write_csv(path, header, rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        for name, v in zip(header, row):
            if not math.isfinite(v):
                params = ", ".join(f"{h}={fmt(r)}" for h, r in zip(header, row))
                raise RowError(f"non-finite {name} at {params}")
        lines.append(",".join(fmt(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def build_state(family: str, params: dict) -> np.ndarray:
    if family == "pure":
        return pure_schmidt(params["lambda0"])
    if family == "belldiag":
        return bell_diagonal(params["c1"], params["c2"], params["c3"])
    if family == "werner":
        return werner(params["c"])
    raise UsageError(f"unknown family {family!r}")


def build_scheme(kind: str, x: float, theta, phi, optimize: bool) -> Scheme:
    basis = None if optimize or theta is None else BlochBasis(theta, phi or 0.0)
    if basis is not None and not 0.0 <= basis.theta <= math.pi:
        raise UsageError(f"theta={basis.theta} outside [0, pi]")
    if kind == "weak":
        return Scheme.weak(x, basis)
    return Scheme.projective(basis)


def closed_form(family: str, params: dict, scheme: Scheme) -> dict:
    """Closed-form advantages matching ``scheme`` (None where no closed form applies)."""
    x = scheme.x
    basis = scheme.basis
    out = {}
    if family == "pure":
        r = cf.pure_family(params["lambda0"], x, basis or BlochBasis())
        out["adv_projective"] = r.adv_projective
        out["adv_weak"] = r.adv_weak if basis is not None else None
    elif family == "belldiag":
        c = (params["c1"], params["c2"], params["c3"])
        r = cf.belldiag_family(*c, x, basis or BlochBasis())
        out["adv_projective"] = r.adv_projective
        out["adv_weak"] = r.adv_weak if basis is not None else cf.belldiag_best_weak(*c, x)
    else:
        r = cf.werner_family(params["c"], x) if params["c"] >= 0 else None
        out["adv_projective"] = r.adv_projective if r else None
        out["adv_weak"] = r.adv_weak if r else None
    return out


def _family_params(args) -> dict:
    if args.family == "pure":
        return {"lambda0": args.lambda0 if args.lambda0 is not None else 0.5}
    if args.family == "belldiag":
        c = {k: getattr(args, k) for k in ("c1", "c2", "c3")}
        if any(v is None for v in c.values()):
            raise UsageError("belldiag needs --c1, --c2 and --c3")
        check_bell_params(*c.values())
        return c
    if args.c is None:
        raise UsageError("werner needs --c")
    return {"c": args.c}


def cmd_report(args) -> int:
    params = _family_params(args)
    rho = build_state(args.family, params)
    scheme = build_scheme(args.scheme, args.x, args.theta, args.phi, args.optimize)
    corr = discord(rho, scheme)
    rep = advantage(rho, pauli_ensemble(), scheme)
    sw = sandwich_check(rep)
    out = {
        "family": args.family,
        "params": params,
        "scheme": {"kind": scheme.kind, "x": scheme.x,
                   "basis": list(scheme.basis) if scheme.basis else "optimize"},
        "correlation": {
            "mutual_info": corr.mutual_info,
            "classical_corr": corr.classical_corr,
            "discord": corr.discord,
            "argmin_basis": list(corr.argmin_basis),
        },
        "advantage": {k: float(v) for k, v in rep._asdict().items()},
        "sandwich": {"passed": sw.passed, "lower_margin": sw.lower_margin,
                     "upper_margin": sw.upper_margin},
        "closed_form": closed_form(args.family, params, scheme),
    }
    print(json.dumps(out, indent=2))
    return EXIT_OK if sw.passed else EXIT_INVARIANT


def cmd_sweep(args) -> int:
    if args.axis not in FAMILY_AXES[args.family]:
        raise UsageError(f"axis {args.axis!r} is not a parameter of {args.family}")
    if args.steps < 2 or not args.start < args.stop:
        raise UsageError("sweep needs steps >= 2 and start < stop")
    header = [args.axis, "mutual_info", "classical_corr", "discord", "iq", "ic",
              "delta_i", "delta_discord", "j_tilde", "closed_adv"]
    rows = []
    for v in np.linspace(args.start, args.stop, args.steps):
        setattr(args, args.axis, float(v))
        params = _family_params(args)
        rho = build_state(args.family, params)
        scheme = build_scheme(args.scheme, args.x, args.theta, args.phi, args.optimize)
        corr = discord(rho, scheme)
        rep = advantage(rho, pauli_ensemble(), scheme)
        closed = closed_form(args.family, params, scheme)
        key = "adv_weak" if scheme.kind == "weak" else "adv_projective"
        cv = closed[key]
        rows.append([float(v), corr.mutual_info, corr.classical_corr, corr.discord,
                     rep.iq, rep.ic, rep.delta_i, rep.delta_discord, rep.j_tilde,
                     math.nan if cv is None else cv])
    if any(math.isnan(r[-1]) for r in rows):
        header = header[:-1]
        rows = [r[:-1] for r in rows]
    write_csv(args.out, header, rows)
    return EXIT_OK


def figure_rows(fig_id: str):
    """Header and rows for one figure, from the closed forms."""
    if fig_id == "fig1":
        header = ["x", "adv_weak_maxent", "adv_proj_maxent",
                  "adv_weak_lam0_sqrt2over2", "adv_proj_lam0_sqrt2over2"]
        lam = math.sqrt(2.0) / 2.0
        proj = cf.pure_family(lam).adv_projective
        rows = [[x, cf.maxent_adv_weak(x), 1.0,
                 cf.pure_family(lam, x, BlochBasis()).adv_weak, proj]
                for x in np.linspace(0.01, 5.0, 500)]
    elif fig_id == "fig2":
        header = ["x", "theta", "adv_weak", "adv_proj"]
        c = (0.15, 0.03, 0.7)
        proj = cf.belldiag_family(*c).adv_projective
        rows = [[x, th, cf.belldiag_family(*c, x, BlochBasis(th, 0.0)).adv_weak, proj]
                for x in np.linspace(0.0, 5.0, 101)
                for th in np.linspace(0.0, math.pi, 101)]
    elif fig_id == "fig3":
        header = ["c", "adv_weak", "adv_proj"]
        rows = [[c, *reversed(cf.werner_family(c, 0.7))] for c in np.linspace(0.0, 1.0, 101)]
    elif fig_id == "fig4":
        header = ["x", "adv_weak", "adv_proj"]
        rows = [[x, *reversed(cf.werner_family(0.4, x))] for x in np.linspace(0.0, 8.0, 161)]
    else:
        raise UsageError(f"unknown figure {fig_id!r}")
    rows = [[float(v) for v in r] for r in rows]
    return header, rows


def cmd_figure(args) -> int:
    header, rows = figure_rows(args.id)
    write_csv(args.out, header, rows)
    # every weak column sits immediately before its projective partner
    pairs = [(i, i + 1) for i, h in enumerate(header) if h.startswith("adv_weak")]
    bad = [r for r in rows if any(r[w] < r[p] - 1e-9 for w, p in pairs)]
    if bad:
        print(f"{len(bad)} rows with adv_weak < adv_proj, first: {bad[0]}", file=sys.stderr)
        return EXIT_INVARIANT
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from qadvantage.verify import run_all

    extra = [tuple(args.triple)] if args.triple else []
    results = run_all(n_triples=args.grid, extra_triples=extra)
    for r in results:
        print(r.line())
        for f in r.failures[:5]:
            print(f"      {f}")
    if args.out:
        Path(args.out).write_text(
            json.dumps([
                {"name": r.name, "max_dev": r.max_dev, "tol": r.tol, "passed": r.passed,
                 "seconds": r.seconds, "failures": [str(f) for f in r.failures]}
                for r in results
            ], indent=2) + "\n",
            encoding="utf-8",
        )
    ok = all(r.passed for r in results)
    print("verify:", "all checks passed" if ok else "FAILED")
    return EXIT_OK if ok else EXIT_INVARIANT


def _add_state_args(p) -> None:
    p.add_argument("--family", choices=sorted(FAMILY_AXES), required=True)
    p.add_argument("--lambda0", type=float)
    p.add_argument("--c1", type=float)
    p.add_argument("--c2", type=float)
    p.add_argument("--c3", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--scheme", choices=("projective", "weak"), default="projective")
    p.add_argument("--x", type=float, default=0.0)
    p.add_argument("--theta", type=float)
    p.add_argument("--phi", type=float)
    p.add_argument("--optimize", action="store_true",
                   help="optimize the measurement basis (default when --theta is absent)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qadvantage", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", help="correlations and advantage for one state")
    _add_state_args(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("sweep", help="sweep one parameter and write CSV")
    _add_state_args(p)
    p.add_argument("--axis", required=True)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("figure", help="write the data behind one figure as CSV")
    p.add_argument("--id", choices=("fig1", "fig2", "fig3", "fig4"), required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("verify", help="closed form vs numeric cross-checks")
    p.add_argument("--grid", type=int, default=50, help="number of Bell-diagonal triples")
    p.add_argument("--triple", type=float, nargs=3, metavar=("C1", "C2", "C3"),
                   help="extra Bell-diagonal triple to include")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DensityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
