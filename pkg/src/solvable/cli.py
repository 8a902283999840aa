"""Command-line surface.

Subcommands: families, poly, specfun, potential, eigenfunction,
generate, solve-params, verify (residual | spectrum | orthogonality),
reproduce-dw, acceptance.  Tabular output is CSV with a header row,
structured output is JSON; all numbers are rendered with %.12g.  Exit
status: 0 success, 1 domain error (the violated constraint is named),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .errors import Inadmissible, NoAdmissibleRoot, SolvableError
from .expr import evaluate, power_terms, print_expr
from .families import ALL_CASES, FamilySpec, SigmaCase, cutoff, eigenvalue
from .generator import (
    reproduce_dw, solve_params_inverse_sqrt, solve_params_quantsys,
)
from .oracle import (
    eigenvalues_below, fd_hamiltonian, fd_hamiltonian_indicial,
    residual_grid,
)
from .polynomials import phi
from .schrodinger import potential, schrodinger_residual, wavefunction
from .specfun import scalar_product, special_function
from . import acceptance as acceptance_mod

_CASE_NAMES = {
    "one": SigmaCase.ONE,
    "1": SigmaCase.ONE,
    "s": SigmaCase.S,
    "1-s^2": SigmaCase.ONE_MINUS_S2,
    "s^2-1": SigmaCase.S2_MINUS_1,
    "s^2": SigmaCase.S2,
    "s^2+1": SigmaCase.S2_PLUS_1,
}


def g12(v) -> str:
    v = float(v)
    if v == 0.0:
        v = 0.0  # normalize negative zero
    return f"{v:.12g}"


def _jsonable(v):
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return float(g12(v))
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    return v


def _interval_json(interval):
    out = []
    for v in interval:
        if math.isinf(v):
            out.append("inf" if v > 0 else "-inf")
        elif v == int(v):
            out.append(int(v))
        else:
            out.append(v)
    return out


def emit_json(obj, out):
    out.write(json.dumps(_jsonable(obj), ensure_ascii=False, indent=2))
    out.write("\n")


def emit_csv(header, rows, out):
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(g12(v) if isinstance(v, (int, float)) else str(v)
                           for v in row) + "\n")


def _family_from(args) -> FamilySpec:
    case = _CASE_NAMES[args.case]
    return FamilySpec(case, args.alpha, args.beta)


def _default_seed() -> int:
    return int(os.environ.get("SOLVABLE_SEED", "42"))


def _add_family_flags(p, beta_default=None):
    p.add_argument("--case", "--family", dest="case",
                   choices=sorted(_CASE_NAMES), required=True,
                   help="sigma case (one, s, 1-s^2, s^2-1, s^2, s^2+1)")
    p.add_argument("--alpha", type=float, required=True)
    if beta_default is None:
        p.add_argument("--beta", type=float, required=True)
    else:
        p.add_argument("--beta", type=float, default=beta_default)


def cmd_families(args, out):
    entries = []
    for case in ALL_CASES:
        entry = {"case": case.value, "constraint": case.constraint}
        if args.alpha is not None and args.beta is not None:
            entry["alpha"] = args.alpha
            entry["beta"] = args.beta
            try:
                fam = FamilySpec(case, args.alpha, args.beta)
            except SolvableError:
                entry["admissible"] = False
            else:
                entry["admissible"] = True
                entry["interval"] = _interval_json(fam.interval)
                cap = cutoff(fam)
                entry["Lambda"] = cap.lambda_cap
                entry["L"] = cap.max_degree
        else:
            entry["interval"] = _interval_json(case.interval)
            entry["Lambda"] = ("inf" if not case.finite_system
                               else "(1-alpha)/2")
        entries.append(entry)
    emit_json(entries, out)
    return 0


def cmd_poly(args, out):
    fam = _family_from(args)
    rows = []
    for ell in range(args.ell + 1):
        p = phi(fam, ell)
        for j, c in enumerate(p.coeffs):
            rows.append((ell, j, c))
    emit_csv(("ell", "j", "c_j"), rows, out)
    return 0


def cmd_specfun(args, out):
    fam = _family_from(args)
    sf = special_function(fam, args.ell, args.m)
    lo = args.smin if args.smin is not None else None
    hi = args.smax if args.smax is not None else None
    if lo is None or hi is None:
        from .families import sample_window

        wlo, whi = sample_window(fam)
        lo = wlo if lo is None else lo
        hi = whi if hi is None else hi
    grid = np.linspace(lo, hi, args.grid)
    emit_csv(("s", "value"), [(s, sf(s)) for s in grid], out)
    return 0


def _x_window(args, system):
    lo = args.xmin
    hi = args.xmax
    if lo is None or hi is None:
        g = residual_grid(system.interval, 2)
        lo = g[0] if lo is None else lo
        hi = g[-1] if hi is None else hi
    return lo, hi


def cmd_potential(args, out):
    fam = _family_from(args)
    system = potential(fam, args.m)
    lo, hi = _x_window(args, system)
    grid = np.linspace(lo, hi, args.grid)
    vals = evaluate(system.potential, grid)
    emit_csv(("x", "V(x)"), zip(grid, np.broadcast_to(vals, grid.shape)),
             out)
    return 0


def cmd_eigenfunction(args, out):
    fam = _family_from(args)
    psi = wavefunction(fam, args.ell, args.m)
    system = potential(fam, args.m)
    lo, hi = _x_window(args, system)
    grid = np.linspace(lo, hi, args.grid)
    emit_csv(("x", "psi(x)"), zip(grid, evaluate(psi, grid)), out)
    return 0


def cmd_generate(args, out):
    if args.which == "cuberoot":
        try:
            pair = solve_params_quantsys(args.c1, args.c2, args.n,
                                         args.branch)
        except Inadmissible as exc:
            emit_json({"admissible": False, "reason": str(exc)}, out)
            return 0
        emit_json({"energy": pair.energy,
                   "psi_expr": print_expr(pair.psi, "r"),
                   "admissible": True,
                   "alpha": pair.alpha, "beta": pair.beta}, out)
        return 0
    try:
        pairs = solve_params_inverse_sqrt(args.c1, args.c2, args.n)
    except NoAdmissibleRoot as exc:
        emit_json({"admissible": False, "reason": str(exc)}, out)
        return 0
    matching = [p for p in pairs if p.branch == args.branch]
    if not matching:
        emit_json({"admissible": False,
                   "reason": f"no root on branch {args.branch}"}, out)
        return 0
    pair = min(matching, key=lambda p: p.energy)
    emit_json({"energy": pair.energy,
               "psi_expr": print_expr(pair.psi, "r"),
               "admissible": True,
               "alpha": pair.alpha, "beta": pair.beta,
               "degenerate": pair.degenerate}, out)
    return 0


def cmd_solve_params(args, out):
    entries = []
    if args.mode == "quantsys":
        for branch in ("+", "-"):
            try:
                p = solve_params_quantsys(args.c1, args.c2, args.n, branch)
                entries.append({"branch": branch, "alpha": p.alpha,
                                "beta": p.beta, "energy": p.energy,
                                "admissible": True})
            except Inadmissible as exc:
                entries.append({"branch": branch, "admissible": False,
                                "reason": str(exc)})
    else:
        try:
            for p in solve_params_inverse_sqrt(args.c1, args.c2, args.n):
                entries.append({"alpha": p.alpha, "beta": p.beta,
                                "energy": p.energy, "branch": p.branch,
                                "degenerate": p.degenerate,
                                "admissible": True})
        except NoAdmissibleRoot as exc:
            entries.append({"admissible": False, "reason": str(exc)})
    emit_json(entries, out)
    return 0


def _generated_pair(args):
    if args.system == "cuberoot":
        return solve_params_quantsys(args.c1, args.c2, args.n, args.branch)
    pairs = solve_params_inverse_sqrt(args.c1, args.c2, args.n)
    matching = [p for p in pairs if p.branch == args.branch] or pairs
    return min(matching, key=lambda p: p.energy)


def cmd_verify_residual(args, out):
    if args.system == "family":
        fam = _family_from(args)
        system = potential(fam, args.m, attach_ells=(args.ell,))
        grid = residual_grid(system.interval, args.grid)
        rows = [(x, schrodinger_residual(system, 0, float(x)))
                for x in grid]
    else:
        pair = _generated_pair(args)
        from .expr import differentiate, simplify

        psi2 = differentiate(simplify(differentiate(pair.psi)))
        grid = residual_grid(pair.interval, args.grid)
        v = pair.potential
        rows = [(x, float(-evaluate(psi2, x) + evaluate(v, x)
                          * evaluate(pair.psi, x)
                          - pair.energy * evaluate(pair.psi, x)))
                for x in grid]
    emit_csv(("x", "residual"), rows, out)
    return 0


def cmd_verify_spectrum(args, out):
    if args.system == "family":
        fam = _family_from(args)
        system = potential(fam, args.m)
        lo = args.xmin if args.xmin is not None else -10.0
        hi = args.xmax if args.xmax is not None else 10.0
        ham = fd_hamiltonian(system.potential, lo, hi, args.grid)
        cap = cutoff(fam)
        analytic = []
        ell = 0
        while ell < cap.lambda_cap and len(analytic) < 16:
            analytic.append(eigenvalue(fam, ell))
            ell += 1
        e_max = args.emax if args.emax is not None else (
            analytic[min(5, len(analytic) - 1)] + 0.5)
        numeric = eigenvalues_below(ham, e_max)
    else:
        from .generator import boundary_ratio, cuberoot_potential
        from .expr import VAR, mul, pow_, simplify

        lo = args.xmin if args.xmin is not None else 1e-3
        hi = args.xmax if args.xmax is not None else 40.0
        h = (hi - lo) / args.grid
        pair0 = solve_params_quantsys(args.c1, args.c2, 0, "+")
        regular = simplify(cuberoot_potential(args.c1, args.c2)
                           - mul(-5.0 / 36.0, pow_(VAR, -2)))
        ham = fd_hamiltonian_indicial(
            regular, 1.0 / 6.0, lo, hi, args.grid,
            left_ratio=boundary_ratio(pair0, lo, lo + h))
        analytic = []
        n = 0
        while n < 16:
            try:
                analytic.append(
                    solve_params_quantsys(args.c1, args.c2, n, "+").energy)
            except Inadmissible:
                pass
            n += 1
        e_max = args.emax if args.emax is not None else analytic[3]
        numeric = eigenvalues_below(ham, e_max)
    rows = []
    for i, e in enumerate(numeric):
        nearest = min(analytic, key=lambda a: abs(a - e)) if analytic \
            else float("nan")
        rows.append((i, e, nearest, abs(e - nearest)))
    emit_csv(("index", "E_numeric", "E_analytic", "abs_err"), rows, out)
    return 0


def cmd_verify_orthogonality(args, out):
    fam = _family_from(args)
    cap = cutoff(fam)
    top = min(args.lmax, (cap.max_degree
                          if cap.max_degree is not None else args.lmax))
    m = args.m
    fns = {ell: special_function(fam, ell, m)
           for ell in range(m, top + 1)}
    norms = {ell: math.sqrt(scalar_product(fam, f, f))
             for ell, f in fns.items()}
    from .oracle import integrate
    from .schrodinger import variable_map

    vmap = variable_map(fam)
    rows = []
    for ell in sorted(fns):
        for k in sorted(fns):
            if k <= ell:
                continue
            scale = norms[ell] * norms[k]
            inner_s = scalar_product(
                fam, lambda s: fns[ell](s) / scale, fns[k])
            pe = wavefunction(fam, ell, m)
            pk = wavefunction(fam, k, m)
            inner_x = integrate(
                lambda x: evaluate(pe, x) * evaluate(pk, x) / scale,
                vmap.image, 1e-9).value
            rows.append((ell, k, inner_s, inner_x, abs(inner_s - inner_x)))
    emit_csv(("ell", "k", "inner_s", "inner_x", "route_gap"), rows, out)
    return 0


def cmd_reproduce_dw(args, out):
    from .expr import parse

    i_map = parse(args.ik) if args.ik else None
    x_of_r = parse(args.sub) if args.sub else None
    g = reproduce_dw(args.theta, args.rho, args.lam, args.which,
                     i_map=i_map, x_of_r=x_of_r)
    terms = power_terms(g.potential) or {}
    emit_json({
        "which": args.which,
        "potential_terms": {str(q): c for q, c in sorted(terms.items())
                            if c != 0.0},
        "potential_expr": print_expr(g.potential, "r"),
        "energy": g.energy,
        "gauge_expr": print_expr(g.gauge, "r"),
    }, out)
    return 0


def cmd_acceptance(args, out):
    only = set(int(t) for t in args.only.split(",")) if args.only else None
    results = acceptance_mod.run_all(seed=args.seed, only=only)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        out.write(f"{status} criterion {r.index:>2} ({r.name}): "
                  f"{r.detail} [{r.seconds:.2f}s]\n")
        failed += 0 if r.passed else 1
    out.write(f"{len(results) - failed}/{len(results)} criteria passed\n")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="solvable",
        description="Exactly solvable Schrodinger-type systems: the six "
                    "hypergeometric-type weight families, their orthogonal "
                    "polynomials and potentials, and a generator of new "
                    "solvable systems with an independent numerical oracle.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("families", help="list the six families as JSON")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.set_defaults(fn=cmd_families)

    p = sub.add_parser("poly", help="polynomial coefficient table (CSV)")
    _add_family_flags(p)
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(fn=cmd_poly)

    p = sub.add_parser("specfun",
                       help="evaluate an associated special function (CSV)")
    sub2 = p.add_subparsers(dest="subcommand", required=True)
    pe = sub2.add_parser("eval")
    _add_family_flags(pe)
    pe.add_argument("--ell", type=int, required=True)
    pe.add_argument("--m", type=int, required=True)
    pe.add_argument("--grid", type=int, default=101)
    pe.add_argument("--smin", type=float, default=None)
    pe.add_argument("--smax", type=float, default=None)
    pe.set_defaults(fn=cmd_specfun)

    p = sub.add_parser("potential", help="V_m on a grid (CSV)")
    _add_family_flags(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--grid", type=int, default=201)
    p.add_argument("--xmin", type=float, default=None)
    p.add_argument("--xmax", type=float, default=None)
    p.set_defaults(fn=cmd_potential)

    p = sub.add_parser("eigenfunction", help="Psi_{ell,m} on a grid (CSV)")
    _add_family_flags(p)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--grid", type=int, default=201)
    p.add_argument("--xmin", type=float, default=None)
    p.add_argument("--xmax", type=float, default=None)
    p.set_defaults(fn=cmd_eigenfunction)

    p = sub.add_parser("generate",
                       help="closed-form eigenpair of a generated system")
    p.add_argument("--c1", type=float, required=True)
    p.add_argument("--c2", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--branch", choices=("+", "-"), default="+")
    p.add_argument("--which", choices=("cuberoot", "sqrt"),
                   default="cuberoot")
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("solve-params",
                       help="all parameter roots with admissibility flags")
    p.add_argument("--mode", choices=("quantsys", "invsqrt"), required=True)
    p.add_argument("--c1", type=float, required=True)
    p.add_argument("--c2", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_solve_params)

    p = sub.add_parser("verify", help="numerical verification reports")
    sub2 = p.add_subparsers(dest="subcommand", required=True)

    pr = sub2.add_parser("residual")
    pr.add_argument("--system", choices=("family", "cuberoot", "sqrt"),
                    default="family")
    pr.add_argument("--case", "--family", dest="case",
                    choices=sorted(_CASE_NAMES))
    pr.add_argument("--alpha", type=float)
    pr.add_argument("--beta", type=float)
    pr.add_argument("--ell", type=int, default=0)
    pr.add_argument("--m", type=int, default=0)
    pr.add_argument("--c1", type=float, default=1.0)
    pr.add_argument("--c2", type=float, default=0.0)
    pr.add_argument("--n", type=int, default=0)
    pr.add_argument("--branch", choices=("+", "-"), default="+")
    pr.add_argument("--grid", type=int, default=200)
    pr.set_defaults(fn=cmd_verify_residual)

    ps = sub2.add_parser("spectrum")
    ps.add_argument("--system", choices=("family", "cuberoot"),
                    default="family")
    ps.add_argument("--case", "--family", dest="case",
                    choices=sorted(_CASE_NAMES))
    ps.add_argument("--alpha", type=float)
    ps.add_argument("--beta", type=float)
    ps.add_argument("--m", type=int, default=0)
    ps.add_argument("--c1", type=float, default=1.0)
    ps.add_argument("--c2", type=float, default=0.0)
    ps.add_argument("--grid", type=int, default=4000)
    ps.add_argument("--emax", type=float, default=None)
    ps.add_argument("--xmin", type=float, default=None)
    ps.add_argument("--xmax", type=float, default=None)
    ps.set_defaults(fn=cmd_verify_spectrum)

    po = sub2.add_parser("orthogonality")
    po.add_argument("--case", "--family", dest="case",
                    choices=sorted(_CASE_NAMES), required=True)
    po.add_argument("--alpha", type=float, required=True)
    po.add_argument("--beta", type=float, required=True)
    po.add_argument("--m", type=int, default=0)
    po.add_argument("--lmax", type=int, default=4)
    po.set_defaults(fn=cmd_verify_orthogonality)

    p = sub.add_parser("reproduce-dw",
                       help="transform the translated harmonic oscillator")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--which", type=int, choices=(1, 2), required=True)
    p.add_argument("--Ik", dest="ik", type=str, default=None,
                   help="override the map-defining term, e.g. 'x^2'")
    p.add_argument("--sub", dest="sub", type=str, default=None,
                   help="supply x(r) directly, e.g. 'sqrt(2*r)'")
    p.set_defaults(fn=cmd_reproduce_dw)

    p = sub.add_parser("acceptance", help="run every acceptance criterion")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--only", type=str, default=None,
                   help="comma-separated criterion indices")
    p.set_defaults(fn=cmd_acceptance)

    return ap


def run(argv, out=None) -> int:
    out = out if out is not None else sys.stdout
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "case", "sentinel") is None:
        needs_family = args.command == "verify" and args.system == "family"
        if needs_family:
            ap.error("--case/--family, --alpha, --beta are required "
                     "for --system family")
    try:
        return args.fn(args, out)
    except SolvableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
