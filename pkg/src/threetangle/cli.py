"""Command-line front end.

Exit codes: 0 success (for ``zerotest``: the 3-tangle vanishes), 1 the
3-tangle does not vanish (``zerotest`` only), 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import family
from .ckw import family_ckw_sweep, family_parameter, wootters_concurrence
from .errors import TangleError
from .measures import monogamy_residual, one_tangle, three_tangle
from .rank2zero import has_vanishing_tangle, has_vanishing_tangle_in_span
from .roof import RoofConfig, minimize_roof
from .statefile import read_state_file, state_to_json
from .states import QUBITS, Rank2State, inner, partial_trace, qubit_index, spectral_rank2

EXIT_OK, EXIT_NO, EXIT_ERR = 0, 1, 2
DEFAULT_GAMMAS = (1 / 2, 1 / 3, 1 / 5, 1 / 10, 0.0)


class UsageError(TangleError):
    pass


def _fmt(x):
    return "%.12g" % x


def _cplx(z):
    return "%.12g%+.12gj" % (z.real, z.imag)


def _numeric_rank(rho, tol=1e-9):
    return int(np.sum(np.linalg.eigvalsh(rho) > tol))


def _pair_concurrences(rho, focus):
    out = {}
    for q in range(3):
        if q != focus:
            pair = sorted([focus, q])
            name = QUBITS[pair[0]] + QUBITS[pair[1]]
            out[name] = wootters_concurrence(partial_trace(rho, pair))
    return out


def cmd_measure(args, out):
    sf = read_state_file(args.input)
    focus = qubit_index(args.qubit)
    q = QUBITS[focus]
    if sf.label:
        print(f"label = {sf.label}", file=out)
    rho = sf.as_density()
    if sf.is_ket:
        psi = sf.ket
        print(f"tau3 = {three_tangle(psi):.12f}", file=out)
        print(f"one_tangle_{q} = {one_tangle(psi, q):.12f}", file=out)
        for name, c in _pair_concurrences(rho, focus).items():
            print(f"concurrence_{name} = {c:.12f}", file=out)
        print(f"monogamy_residual_{q} = {monogamy_residual(psi, q):.3e}", file=out)
        return EXIT_OK
    rank = _numeric_rank(rho)
    print(f"rank = {rank}", file=out)
    if rank == 1:
        psi = np.linalg.eigh(rho)[1][:, -1]
        print(f"tau3 = {three_tangle(psi):.12f}", file=out)
    p = family_parameter(rho)
    if p is not None:
        print(f"ghz_w_mixture_p = {p:.12f}", file=out)
        print(f"tau3 = {family.roof_tau3_axis(p).value:.12f}", file=out)
        print(f"one_tangle_{q}_roof = {family.min_one_tangle_family(p):.12f}", file=out)
    r = partial_trace(rho, [focus])
    upper = max(0.0, 4 * np.linalg.det(r).real)
    print(f"one_tangle_{q}_upper = {upper:.12f}", file=out)
    for name, c in _pair_concurrences(rho, focus).items():
        print(f"concurrence_{name} = {c:.12f}", file=out)
    if rank <= 2:
        dec = has_vanishing_tangle(spectral_rank2(rho))
        print(f"zero_tangle = {'yes' if dec.vanishes else 'no'}", file=out)
    return EXIT_OK


def _grid(n, critical):
    if n < 2:
        raise UsageError("--grid must be at least 2")
    pts = list(np.linspace(0.0, 1.0, n))
    pts += list(critical)
    return sorted(set(float(p) for p in pts))


def cmd_sweep(args, out):
    writer = csv.writer(out, lineterminator="\n")
    crit = [] if args.no_critical else [family.P0, family.P1]
    if args.what == "tangle_z":
        if args.phi_values:
            try:
                phis = [float(s) for s in args.phi_values.split(",")]
            except ValueError:
                raise UsageError(f"bad --phi-values {args.phi_values!r}") from None
        else:
            phis = [g * 2 * np.pi / 3 for g in DEFAULT_GAMMAS]
        grid = _grid(args.grid, crit[:1])
        writer.writerow(["p", "phi", "tau3"])
        for phi in phis:
            for p in grid:
                writer.writerow([_fmt(p), _fmt(phi), _fmt(family.tangle_z(p, phi))])
    elif args.what == "roof":
        grid = _grid(args.grid, crit)
        writer.writerow(["p", "roof", "g1_clamped", "trivial_bound"])
        for p in grid:
            g1c = family.g1(p) if p >= family.P0 else 0.0
            writer.writerow(
                [_fmt(p), _fmt(family.roof_tau3_axis(p).value), _fmt(g1c), _fmt(p)]
            )
    else:
        grid = _grid(args.grid, [] if args.no_critical else [family.PC, family.P0, family.P1])
        header = ["p", "one_tangle_min", "concurrence_sum", "tau3_roof"]
        cfg = RoofConfig(restarts=args.restarts, seed=_seed(args)) if args.numeric else None
        writer.writerow(header + (["one_tangle_numeric"] if args.numeric else []))
        for row in family_ckw_sweep(grid, cfg, numeric=args.numeric):
            cells = [row.p, row.one_tangle_min, row.concurrence_sum, row.tau3_roof]
            if args.numeric:
                cells.append(row.one_tangle_numeric)
            writer.writerow([_fmt(x) for x in cells])
    return EXIT_OK


def _rank2_input(args):
    """Rank2State from --family, one density file, or two ket files with --p."""
    if getattr(args, "family", None) is not None:
        return Rank2State(family.ghz(), family.w(), args.family)
    paths = args.inputs
    if len(paths) == 1:
        if args.p is not None:
            raise UsageError("--p only applies to a pair of ket files")
        sf = read_state_file(paths[0])
        return spectral_rank2(sf.as_density())
    if len(paths) == 2:
        if args.p is None:
            raise UsageError("--p is required with two ket files")
        a, b = (read_state_file(pth) for pth in paths)
        if not (a.is_ket and b.is_ket):
            raise UsageError("two inputs must both be ket files")
        ov = abs(inner(a.ket, b.ket))
        if ov > 1e-8:
            raise UsageError(f"kets are not orthogonal: |<1|2>| = {ov:.3g}")
        b_ket = b.ket - inner(a.ket, b.ket) * a.ket
        return Rank2State(a.ket, b_ket, args.p)
    raise UsageError("give one rank-2 density file or two ket files")


def cmd_zerotest(args, out):
    st = _rank2_input(args)
    sigma = np.diag([st.p, 1 - st.p])
    dec = has_vanishing_tangle_in_span(st.ket1, st.ket2, sigma)
    print(f"p = {st.p:.12f}", file=out)
    if dec.all_zero:
        print("polynomial = 0 (3-tangle vanishes on the whole span)", file=out)
    else:
        simplex = dec.simplex
        coeffs = simplex.polynomial.coeffs
        print("polynomial = " + " ".join(_cplx(c) for c in coeffs), file=out)
        for z, mult in simplex.zeros.roots:
            print(f"root = {_cplx(z)} multiplicity {mult}", file=out)
        if simplex.zeros.infinity_multiplicity:
            print(f"root = inf multiplicity {simplex.zeros.infinity_multiplicity}", file=out)
        for v in simplex.vertices:
            print(f"vertex = p_axis {v.p_axis:.12f} azimuth {v.azimuth:.12f}", file=out)
        print(f"simplex_dimension = {simplex.dimension}", file=out)
        if simplex.zeros.repeated:
            print("note = repeated roots merged", file=out)
    print(f"vanishes = {'yes' if dec.vanishes else 'no'}", file=out)
    if dec.vanishes:
        if dec.boundary:
            print("boundary = yes", file=out)
        print("witness_weights = " + " ".join(_fmt(x) for x in dec.witness.weights), file=out)
        return EXIT_OK
    return EXIT_NO


def _seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("TANGLE_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"TANGLE_SEED must be an integer, got {env!r}") from None


def cmd_roofmin(args, out):
    st = _rank2_input(args)
    try:
        m_values = tuple(int(s) for s in args.m.split(","))
    except ValueError:
        raise UsageError(f"bad --m {args.m!r}") from None
    objective = "tau3" if args.objective == "tau3" else f"one_tangle_{QUBITS[qubit_index(args.qubit)]}"
    cfg = RoofConfig(m_values=m_values, restarts=args.restarts, seed=_seed(args))
    res = minimize_roof(st, objective, cfg)
    print(f"objective = {objective}", file=out)
    print(f"value = {res.value:.12f}", file=out)
    print(f"m = {res.m}", file=out)
    print(f"restarts = {res.restarts_used}", file=out)
    print(f"converged = {'yes' if res.converged else 'no'}", file=out)
    for m, v in res.best_by_m.items():
        print(f"best_m{m} = {v:.12f}", file=out)
    for wt, s in res.ensemble:
        amps = " ".join(_cplx(a) for a in s)
        print(f"item = {wt:.12f} | {amps}", file=out)
    p = family_parameter(st.density())
    if p is not None:
        ref = family.roof_tau3_axis(p).value if objective == "tau3" else None
        if objective == "one_tangle_A":
            ref = family.min_one_tangle_family(p)
        if ref is not None:
            print(f"closed_form = {ref:.12f}", file=out)
            if res.value < ref - 1e-8:
                print("warning = optimizer beat the closed form", file=sys.stderr)
    return EXIT_OK


def cmd_state(args, out):
    """Write a reference state as a JSON state file."""
    if args.kind == "ghz":
        doc = state_to_json(family.ghz(), "GHZ")
    elif args.kind == "w":
        doc = state_to_json(family.w(), "W")
    elif args.kind == "z":
        doc = state_to_json(family.z_state(args.p, args.phi), f"Z({args.p},{args.phi})")
    else:
        doc = state_to_json(family.rho_p(args.p), f"rho({args.p})")
    json.dump(doc, out)
    out.write("\n")
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="threetangle", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    m = sub.add_parser("measure", help="3-tangle, 1-tangle and concurrences of a state file")
    m.add_argument("input")
    m.add_argument("--qubit", default="A", choices=list("ABC"))
    m.set_defaults(func=cmd_measure)

    s = sub.add_parser("sweep", help="CSV tables of the GHZ/W family curves")
    s.add_argument("--what", choices=["tangle_z", "roof", "ckw"], default="roof")
    s.add_argument("--grid", type=int, default=101)
    s.add_argument("--phi-values", help="comma-separated phases in radians (tangle_z)")
    s.add_argument("--no-critical", action="store_true", help="omit the rows at p0, p1, pC")
    s.add_argument("--numeric", action="store_true",
                   help="ckw: add the numerically minimized 1-tangle column")
    s.add_argument("--restarts", type=int, default=16, help="restarts for --numeric")
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_sweep)

    z = sub.add_parser("zerotest", help="decide whether a rank-2 state has zero 3-tangle")
    z.add_argument("inputs", nargs="+", help="one density file, or two ket files with --p")
    z.add_argument("--p", type=float)
    z.set_defaults(func=cmd_zerotest)

    r = sub.add_parser("roofmin", help="numerical convex roof of a rank-2 state")
    r.add_argument("inputs", nargs="*")
    r.add_argument("--p", type=float)
    r.add_argument("--family", type=float, metavar="P", help="use the GHZ/W mixture rho(P)")
    r.add_argument("--objective", choices=["tau3", "one-tangle"], default="tau3")
    r.add_argument("--qubit", default="A", choices=list("ABC"))
    r.add_argument("--m", default="2,3,4")
    r.add_argument("--restarts", type=int, default=64)
    r.add_argument("--seed", type=int)
    r.set_defaults(func=cmd_roofmin)

    st = sub.add_parser("state", help="print a reference state file")
    st.add_argument("kind", choices=["ghz", "w", "z", "rho"])
    st.add_argument("--p", type=float, default=0.5)
    st.add_argument("--phi", type=float, default=0.0)
    st.set_defaults(func=cmd_state)
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERR
    try:
        return args.func(args, out)
    except TangleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERR


if __name__ == "__main__":
    sys.exit(main())
