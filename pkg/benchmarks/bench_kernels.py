"""Compare the compiled and pure-Python roof-search kernels.

Usage::

    python3 benchmarks/bench_kernels.py [--evals N] [--runs K]

Reports the time per objective evaluation, per Nelder-Mead local search and
per full ``minimize_roof`` call for each backend, plus the speedup.
"""

import argparse
import time

import numpy as np

import threetangle.roof as roof
from threetangle import _fallback
from threetangle.family import roof_tau3_axis
from threetangle.roof import RoofConfig, _kernel_spec, minimize_roof
from threetangle.states import Rank2State, ghz, w

try:
    from threetangle import _kernels
except ImportError:
    _kernels = None


def bench_objective(kern, spec, sp, sq, xs, m):
    kind, deg, scale, coeffs, amats = spec
    t0 = time.perf_counter()
    for x in xs:
        kern.objective(x, m, kind, deg, scale, coeffs, amats, sp, sq)
    return (time.perf_counter() - t0) / len(xs)


def bench_nelder_mead(kern, spec, sp, sq, starts, m):
    kind, deg, scale, coeffs, amats = spec
    t0 = time.perf_counter()
    evals = 0
    for x0 in starts:
        _, _, nev, _, _ = kern.nelder_mead(x0, 0.5, m, kind, deg, scale, coeffs, amats, sp, sq,
                                           1e-9, 1e-10, 20000)
        evals += nev
    return (time.perf_counter() - t0) / len(starts), evals / len(starts)


def bench_roof(kern, state, restarts):
    saved = roof.kernels
    roof.kernels = kern
    try:
        t0 = time.perf_counter()
        res = minimize_roof(state, "tau3", RoofConfig(restarts=restarts))
        return time.perf_counter() - t0, res.value
    finally:
        roof.kernels = saved


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--evals", type=int, default=20000)
    ap.add_argument("--runs", type=int, default=20)
    ap.add_argument("--restarts", type=int, default=8)
    ap.add_argument("--p", type=float, default=0.9)
    args = ap.parse_args()

    backends = [("python", _fallback)]
    if _kernels is not None:
        backends.insert(0, ("cython", _kernels))
    else:
        print("compiled extension not built; timing the fallback only")

    state = Rank2State(ghz(), w(), args.p)
    spec = _kernel_spec(state, "tau3")
    sp, sq = float(np.sqrt(args.p)), float(np.sqrt(1 - args.p))
    rng = np.random.default_rng(0)
    m = 4
    xs = rng.uniform(0, 2 * np.pi, (args.evals, 3 * m - 4))
    starts = rng.uniform(0, 2 * np.pi, (args.runs, 3 * m - 4))

    rows = {}
    for name, kern in backends:
        n_eval = max(args.evals // (1 if name == "cython" else 10), 1)
        t_obj = bench_objective(kern, spec, sp, sq, xs[:n_eval], m)
        n_nm = max(args.runs // (1 if name == "cython" else 5), 1)
        t_nm, nev = bench_nelder_mead(kern, spec, sp, sq, starts[:n_nm], m)
        t_roof, val = bench_roof(kern, state, args.restarts)
        rows[name] = (t_obj, t_nm, nev, t_roof, val)

    ref = roof_tau3_axis(args.p).value
    print(f"rho(p={args.p}), tau3 objective, m={m}; analytic roof {ref:.10f}")
    print(f"{'backend':8s} {'objective':>12s} {'local search':>14s} {'evals/search':>13s} "
          f"{'roof (' + str(args.restarts) + ' restarts)':>22s} {'value':>14s}")
    for name, (t_obj, t_nm, nev, t_roof, val) in rows.items():
        print(f"{name:8s} {t_obj * 1e6:10.2f}us {t_nm * 1e3:12.2f}ms {nev:13.0f} "
              f"{t_roof:20.3f}s {val:14.10f}")
    if len(rows) == 2:
        c, p = rows["cython"], rows["python"]
        print(f"speedup  {p[0] / c[0]:10.1f}x {p[1] / c[1]:12.1f}x {'':13s} {p[3] / c[3]:20.1f}x")


if __name__ == "__main__":
    main()
