"""Acceptance criteria 1-10 at their stated tolerances.

Every test carries a ``criterion`` marker; the terminal summary prints one
PASS/FAIL line per criterion.
"""

import io
import itertools
import json
import subprocess
import sys
import time

import numpy as np
import pytest

from oracles import symbolic_tangle_polynomial, tangle_by_discriminant, wootters_product_eigs
from threetangle.ckw import family_ckw_sweep
from threetangle.cli import main
from threetangle.family import (
    P0,
    P1,
    PC,
    concurrence_sum_family,
    g1,
    g2,
    min_one_tangle_family,
    optimal_decomposition,
    rho_p,
    roof_tau3_axis,
    tangle_z,
)
from threetangle.measures import concurrence_pure, monogamy_residual, tangle_form, three_tangle
from threetangle.rank2zero import has_vanishing_tangle, polynomial_roots, tangle_polynomial
from threetangle.roof import IsometryParams, RoofConfig, embed_two_qubit, ensemble_from_isometry, minimize_roof
from threetangle.ckw import wootters_concurrence
from threetangle.statefile import state_from_json, state_to_json
from threetangle.states import Rank2State, ghz, haar_ket, haar_unitary, mix, partial_trace, w


def crit(n, title):
    return pytest.mark.criterion(n, title)


@crit(1, "exact anchors")
def test_exact_anchors():
    assert abs(three_tangle(ghz()) - 1) <= 1e-12
    assert three_tangle(w()) <= 1e-12
    assert abs(concurrence_pure(np.array([1, 0, 0, 1]) / np.sqrt(2)) - 1) <= 1e-12


@crit(2, "closed-form constants")
def test_constants():
    cbrt2 = 2 ** (1 / 3)
    assert P0 == 4 * cbrt2 / (3 + 4 * cbrt2)
    assert tangle_z(P0, 0.0) <= 1e-12
    assert f"{P0:.6f}" == "0.626851"
    assert f"{P1:.5f}" == "0.70868"
    assert PC == 7 - np.sqrt(45)
    assert concurrence_sum_family(PC) <= 1e-12


@crit(3, "roof continuity and tangency")
def test_tangency():
    assert abs(g1(P0)) <= 1e-10
    assert abs(g1(P1) - g2(P1)) <= 1e-10
    assert g1(P1) == pytest.approx(0.21402, abs=1e-5)


@crit(4, "decomposition validity")
def test_decompositions():
    for p in np.linspace(0, 1, 100):
        e = optimal_decomposition(p)
        assert np.max(np.abs(mix(e) - rho_p(p))) <= 1e-10
        avg = sum(wt * three_tangle(s) for wt, s in e)
        assert abs(avg - roof_tau3_axis(p).value) <= 1e-10


ROOF_POINTS = [0.3, 0.55, P0, 0.66, 0.70, P1, 0.8, 0.9, 1.0]


@crit(5, "optimizer reproduces the roof")
@pytest.mark.parametrize("p", ROOF_POINTS, ids=[f"{p:.6g}" for p in ROOF_POINTS])
def test_optimizer_roof(p):
    cfg = RoofConfig()
    assert cfg.restarts == 64 and 4 in cfg.m_values
    t0 = time.perf_counter()
    r = minimize_roof(Rank2State(ghz(), w(), p), "tau3", cfg)
    elapsed = time.perf_counter() - t0
    assert abs(r.value - roof_tau3_axis(p).value) <= 1e-5
    assert elapsed <= 2.0, f"{elapsed:.2f} s"


@crit(6, "zero-decision oracle equivalence")
def test_zero_decision():
    for p in np.linspace(0, 1, 200):
        if abs(p - P0) <= 1e-9:
            continue
        assert has_vanishing_tangle(Rank2State(ghz(), w(), p)).vanishes == (p <= P0)
    assert has_vanishing_tangle(Rank2State(ghz(), w(), P0)).vanishes
    poly = tangle_polynomial(ghz(), w())
    expect, exact = symbolic_tangle_polynomial(ghz(), w())
    assert np.allclose(poly.coeffs, expect, atol=1e-15)
    assert exact[4] == 0 and exact[3] != 0
    assert poly.degree() == 3
    zs = polynomial_roots(poly)
    roots = [z for z, _ in zs.roots]
    assert len(roots) == 3 and zs.infinity_multiplicity == 1
    target = -3 * np.sqrt(6) / 16
    for z in roots:
        assert abs(z**3 - target) <= 1e-10
        assert poly.backward_error(z) <= 1e-10


@crit(7, "monogamy identity")
@pytest.mark.parametrize("which", ["A", "B", "C"])
def test_monogamy(which):
    rng = np.random.default_rng(7)
    worst = max(abs(monogamy_residual(haar_ket(rng), which)) for _ in range(1000))
    assert worst <= 1e-9


@crit(8, "CKW sweep")
def test_ckw_sweep():
    grid = np.linspace(0, 1, 201)
    for row in family_ckw_sweep(grid):
        assert row.one_tangle_min >= row.concurrence_sum >= 0
        assert row.one_tangle_min >= row.tau3_roof
        rho = rho_p(row.p)
        indep = sum(wootters_product_eigs(partial_trace(rho, k)) ** 2 for k in ([0, 1], [0, 2]))
        assert abs(indep - row.concurrence_sum) <= 1e-9
    assert abs(min_one_tangle_family(0.0) - 8 / 9) <= 1e-12
    assert abs(concurrence_sum_family(0.0) - 8 / 9) <= 1e-12


@crit(9, "two-qubit calibration")
def test_two_qubit_calibration():
    rng = np.random.default_rng(9)
    for _ in range(20):
        q, _ = np.linalg.qr(rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2)))
        st = Rank2State(embed_two_qubit(q[:, 0]), embed_two_qubit(q[:, 1]), rng.uniform())
        r = minimize_roof(st, "concurrence_AB")
        exact = wootters_concurrence(st.density()[0::2, 0::2])
        assert abs(r.value - exact) <= 1e-6


@crit(10, "property suites")
def test_invariance():
    rng = np.random.default_rng(10)
    for _ in range(200):
        psi = haar_ket(rng)
        t = three_tangle(psi)
        assert abs(t - tangle_by_discriminant(psi)) <= 1e-10
        perm = list(itertools.permutations(range(3)))[rng.integers(6)]
        permuted = np.transpose(psi.reshape(2, 2, 2), perm).reshape(8)
        assert abs(three_tangle(permuted) - t) <= 1e-10
        u = np.kron(np.kron(haar_unitary(rng), haar_unitary(rng)), haar_unitary(rng))
        assert abs(three_tangle(u @ psi) - t) <= 1e-10
        lam = rng.uniform(0.2, 3) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        assert abs(tangle_form(lam * psi) - abs(lam) ** 4 * t) <= 1e-12


@crit(10, "property suites")
def test_mixture_identity():
    rng = np.random.default_rng(11)
    for _ in range(200):
        q, _ = np.linalg.qr(rng.standard_normal((8, 2)) + 1j * rng.standard_normal((8, 2)))
        st = Rank2State(q[:, 0], q[:, 1], rng.uniform())
        m = int(rng.integers(2, 5))
        e = ensemble_from_isometry(st, IsometryParams(m, rng.uniform(0, 7, 3 * m - 4)))
        assert np.max(np.abs(mix(e) - st.density())) <= 1e-12


@crit(10, "property suites")
def test_cli_round_trip_and_determinism(tmp_path):
    rng = np.random.default_rng(12)
    for state in [ghz(), w(), haar_ket(rng), rho_p(0.4)]:
        doc = json.loads(json.dumps(state_to_json(state)))
        sf = state_from_json(doc)
        back = sf.ket if sf.is_ket else sf.density
        assert np.max(np.abs(back - state)) <= 1e-12
    out = io.StringIO()
    assert main(["state", "ghz"], out) == 0
    path = tmp_path / "ghz.json"
    path.write_text(out.getvalue())
    path_w = tmp_path / "w.json"
    out = io.StringIO()
    main(["state", "w"], out)
    path_w.write_text(out.getvalue())
    cmd = [sys.executable, "-m", "threetangle", "roofmin", str(path), str(path_w),
           "--p", "0.9", "--seed", "7"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b
