import warnings

import numpy as np
import pytest

from threetangle import errors
from threetangle.ckw import wootters_concurrence
from threetangle.family import P0, g1, g2, min_one_tangle_family, optimal_decomposition, roof_tau3_axis
from threetangle.measures import three_tangle
from threetangle.roof import (
    IsometryParams,
    RoofConfig,
    average_objective,
    embed_two_qubit,
    ensemble_from_isometry,
    minimize_roof,
)
from threetangle.states import Rank2State, ghz, mix, w

FAST = RoofConfig(restarts=16)


def family(p):
    return Rank2State(ghz(), w(), p)


def random_two_qubit_rank2(rng):
    q, _ = np.linalg.qr(rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2)))
    return Rank2State(embed_two_qubit(q[:, 0]), embed_two_qubit(q[:, 1]), rng.uniform())


class TestIsometry:
    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_orthonormal_columns(self, rng, m):
        for _ in range(50):
            v = IsometryParams(m, rng.uniform(-7, 7, 3 * m - 4)).matrix()
            assert v.shape == (m, 2)
            assert np.max(np.abs(v.conj().T @ v - np.eye(2))) <= 1e-10

    def test_wrong_length(self):
        with pytest.raises(errors.TangleError):
            IsometryParams(3, np.zeros(4))

    def test_identity_gives_eigen_ensemble(self):
        e = ensemble_from_isometry(family(0.4), np.eye(2))
        assert np.allclose(e.weights, [0.4, 0.6])
        assert np.allclose(e.states, [ghz(), w()])

    def test_phase_column_gives_s(self):
        p = 0.68
        col = -np.exp(2j * np.pi * np.arange(3) / 3)
        v = np.stack([np.ones(3), col], axis=1) / np.sqrt(3)
        e = ensemble_from_isometry(family(p), v)
        assert np.allclose(e.weights, 1 / 3)
        assert average_objective(e, "tau3") == pytest.approx(g1(p), abs=1e-12)

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_mixture_identity(self, rng, m):
        st = family(rng.uniform())
        for _ in range(50):
            e = ensemble_from_isometry(st, IsometryParams(m, rng.uniform(0, 7, 3 * m - 4)))
            assert np.max(np.abs(mix(e) - st.density())) <= 1e-12


class TestAverageObjective:
    def test_eigen_ensemble(self):
        assert average_objective(family(0.3).as_ensemble(), "tau3") == pytest.approx(0.3, abs=1e-14)

    def test_p0_ensemble(self):
        assert average_objective(optimal_decomposition(P0), "tau3") <= 1e-12

    def test_unknown_objective(self):
        with pytest.raises(errors.TangleError):
            average_objective(family(0.3).as_ensemble(), "negativity")


class TestMinimizeRoof:
    def test_p0(self):
        r = minimize_roof(family(P0), "tau3", FAST)
        assert r.value <= 1e-6

    def test_leaf(self):
        r = minimize_roof(family(0.68), "tau3")
        assert r.value == pytest.approx(g1(0.68), abs=1e-5)

    def test_needs_four_vectors(self):
        r = minimize_roof(family(0.9), "tau3")
        assert r.value == pytest.approx(g2(0.9), abs=1e-5)
        assert r.m == 4
        assert r.best_by_m[3] > g2(0.9) + 1e-4

    @pytest.mark.parametrize("p", [0.2, 0.6, 1.0])
    def test_one_tangle(self, p):
        r = minimize_roof(family(p), "one_tangle", FAST)
        assert r.value == pytest.approx(min_one_tangle_family(p), abs=1e-5)

    def test_result_invariants(self):
        st = family(0.75)
        r = minimize_roof(st, "tau3", FAST)
        assert np.max(np.abs(mix(r.ensemble) - st.density())) <= 1e-8
        assert r.value == pytest.approx(average_objective(r.ensemble, "tau3"), abs=1e-10)
        assert r.value == pytest.approx(r.kernel_value, abs=1e-10)
        assert r.restarts_used == 3 * FAST.restarts
        assert np.all(r.ensemble.weights >= 1e-12)

    @pytest.mark.parametrize("p", [0.65, 0.8])
    def test_monotone_in_m(self, p):
        b = minimize_roof(family(p), "tau3", FAST).best_by_m
        assert b[4] <= b[3] + 1e-8 and b[3] <= b[2] + 1e-8

    @pytest.mark.parametrize("p", [0.66, 0.72, 0.85])
    def test_upper_bound_soundness(self, p):
        r = minimize_roof(family(p), "tau3", FAST)
        assert r.value >= roof_tau3_axis(p).value - 1e-8
        trial = average_objective(optimal_decomposition(p), "tau3")
        assert r.value <= trial + 1e-8

    def test_reproducible(self):
        a = minimize_roof(family(0.8), "tau3", RoofConfig(restarts=4, seed=3))
        b = minimize_roof(family(0.8), "tau3", RoofConfig(restarts=4, seed=3))
        assert a.value == b.value
        for ra, rb in zip(a.runs, b.runs):
            assert ra.value == rb.value and np.array_equal(ra.x, rb.x)

    def test_parallel_matches_serial(self):
        cfg = RoofConfig(restarts=6, seed=11)
        a = minimize_roof(family(0.8), "tau3", cfg)
        b = minimize_roof(family(0.8), "tau3", RoofConfig(restarts=6, seed=11, workers=4))
        assert a.value == b.value
        assert [r.value for r in a.runs] == [r.value for r in b.runs]

    def test_budget_exceeded_is_nonfatal(self):
        cfg = RoofConfig(restarts=2, max_iters=3, polish_rounds=0)
        with pytest.warns(errors.BudgetExceeded):
            r = minimize_roof(family(0.8), "tau3", cfg)
        assert not r.converged
        assert np.isfinite(r.value)

    @pytest.mark.parametrize("kw", [{"m_values": (5,)}, {"m_values": ()}, {"restarts": 0}])
    def test_bad_config(self, kw):
        with pytest.raises(errors.TangleError):
            RoofConfig(**kw)

    def test_two_qubit_calibration(self, rng):
        for _ in range(5):
            st = random_two_qubit_rank2(rng)
            with warnings.catch_warnings():
                warnings.simplefilter("error", errors.BudgetExceeded)
                r = minimize_roof(st, "concurrence_AB", FAST)
            rho_ab = st.density()[0::2, 0::2]
            assert r.value == pytest.approx(wootters_concurrence(rho_ab), abs=1e-6)

    def test_concurrence_needs_product_with_c(self):
        with pytest.raises(errors.InvalidState):
            minimize_roof(family(0.5), "concurrence_AB", FAST)
