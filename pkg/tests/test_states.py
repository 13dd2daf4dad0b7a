import numpy as np
import pytest

from oracles import partial_trace_loops
from threetangle import errors
from threetangle.states import (
    Ensemble,
    Rank2State,
    basis_ket,
    check_density,
    density_of,
    ghz,
    haar_ket,
    mix,
    normalize,
    partial_trace,
    spectral_rank2,
    w,
)
from threetangle.family import rho_p


class TestKets:
    def test_ghz_amplitudes(self):
        psi = ghz()
        assert psi[0] == pytest.approx(1 / np.sqrt(2))
        assert psi[7] == pytest.approx(1 / np.sqrt(2))
        assert np.count_nonzero(psi) == 2

    def test_w_amplitudes(self):
        psi = w()
        assert np.allclose(psi[[1, 2, 4]], 1 / np.sqrt(3))
        assert np.count_nonzero(psi) == 3

    def test_flat_index_convention(self):
        # |011> has i=0, j=1, k=1 -> 4*0 + 2*1 + 1
        assert basis_ket("011")[3] == 1

    def test_normalize_rejects_zero(self):
        with pytest.raises(errors.ZeroVector):
            normalize(np.zeros(8))

    def test_normalize_scales(self, rng):
        v = rng.standard_normal(8) * 7
        assert np.linalg.norm(normalize(v)) == pytest.approx(1, abs=1e-14)


class TestDensity:
    def test_global_phase_invariance(self, rng):
        for _ in range(20):
            psi = haar_ket(rng)
            theta = rng.uniform(0, 2 * np.pi)
            assert np.max(np.abs(density_of(np.exp(1j * theta) * psi) - density_of(psi))) <= 1e-12

    @pytest.mark.parametrize(
        "bad, word",
        [
            (np.diag([1.0, 0, 0, 0, 0, 0, 0, 0.5]), "trace"),
            (np.diag([1.5, -0.5, 0, 0, 0, 0, 0, 0]), "positiv"),
            (np.eye(8) / 8 + np.triu(np.ones((8, 8)), 1) * 0.01, "hermit"),
        ],
    )
    def test_check_density_names_invariant(self, bad, word):
        with pytest.raises(errors.InvalidState, match=f"(?i){word}"):
            check_density(bad)


class TestEnsemble:
    def test_rejects_bad_weights(self):
        with pytest.raises(errors.BadWeights):
            Ensemble([0.5, 0.6], [ghz(), w()])
        with pytest.raises(errors.BadWeights):
            Ensemble([1.5, -0.5], [ghz(), w()])

    def test_mix_of_eigen_ensemble(self):
        e = Ensemble([0.4, 0.6], [ghz(), w()])
        assert np.allclose(mix(e), rho_p(0.4), atol=1e-14)

    def test_pruned_drops_tiny(self):
        e = Ensemble.pruned([1 - 1e-15, 1e-15], [ghz(), w()])
        assert len(e) == 1


class TestPartialTrace:
    def test_ghz_a(self):
        assert np.allclose(partial_trace(density_of(ghz()), [0]), np.eye(2) / 2, atol=1e-15)

    def test_w_a(self):
        assert np.allclose(partial_trace(density_of(w()), [0]), np.diag([2 / 3, 1 / 3]), atol=1e-15)

    def test_product_ab(self):
        out = partial_trace(density_of(basis_ket("000")), [0, 1])
        expect = np.zeros((4, 4))
        expect[0, 0] = 1
        assert np.allclose(out, expect)

    @pytest.mark.parametrize("keep", [[0], [1], [2], [0, 1], [0, 2], [1, 2]])
    def test_against_loop_oracle(self, rng, keep):
        a = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        rho = a @ a.conj().T
        rho /= np.trace(rho)
        assert np.allclose(partial_trace(rho, keep), partial_trace_loops(rho, keep), atol=1e-14)

    @pytest.mark.parametrize("keep", [[], [0, 0], [3], [0, 1, 2]])
    def test_bad_subset(self, keep):
        with pytest.raises(errors.BadSubset):
            partial_trace(density_of(ghz()), keep)


class TestRank2:
    def test_not_orthonormal(self):
        with pytest.raises(errors.NotOrthonormal):
            Rank2State(ghz(), basis_ket("000"), 0.5)

    def test_spectral_family(self):
        st = spectral_rank2(rho_p(0.4))
        assert st.p == pytest.approx(0.6)
        # leading eigenvector is W (weight 0.6), up to phase
        assert abs(np.vdot(w(), st.ket1)) == pytest.approx(1, abs=1e-12)
        assert abs(np.vdot(ghz(), st.ket2)) == pytest.approx(1, abs=1e-12)

    def test_spectral_pure_degenerate(self):
        st = spectral_rank2(density_of(ghz()))
        assert st.p == pytest.approx(1)
        assert st.degenerate
        assert abs(np.vdot(st.ket1, st.ket2)) < 1e-12

    def test_rank_too_high(self):
        with pytest.raises(errors.RankTooHigh):
            spectral_rank2(np.eye(8) / 8)

    def test_reconstruction(self, rng):
        for _ in range(10):
            q, _ = np.linalg.qr(rng.standard_normal((8, 2)) + 1j * rng.standard_normal((8, 2)))
            p = rng.uniform(0.05, 0.95)
            rho = p * np.outer(q[:, 0], q[:, 0].conj()) + (1 - p) * np.outer(q[:, 1], q[:, 1].conj())
            assert np.max(np.abs(spectral_rank2(rho).density() - rho)) <= 1e-9
